"""Workspace files: JSON descriptions of categories, presheaves, functors,
profunctors, and weight classes.

The presheaf convention is contravariant and normative: the action of
f: a -> b is recorded as a map from sets[b] to sets[a].  Covariant data may be
declared with "variance": "co", in which case the action of f maps sets[a] to
sets[b] and the loaded presheaf lives on the opposite category.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .classes import WeightClass
from .core import (FinCategory, FinFunctor, Presheaf, Profunctor, covariant,
                   validate)
from .errors import (DuplicateName, ParseError, UnresolvedReference,
                     ValidationFailed)

_SECTIONS = ("categories", "functors", "presheaves", "profunctors",
             "weight_classes")


@dataclass
class Workspace:
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    presheaves: dict = field(default_factory=dict)
    profunctors: dict = field(default_factory=dict)
    weight_classes: dict = field(default_factory=dict)
    presheaf_meta: dict = field(default_factory=dict)  # name -> (cat name, variance)

    _SINGULAR = {"categories": "category", "functors": "functor",
                 "presheaves": "presheaf", "profunctors": "profunctor",
                 "weight_classes": "weight class"}

    def _lookup(self, section, name):
        table = getattr(self, section)
        if name not in table:
            raise UnresolvedReference(f"no {self._SINGULAR[section]} "
                                      f"named {name!r}")
        return table[name]

    def category(self, name):
        return self._lookup("categories", name)

    def functor(self, name):
        return self._lookup("functors", name)

    def presheaf(self, name):
        return self._lookup("presheaves", name)

    def profunctor(self, name):
        return self._lookup("profunctors", name)

    def weight_class(self, name):
        return self._lookup("weight_classes", name)

    def entities(self):
        for section in _SECTIONS[:-1]:
            for name, entity in getattr(self, section).items():
                yield section, name, entity


def _no_duplicate_keys(pairs):
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise DuplicateName(f"duplicate key {key!r}")
        seen.add(key)
    return dict(pairs)


def _parse_file(path):
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}:{err.lineno}:{err.colno}: {err.msg}") from None
    except DuplicateName as err:
        raise DuplicateName(f"{path}: {err}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}:1:1: workspace document must be an object")
    for key in doc:
        if key not in _SECTIONS:
            raise ParseError(f"{path}:1:1: unknown section {key!r}")
    return doc


def _shape(spec, required, what):
    if not isinstance(spec, dict):
        raise ParseError(f"{what}: expected an object")
    missing = [k for k in required if k not in spec]
    if missing:
        raise ParseError(f"{what}: missing {missing[0]!r}")


def _checked(entity, what):
    report = validate(entity)
    if not report.ok:
        raise ValidationFailed(report)
    return entity


def _build_category(name, spec):
    _shape(spec, ("objects", "morphisms", "identities", "compose"),
           f"category {name}")
    morphisms = []
    for m in spec["morphisms"]:
        _shape(m, ("id", "src", "tgt"), f"category {name} morphism")
        morphisms.append((m["id"], m["src"], m["tgt"]))
    compose = {}
    for triple in spec["compose"]:
        if not isinstance(triple, list) or len(triple) != 3:
            raise ParseError(f"category {name}: compose entries are [g, f, h]")
        g, f, h = triple
        compose[(g, f)] = h
    return _checked(FinCategory(name, list(spec["objects"]), morphisms,
                                dict(spec["identities"]), compose),
                    f"category {name}")


def _build_presheaf(name, spec, categories):
    _shape(spec, ("on", "sets", "actions"), f"presheaf {name}")
    if spec["on"] not in categories:
        raise UnresolvedReference(f"presheaf {name}: no category {spec['on']!r}")
    cat = categories[spec["on"]]
    variance = spec.get("variance", "contra")
    if variance not in ("contra", "co"):
        raise ParseError(f"presheaf {name}: variance must be 'contra' or 'co'")
    sets = {a: list(v) for a, v in spec["sets"].items()}
    actions = {f: dict(t) for f, t in spec["actions"].items()}
    if variance == "contra":
        p = Presheaf(name, cat, sets, actions)
    else:
        p = covariant(name, cat, sets, actions)
    return _checked(p, f"presheaf {name}"), variance


def _build_functor(name, spec, categories):
    _shape(spec, ("source", "target", "objects", "morphisms"), f"functor {name}")
    for key in ("source", "target"):
        if spec[key] not in categories:
            raise UnresolvedReference(f"functor {name}: no category {spec[key]!r}")
    fn = FinFunctor(name, categories[spec["source"]], categories[spec["target"]],
                    dict(spec["objects"]), dict(spec["morphisms"]))
    return _checked(fn, f"functor {name}")


def _build_profunctor(name, spec, categories):
    _shape(spec, ("source", "target", "cells", "left", "right"),
           f"profunctor {name}")
    for key in ("source", "target"):
        if spec[key] not in categories:
            raise UnresolvedReference(f"profunctor {name}: no category {spec[key]!r}")
    sets = {(b, a): list(v)
            for b, row in spec["cells"].items() for a, v in row.items()}
    left = {(m, a): dict(t)
            for m, row in spec["left"].items() for a, t in row.items()}
    right = {(b, m): dict(t)
             for b, row in spec["right"].items() for m, t in row.items()}
    p = Profunctor(name, categories[spec["source"]], categories[spec["target"]],
                   sets, left, right)
    return _checked(p, f"profunctor {name}")


def load_workspace(paths) -> Workspace:
    """Parse, resolve, and validate one or more workspace files."""
    docs = [(p, _parse_file(p)) for p in paths]
    merged = {section: {} for section in _SECTIONS}
    for path, doc in docs:
        for section, entries in doc.items():
            for name, spec in entries.items():
                if name in merged[section]:
                    raise DuplicateName(f"{path}: {section[:-1]} {name!r} "
                                        f"defined twice")
                merged[section][name] = spec
    ws = Workspace()
    for name, spec in merged["categories"].items():
        ws.categories[name] = _build_category(name, spec)
    for name, spec in merged["presheaves"].items():
        p, variance = _build_presheaf(name, spec, ws.categories)
        ws.presheaves[name] = p
        ws.presheaf_meta[name] = (spec["on"], variance)
    for name, spec in merged["functors"].items():
        ws.functors[name] = _build_functor(name, spec, ws.categories)
    for name, spec in merged["profunctors"].items():
        ws.profunctors[name] = _build_profunctor(name, spec, ws.categories)
    for name, spec in merged["weight_classes"].items():
        _shape(spec, ("weights",), f"weight class {name}")
        weights = []
        for pname in spec["weights"]:
            if pname not in ws.presheaves:
                raise UnresolvedReference(f"weight class {name}: "
                                          f"no presheaf {pname!r}")
            weights.append(ws.presheaves[pname])
        ws.weight_classes[name] = WeightClass(name, weights)
    return ws


def _category_json(c: FinCategory):
    return {"objects": list(c.objects),
            "morphisms": [{"id": m, "src": c.src[m], "tgt": c.tgt[m]}
                          for m in c.morphisms],
            "identities": {a: c.id_of(a) for a in c.objects},
            "compose": sorted([g, f, h] for (g, f), h in c.compose_table.items())}


def _presheaf_json(p: Presheaf, meta):
    on, variance = meta
    objects = p.base.objects
    morphisms = p.base.morphisms
    return {"on": on, "variance": variance,
            "sets": {a: list(p.sets[a]) for a in objects},
            "actions": {f: dict(p.actions[f]) for f in morphisms}}


def _functor_json(fn: FinFunctor):
    return {"source": fn.source.name, "target": fn.target.name,
            "objects": dict(fn.obj_map), "morphisms": dict(fn.mor_map)}


def _profunctor_json(p: Profunctor):
    cells = {b: {a: list(p.cell(b, a)) for a in p.source.objects}
             for b in p.target.objects}
    left = {m: {a: dict(p.left[(m, a)]) for a in p.source.objects}
            for m in p.target.morphisms}
    right = {b: {m: dict(p.right[(b, m)]) for m in p.source.morphisms}
             for b in p.target.objects}
    return {"source": p.source.name, "target": p.target.name,
            "cells": cells, "left": left, "right": right}


def serialize_workspace(ws: Workspace) -> str:
    """Canonical JSON text; loading it back and serializing is a fixpoint."""
    doc = {}
    if ws.categories:
        doc["categories"] = {n: _category_json(c) for n, c in ws.categories.items()}
    if ws.presheaves:
        doc["presheaves"] = {
            n: _presheaf_json(p, ws.presheaf_meta.get(n, (p.base.name, "contra")))
            for n, p in ws.presheaves.items()}
    if ws.functors:
        doc["functors"] = {n: _functor_json(f) for n, f in ws.functors.items()}
    if ws.profunctors:
        doc["profunctors"] = {n: _profunctor_json(p)
                              for n, p in ws.profunctors.items()}
    if ws.weight_classes:
        doc["weight_classes"] = {n: {"weights": [w.name for w in c.weights]}
                                 for n, c in ws.weight_classes.items()}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
