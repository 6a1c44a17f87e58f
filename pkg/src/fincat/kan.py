"""Yoneda embedding, pointwise left Kan extension, nerve, and presheaf collections."""
from __future__ import annotations

from dataclasses import dataclass

from .core import (FinCategory, FinFunctor, NatTrans, Presheaf, nat_compose,
                   nat_identity, same_category)
from .equivalence import presheaf_isomorphic, _elem_profiles
from .errors import InternalMismatch, MalformedTable
from .limits import hom_diagram, nat_trans_set, weighted_colimit


def yoneda_embed(cat: FinCategory, b) -> Presheaf:
    """The representable at b: a -> Hom(a, b), acting by precomposition."""
    sets = {a: cat.hom(a, b) for a in cat.objects}
    actions = {f: {h: cat.compose(h, f) for h in sets[cat.tgt[f]]}
               for f in cat.morphisms}
    return Presheaf(f"Y.{cat.name}.{b}", cat, sets, actions)


def yoneda_transform(cat: FinCategory, f) -> NatTrans:
    """Post-composition Y(src f) -> Y(tgt f)."""
    ys, yt = yoneda_embed(cat, cat.src[f]), yoneda_embed(cat, cat.tgt[f])
    comps = {a: {h: cat.compose(f, h) for h in ys.sets[a]} for a in cat.objects}
    return NatTrans(ys, yt, comps, name=f"Y[{f!r}]")


def yoneda_bijection(p: Presheaf, b):
    """The mutually inverse maps Nat(Yb, p) <-> p(b); raises on any failure.

    forward: alpha -> alpha_b(id_b); backward: x -> (h -> p(h)(x)).
    """
    cat = p.base
    yb = yoneda_embed(cat, b)
    nats = nat_trans_set(yb, p)
    idb = cat.id_of(b)
    forward = {alpha.frozen(): alpha.components[b][idb] for alpha in nats}
    backward = {}
    for x in p.sets[b]:
        comps = {a: {h: p.act(h, x) for h in yb.sets[a]} for a in cat.objects}
        backward[x] = NatTrans(yb, p, comps)
    if len(forward) != len(nats) or set(forward.values()) != set(p.sets[b]):
        raise InternalMismatch(f"Yoneda bijection fails at {b!r} for {p.name}")
    for x, alpha in backward.items():
        if forward[alpha.frozen()] != x:
            raise InternalMismatch(f"Yoneda maps not mutually inverse at {b!r}")
    return forward, backward


def restrict(k: FinFunctor, s: Presheaf) -> Presheaf:
    """Precompose the covariant diagram s on k.target with k."""
    if not same_category(s.base, k.target.op()):
        raise MalformedTable("restrict: diagram must be covariant on the functor target")
    sets = {a: s.sets[k.obj(a)] for a in k.source.objects}
    actions = {u: dict(s.actions[k.mor(u)]) for u in k.source.morphisms}
    return Presheaf(f"{s.name}|{k.name}", k.source.op(), sets, actions)


@dataclass
class LanResult:
    extension: Presheaf          # covariant on the target, as a presheaf on target.op()
    unit: dict                   # a -> {t in T(a) -> element of extension at K(a)}
    per_object: dict             # c -> WeightedColimitResult


def lan(k: FinFunctor, t: Presheaf, cross_check=True) -> LanResult:
    """Left Kan extension of the covariant diagram t along k, computed pointwise.

    t is covariant on k.source (a presheaf on k.source.op()); the value at c is the
    colimit of t weighted by Hom(k-, c).
    """
    if not same_category(t.base, k.source.op()):
        raise MalformedTable("lan: diagram must be covariant on the functor source")
    c_cat = k.target
    per = {}
    sets = {}
    for c in c_cat.objects:
        weight = hom_diagram(k, c)
        per[c] = weighted_colimit(weight, t, cross_check=cross_check)
        sets[c] = per[c].classes
    actions = {}
    for g in c_cat.morphisms:
        c, c2 = c_cat.src[g], c_cat.tgt[g]
        table = {}
        for rep in sets[c]:
            a, (h, x) = rep
            table[rep] = per[c2].inject(a, c_cat.compose(g, h), x)
        actions[g] = table
    extension = Presheaf(f"lan[{k.name}]({t.name})", c_cat.op(), sets, actions)
    unit = {a: {x: per[k.obj(a)].inject(a, c_cat.id_of(k.obj(a)), x)
                for x in t.sets[a]}
            for a in k.source.objects}
    return LanResult(extension, unit, per)


@dataclass
class NerveResult:
    presheaves: dict             # b -> Presheaf on the functor source
    transports: dict             # g: b -> b' -> NatTrans presheaves[b] -> presheaves[b']


def nerve(g: FinFunctor) -> NerveResult:
    """b -> Hom(g-, b), functorial in b by post-composition."""
    cat = g.target
    presheaves = {b: hom_diagram(g, b) for b in cat.objects}
    transports = {}
    for m in cat.morphisms:
        b, b2 = cat.src[m], cat.tgt[m]
        comps = {n: {h: cat.compose(m, h) for h in presheaves[b].sets[n]}
                 for n in g.source.objects}
        transports[m] = NatTrans(presheaves[b], presheaves[b2], comps, name=f"nerve[{m!r}]")
    return NerveResult(presheaves, transports)


# ---------------------------------------------------------------------------
# deduplicated presheaf collections with replayable provenance


@dataclass
class Provenance:
    kind: str                    # "representable" | "colimit"
    data: tuple

    def __str__(self):
        if self.kind == "representable":
            return f"representable at {self.data[0]!r}"
        weight_name, obj_assign, _mor_assign = self.data
        return f"colimit weighted by {weight_name} of members {obj_assign}"


class PresheafCollection:
    """Members deduplicated up to isomorphism, each with replayable provenance."""

    def __init__(self, base: FinCategory):
        self.base = base
        self.members = []
        self.provenance = []
        self._buckets = {}

    def _signature(self, p: Presheaf):
        return tuple(
            (len(p.sets[a]), tuple(sorted(_elem_profiles(p, a).values())))
            for a in self.base.objects
        )

    def find_isomorphic(self, p: Presheaf):
        for i in self._buckets.get(self._signature(p), ()):
            if presheaf_isomorphic(self.members[i], p) is not None:
                return i
        return None

    def add(self, p: Presheaf, prov: Provenance):
        """Returns (index, added); an isomorphic existing member wins."""
        i = self.find_isomorphic(p)
        if i is not None:
            return i, False
        self.members.append(p)
        self.provenance.append(prov)
        i = len(self.members) - 1
        self._buckets.setdefault(self._signature(p), []).append(i)
        return i, True

    @classmethod
    def representables(cls, base: FinCategory):
        coll = cls(base)
        for a in base.objects:
            coll.add(yoneda_embed(base, a), Provenance("representable", (a,)))
        return coll

    def replay(self, index, weights_by_name):
        """Recompute the member from its provenance; must land isomorphic."""
        prov = self.provenance[index]
        if prov.kind == "representable":
            p = yoneda_embed(self.base, prov.data[0])
        else:
            weight_name, obj_assign, mor_assign = prov.data
            phi = weights_by_name[weight_name]
            objs = {k: self.members[i] for k, i in obj_assign}
            mors = {u: NatTrans(objs[phi.base.src[u]], objs[phi.base.tgt[u]],
                                {a: dict(v) for a, v in comps})
                    for u, comps in mor_assign}
            p = pointwise_colimit(phi, objs, mors, self.base,
                                  f"replay[{index}]")
        if presheaf_isomorphic(p, self.members[index]) is None:
            raise InternalMismatch(f"provenance replay diverged for member {index}")
        return p


def pointwise_colimit(phi: Presheaf, diagram_objs: dict, diagram_mors: dict,
                      base: FinCategory, name: str, cross_check=True) -> Presheaf:
    """Colimit weighted by phi of a diagram of presheaves on base, value by value.

    diagram_objs: K-object -> Presheaf; diagram_mors: K-morphism -> NatTrans along it.
    """
    k = phi.base
    per = {}
    for a in base.objects:
        s_a = Presheaf(f"{name}@{a!r}", k.op(),
                       {j: diagram_objs[j].sets[a] for j in k.objects},
                       {u: dict(diagram_mors[u].components[a]) for u in k.morphisms})
        per[a] = weighted_colimit(phi, s_a, cross_check=cross_check)
    sets = {a: per[a].classes for a in base.objects}
    actions = {}
    for f in base.morphisms:
        a, b = base.src[f], base.tgt[f]
        table = {}
        for rep in sets[b]:
            j, (x, s) = rep
            table[rep] = per[a].inject(j, x, diagram_objs[j].act(f, s))
        actions[f] = table
    return Presheaf(name, base, sets, actions)


def member_category(coll: PresheafCollection, count=None, nat_cache=None):
    """The full hom category on the first count members; morphism ids are (i, j, n).

    Returns (category, decode) where decode maps morphism id -> NatTrans.  The
    nat_cache dict may be shared across calls while the collection only grows.
    """
    cache = nat_cache if nat_cache is not None else {}

    def nats(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = nat_trans_set(coll.members[i], coll.members[j])
        return cache[(i, j)]

    m = len(coll.members) if count is None else count
    objects = list(range(m))
    morphisms = []
    decode = {}
    index_of = {}
    for i in objects:
        for j in objects:
            for n, alpha in enumerate(nats(i, j)):
                mid = (i, j, n)
                morphisms.append((mid, i, j))
                decode[mid] = alpha
                index_of[(i, j, alpha.frozen())] = mid
    identity = {}
    for i in objects:
        ident = nat_identity(coll.members[i])
        identity[i] = index_of[(i, i, ident.frozen())]
    compose = {}
    for (g, gs, gt) in morphisms:
        for (f, fs, ft) in morphisms:
            if ft == gs:
                comp = nat_compose(decode[g], decode[f])
                compose[(g, f)] = index_of[(fs, gt, comp.frozen())]
    cat = FinCategory(f"members({coll.base.name})", objects, morphisms, identity, compose)
    return cat, decode
