"""Finite categories, functors, presheaves, and the table conventions used everywhere.

Conventions, fixed once and relied on by every other module:

* ``compose(g, f)`` means "first f, then g" and is defined iff tgt(f) = src(g).
* A ``Presheaf`` on A is contravariant: the action of f: a -> b maps sets[b] -> sets[a].
  A covariant set-valued functor on A is stored as a Presheaf on ``A.op()``; its action
  table then sends sets[a] -> sets[b] for f: a -> b, which is what callers supply.
* A ``Profunctor`` from A to B is a functor B^op (x) A -> Set: cells ``sets[(b, a)]``,
  the left action of beta: b' -> b maps cell (b, a) to cell (b', a), the right action
  of alpha: a -> a' maps cell (b, a) to cell (b, a').
* The category of elements of a presheaf phi on K has objects (k, x) with x in phi(k);
  a morphism (k, x) -> (k', x') is u: k' -> k in K with phi(u)(x) = x', so the evident
  projection is a functor el(phi) -> K^op.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import MalformedTable


def _dedup_ok(seq):
    return len(seq) == len(set(seq))


class FinCategory:
    """A finite category given by explicit tables.

    objects: ordered list of hashable object ids.
    morphisms: ordered list of (mor_id, src, tgt) triples.
    identity: dict object -> morphism id.
    compose: dict (g, f) -> g after f, keyed on exactly the composable pairs.
    """

    def __init__(self, name, objects, morphisms, identity, compose):
        self.name = name
        self.objects = tuple(objects)
        if not _dedup_ok(self.objects):
            raise MalformedTable(f"{name}: duplicate object ids")
        self.obj_index = {a: i for i, a in enumerate(self.objects)}
        self.morphisms = tuple(m for m, _, _ in morphisms)
        if not _dedup_ok(self.morphisms):
            raise MalformedTable(f"{name}: duplicate morphism ids")
        self.mor_index = {m: i for i, m in enumerate(self.morphisms)}
        self.src = {}
        self.tgt = {}
        for m, s, t in morphisms:
            if s not in self.obj_index or t not in self.obj_index:
                raise MalformedTable(f"{name}: morphism {m!r} has unknown endpoint")
            self.src[m] = s
            self.tgt[m] = t
        self.identity = dict(identity)
        for a, m in self.identity.items():
            if a not in self.obj_index or m not in self.mor_index:
                raise MalformedTable(f"{name}: identity table references unknown id")
        if set(self.identity) != set(self.objects):
            raise MalformedTable(f"{name}: identity table must cover every object")
        self.compose_table = dict(compose)
        for (g, f), h in self.compose_table.items():
            for m in (g, f, h):
                if m not in self.mor_index:
                    raise MalformedTable(f"{name}: compose table references unknown morphism {m!r}")
        self._hom = {}
        for m in self.morphisms:
            self._hom.setdefault((self.src[m], self.tgt[m]), []).append(m)
        self._op = None

    def hom(self, a, b):
        return tuple(self._hom.get((a, b), ()))

    def id_of(self, a):
        return self.identity[a]

    def compose(self, g, f):
        """g after f; raises MalformedTable if the pair is not in the table."""
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise MalformedTable(
                f"{self.name}: compose({g!r}, {f!r}) undefined") from None

    def composable(self, g, f):
        return self.tgt[f] == self.src[g]

    def is_identity(self, m):
        return self.identity.get(self.src[m]) == m and self.src[m] == self.tgt[m]

    def op(self):
        """Opposite category; shares object and morphism ids, caches the involution."""
        if self._op is None:
            morphisms = [(m, self.tgt[m], self.src[m]) for m in self.morphisms]
            compose = {(f, g): h for (g, f), h in self.compose_table.items()}
            other = FinCategory(self.name + "^op", self.objects, morphisms,
                                self.identity, compose)
            other._op = self
            self._op = other
        return self._op

    def __repr__(self):
        return f"FinCategory({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def opposite(c: FinCategory) -> FinCategory:
    return c.op()


def same_category(a: FinCategory, b: FinCategory) -> bool:
    """Structural identity of tables (not isomorphism)."""
    return (a is b) or (
        a.objects == b.objects
        and a.morphisms == b.morphisms
        and a.src == b.src
        and a.tgt == b.tgt
        and a.identity == b.identity
        and a.compose_table == b.compose_table
    )


class FinFunctor:
    def __init__(self, name, source, target, obj_map, mor_map):
        self.name = name
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        for a, b in self.obj_map.items():
            if a not in source.obj_index or b not in target.obj_index:
                raise MalformedTable(f"{name}: object map references unknown id")
        if set(self.obj_map) != set(source.objects):
            raise MalformedTable(f"{name}: object map must cover the source")
        for f, g in self.mor_map.items():
            if f not in source.mor_index or g not in target.mor_index:
                raise MalformedTable(f"{name}: morphism map references unknown id")
        if set(self.mor_map) != set(source.morphisms):
            raise MalformedTable(f"{name}: morphism map must cover the source")

    def obj(self, a):
        return self.obj_map[a]

    def mor(self, f):
        return self.mor_map[f]

    def op(self):
        """The same tables read as a functor source^op -> target^op."""
        return FinFunctor(self.name + "^op", self.source.op(), self.target.op(),
                          self.obj_map, self.mor_map)

    def __repr__(self):
        return f"FinFunctor({self.name!r}: {self.source.name} -> {self.target.name})"


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(f"id_{c.name}", c, c,
                      {a: a for a in c.objects}, {m: m for m in c.morphisms})


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    if not same_category(f.target, g.source):
        raise MalformedTable(f"cannot compose {g.name} after {f.name}: middle categories differ")
    return FinFunctor(f"{g.name}*{f.name}", f.source, g.target,
                      {a: g.obj(f.obj(a)) for a in f.source.objects},
                      {m: g.mor(f.mor(m)) for m in f.source.morphisms})


class Presheaf:
    """Contravariant set-valued functor on ``base``.

    sets: dict object -> ordered tuple of distinct hashable elements.
    actions: dict morphism -> dict; for f: a -> b the dict maps sets[b] into sets[a].
    """

    def __init__(self, name, base, sets, actions):
        self.name = name
        self.base = base
        self.sets = {a: tuple(v) for a, v in sets.items()}
        for a, v in self.sets.items():
            if a not in base.obj_index:
                raise MalformedTable(f"{name}: value set on unknown object {a!r}")
            if not _dedup_ok(v):
                raise MalformedTable(f"{name}: duplicate elements at {a!r}")
        if set(self.sets) != set(base.objects):
            raise MalformedTable(f"{name}: value sets must cover every object")
        self.actions = {f: dict(v) for f, v in actions.items()}
        if set(self.actions) != set(base.morphisms):
            raise MalformedTable(f"{name}: action table must cover every morphism")
        for f, table in self.actions.items():
            dom = set(self.sets[base.tgt[f]])
            cod = set(self.sets[base.src[f]])
            if set(table) != dom or not set(table.values()) <= cod:
                raise MalformedTable(f"{name}: action of {f!r} is not a map "
                                     f"sets[{base.tgt[f]!r}] -> sets[{base.src[f]!r}]")

    def at(self, a):
        return self.sets[a]

    def act(self, f, x):
        return self.actions[f][x]

    def total_size(self):
        return sum(len(v) for v in self.sets.values())

    def __repr__(self):
        sizes = ",".join(str(len(self.sets[a])) for a in self.base.objects)
        return f"Presheaf({self.name!r} on {self.base.name}, sizes [{sizes}])"


def covariant(name, base, sets, actions) -> Presheaf:
    """Package a covariant diagram on ``base`` as a presheaf on ``base.op()``.

    The action of f: a -> b must map sets[a] -> sets[b]; the table is stored as-is
    because src and tgt swap in the opposite category.
    """
    return Presheaf(name, base.op(), sets, actions)


class NatTrans:
    """Natural transformation between presheaves on the same base.

    components: dict object -> dict mapping source.sets[a] -> target.sets[a].
    """

    def __init__(self, source, target, components, name=""):
        self.name = name
        self.source = source
        self.target = target
        self.components = {a: dict(v) for a, v in components.items()}
        base = source.base
        if set(self.components) != set(base.objects):
            raise MalformedTable(f"nat trans {name!r}: components must cover every object")
        for a, table in self.components.items():
            if set(table) != set(source.sets[a]) or not set(table.values()) <= set(target.sets[a]):
                raise MalformedTable(f"nat trans {name!r}: component at {a!r} has wrong domain or image")

    def at(self, a, x):
        return self.components[a][x]

    def frozen(self):
        """Hashable canonical form: per object (in base order), images in element order."""
        return tuple(
            tuple(self.components[a][x] for x in self.source.sets[a])
            for a in self.source.base.objects
        )

    def __repr__(self):
        return f"NatTrans({self.name or self.frozen()!r})"


def nat_compose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """beta after alpha, componentwise."""
    comps = {
        a: {x: beta.components[a][alpha.components[a][x]] for x in alpha.source.sets[a]}
        for a in alpha.source.base.objects
    }
    return NatTrans(alpha.source, beta.target, comps)


def nat_identity(p: Presheaf) -> NatTrans:
    return NatTrans(p, p, {a: {x: x for x in p.sets[a]} for a in p.base.objects})


class FunctorTransform:
    """Natural transformation between parallel functors; components are morphism ids."""

    def __init__(self, source: FinFunctor, target: FinFunctor, components, name=""):
        self.name = name
        self.source = source
        self.target = target
        self.components = dict(components)
        cat = target.target
        if set(self.components) != set(source.source.objects):
            raise MalformedTable(f"transform {name!r}: components must cover every object")
        for a, m in self.components.items():
            if m not in cat.mor_index:
                raise MalformedTable(f"transform {name!r}: unknown morphism {m!r}")
            if cat.src[m] != source.obj(a) or cat.tgt[m] != target.obj(a):
                raise MalformedTable(f"transform {name!r}: component at {a!r} has wrong endpoints")


class Profunctor:
    """Functor target^op (x) source -> Set; see the module docstring for actions."""

    def __init__(self, name, source, target, sets, left, right):
        self.name = name
        self.source = source
        self.target = target
        self.sets = {cell: tuple(v) for cell, v in sets.items()}
        cells = {(b, a) for b in target.objects for a in source.objects}
        if set(self.sets) != cells:
            raise MalformedTable(f"profunctor {name!r}: cells must cover target x source")
        for cell, v in self.sets.items():
            if not _dedup_ok(v):
                raise MalformedTable(f"profunctor {name!r}: duplicate elements in cell {cell!r}")
        self.left = {k: dict(v) for k, v in left.items()}
        self.right = {k: dict(v) for k, v in right.items()}
        want_left = {(m, a) for m in target.morphisms for a in source.objects}
        want_right = {(b, m) for b in target.objects for m in source.morphisms}
        if set(self.left) != want_left or set(self.right) != want_right:
            raise MalformedTable(f"profunctor {name!r}: action tables incomplete")
        for (m, a), table in self.left.items():
            dom = set(self.sets[(target.tgt[m], a)])
            cod = set(self.sets[(target.src[m], a)])
            if set(table) != dom or not set(table.values()) <= cod:
                raise MalformedTable(f"profunctor {name!r}: left action of {m!r} at {a!r} malformed")
        for (b, m), table in self.right.items():
            dom = set(self.sets[(b, source.src[m])])
            cod = set(self.sets[(b, source.tgt[m])])
            if set(table) != dom or not set(table.values()) <= cod:
                raise MalformedTable(f"profunctor {name!r}: right action of {m!r} at {b!r} malformed")

    def cell(self, b, a):
        return self.sets[(b, a)]

    def left_act(self, beta, a, x):
        return self.left[(beta, a)][x]

    def right_act(self, b, alpha, x):
        return self.right[(b, alpha)][x]

    def __repr__(self):
        return f"Profunctor({self.name!r}: {self.source.name} -|-> {self.target.name})"


# ---------------------------------------------------------------------------
# law validation


@dataclass
class Violation:
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law} fails at {self.witness!r}"


@dataclass
class ValidationReport:
    kind: str
    name: str
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        if self.ok:
            return f"{self.kind} {self.name!r}: ok"
        lines = [f"{self.kind} {self.name!r}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def _validate_category(c: FinCategory) -> ValidationReport:
    rep = ValidationReport("category", c.name)
    for a in c.objects:
        i = c.id_of(a)
        if c.src[i] != a or c.tgt[i] != a:
            rep.violations.append(Violation("identity-endpoints", (a, i)))
    defined = set(c.compose_table)
    composable = {(g, f) for g in c.morphisms for f in c.morphisms if c.composable(g, f)}
    for pair in sorted(defined - composable, key=repr):
        rep.violations.append(Violation("compose-defined-noncomposable", pair))
    for pair in sorted(composable - defined, key=repr):
        rep.violations.append(Violation("compose-missing", pair))
    if not rep.ok:
        return rep
    for (g, f), h in c.compose_table.items():
        if c.src[h] != c.src[f] or c.tgt[h] != c.tgt[g]:
            rep.violations.append(Violation("compose-endpoints", (g, f, h)))
    for f in c.morphisms:
        if c.compose(c.id_of(c.tgt[f]), f) != f:
            rep.violations.append(Violation("identity-left", (f,)))
        if c.compose(f, c.id_of(c.src[f])) != f:
            rep.violations.append(Violation("identity-right", (f,)))
    for h in c.morphisms:
        for g in c.morphisms:
            if not c.composable(h, g):
                continue
            hg = c.compose(h, g)
            for f in c.morphisms:
                if not c.composable(g, f):
                    continue
                if c.compose(hg, f) != c.compose(h, c.compose(g, f)):
                    rep.violations.append(Violation("associativity", (h, g, f)))
    return rep


def _validate_functor(fn: FinFunctor) -> ValidationReport:
    rep = ValidationReport("functor", fn.name)
    a, b = fn.source, fn.target
    for f in a.morphisms:
        g = fn.mor(f)
        if b.src[g] != fn.obj(a.src[f]) or b.tgt[g] != fn.obj(a.tgt[f]):
            rep.violations.append(Violation("endpoint-preservation", (f,)))
    for x in a.objects:
        if fn.mor(a.id_of(x)) != b.id_of(fn.obj(x)):
            rep.violations.append(Violation("identity-preservation", (x,)))
    for (g, f), h in a.compose_table.items():
        try:
            preserved = b.compose(fn.mor(g), fn.mor(f)) == fn.mor(h)
        except MalformedTable:
            preserved = False    # images not even composable
        if not preserved:
            rep.violations.append(Violation("composition-preservation", (g, f)))
    return rep


def _validate_presheaf(p: Presheaf) -> ValidationReport:
    rep = ValidationReport("presheaf", p.name)
    c = p.base
    for a in c.objects:
        i = c.id_of(a)
        for x in p.sets[a]:
            if p.act(i, x) != x:
                rep.violations.append(Violation("identity-action", (a, x)))
    # contravariance: act(g . f) = act(f) . act(g)
    for (g, f), h in c.compose_table.items():
        for x in p.sets[c.tgt[g]]:
            if p.act(h, x) != p.act(f, p.act(g, x)):
                rep.violations.append(Violation("composition-action", (g, f, x)))
    return rep


def _validate_nat(n: NatTrans) -> ValidationReport:
    rep = ValidationReport("nat-trans", n.name or "")
    c = n.source.base
    if not same_category(c, n.target.base):
        rep.violations.append(Violation("base-mismatch", ()))
        return rep
    for f in c.morphisms:
        a, b = c.src[f], c.tgt[f]
        for x in n.source.sets[b]:
            if n.components[a][n.source.act(f, x)] != n.target.act(f, n.components[b][x]):
                rep.violations.append(Violation("naturality", (f, x)))
    return rep


def _validate_functor_transform(t: FunctorTransform) -> ValidationReport:
    rep = ValidationReport("functor-transform", t.name or "")
    a = t.source.source
    b = t.target.target
    for f in a.morphisms:
        x, y = a.src[f], a.tgt[f]
        lhs = b.compose(t.components[y], t.source.mor(f))
        rhs = b.compose(t.target.mor(f), t.components[x])
        if lhs != rhs:
            rep.violations.append(Violation("naturality", (f,)))
    return rep


def _validate_profunctor(p: Profunctor) -> ValidationReport:
    rep = ValidationReport("profunctor", p.name)
    A, B = p.source, p.target
    for b in B.objects:
        for a in A.objects:
            ib, ia = B.id_of(b), A.id_of(a)
            for x in p.cell(b, a):
                if p.left_act(ib, a, x) != x:
                    rep.violations.append(Violation("left-identity", (b, a, x)))
                if p.right_act(b, ia, x) != x:
                    rep.violations.append(Violation("right-identity", (b, a, x)))
    for (g, f), h in B.compose_table.items():
        for a in A.objects:
            for x in p.cell(B.tgt[g], a):
                if p.left_act(h, a, x) != p.left_act(f, a, p.left_act(g, a, x)):
                    rep.violations.append(Violation("left-composition", (g, f, a, x)))
    for (g, f), h in A.compose_table.items():
        for b in B.objects:
            for x in p.cell(b, A.src[f]):
                if p.right_act(b, h, x) != p.right_act(b, g, p.right_act(b, f, x)):
                    rep.violations.append(Violation("right-composition", (g, f, b, x)))
    for beta in B.morphisms:
        for alpha in A.morphisms:
            for x in p.cell(B.tgt[beta], A.src[alpha]):
                one = p.right_act(B.src[beta], alpha, p.left_act(beta, A.src[alpha], x))
                two = p.left_act(beta, A.tgt[alpha], p.right_act(B.tgt[beta], alpha, x))
                if one != two:
                    rep.violations.append(Violation("action-commutation", (beta, alpha, x)))
    return rep


_VALIDATORS = [
    (FinCategory, _validate_category),
    (FinFunctor, _validate_functor),
    (Presheaf, _validate_presheaf),
    (NatTrans, _validate_nat),
    (FunctorTransform, _validate_functor_transform),
    (Profunctor, _validate_profunctor),
]


def validate(entity) -> ValidationReport:
    """Check every law of the entity's kind; returns a report with witnesses."""
    for klass, fn in _VALIDATORS:
        if isinstance(entity, klass):
            return fn(entity)
    raise TypeError(f"cannot validate {type(entity).__name__}")


# ---------------------------------------------------------------------------
# derived categories


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    """Objects and morphisms are pairs; composition is componentwise."""
    objects = [(a, b) for a in c.objects for b in d.objects]
    morphisms = [((f, g), (c.src[f], d.src[g]), (c.tgt[f], d.tgt[g]))
                 for f in c.morphisms for g in d.morphisms]
    identity = {(a, b): (c.id_of(a), d.id_of(b)) for a in c.objects for b in d.objects}
    compose = {}
    for (f2, g2) in ((f, g) for f in c.morphisms for g in d.morphisms):
        for (f1, g1) in ((f, g) for f in c.morphisms for g in d.morphisms):
            if c.composable(f2, f1) and d.composable(g2, g1):
                compose[((f2, g2), (f1, g1))] = (c.compose(f2, f1), d.compose(g2, g1))
    return FinCategory(f"{c.name}x{d.name}", objects, morphisms, identity, compose)


def unit_category() -> FinCategory:
    return FinCategory("I", ["*"], [("id", "*", "*")], {"*": "id"}, {("id", "id"): "id"})


def full_subcategory(cat: FinCategory, objects, name=None):
    """The full subcategory on the given objects, with its inclusion functor."""
    keep = set(objects)
    objs = [a for a in cat.objects if a in keep]
    mors = [(m, cat.src[m], cat.tgt[m]) for m in cat.morphisms
            if cat.src[m] in keep and cat.tgt[m] in keep]
    identity = {a: cat.id_of(a) for a in objs}
    compose = {(g, f): cat.compose(g, f)
               for (g, gs, _) in mors for (f, _, ft) in mors if ft == gs}
    sub = FinCategory(name or f"{cat.name}[{len(objs)}]", objs, mors, identity, compose)
    incl = FinFunctor(f"include[{sub.name}]", sub, cat,
                      {a: a for a in objs}, {m: m for m in sub.morphisms})
    return sub, incl


def category_of_elements(phi: Presheaf):
    """el(phi) together with the projection functor into base^op.

    Morphism (k, x) -> (k', x') is u: k' -> k with phi(u)(x) = x'; the id scheme is
    (u, x) where x lives over tgt(u).
    """
    k = phi.base
    objects = [(a, x) for a in k.objects for x in phi.sets[a]]
    morphisms = []
    identity = {}
    for u in k.morphisms:
        for x in phi.sets[k.tgt[u]]:
            mid = (u, x)
            src = (k.tgt[u], x)
            tgt = (k.src[u], phi.act(u, x))
            morphisms.append((mid, src, tgt))
            if k.is_identity(u):
                identity[src] = mid
    compose = {}
    for (u2, x2), s2, t2 in morphisms:
        for (u1, x1), s1, t1 in morphisms:
            if t1 == s2:
                # u1: tgt(u1) <- ... runs (k,x1) -> (k', x2); then u2 continues from (k', x2)
                compose[((u2, x2), (u1, x1))] = (k.compose(u1, u2), x1)
    el = FinCategory(f"el({phi.name})", objects, morphisms, identity, compose)
    proj = FinFunctor(f"el({phi.name})->{k.name}^op", el, k.op(),
                      {o: o[0] for o in objects},
                      {m: m[0] for m in el.morphisms})
    return el, proj


# ---------------------------------------------------------------------------
# elementary shape predicates


def is_connected(c: FinCategory) -> bool:
    """Nonempty and connected in the zigzag sense (morphisms taken undirected)."""
    if not c.objects:
        return False
    parent = {a: a for a in c.objects}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for m in c.morphisms:
        ra, rb = find(c.src[m]), find(c.tgt[m])
        if ra != rb:
            parent[ra] = rb
    return len({find(a) for a in c.objects}) == 1


def is_filtered(c: FinCategory) -> bool:
    """Nonempty; every object pair has a cospan; every parallel pair is coequalized."""
    if not c.objects:
        return False
    for a in c.objects:
        for b in c.objects:
            if not any(c.hom(a, z) and c.hom(b, z) for z in c.objects):
                return False
    for a in c.objects:
        for b in c.objects:
            parallel = c.hom(a, b)
            for f, g in itertools.combinations(parallel, 2):
                if not any(c.compose(h, f) == c.compose(h, g)
                           for z in c.objects for h in c.hom(b, z)):
                    return False
    return True
