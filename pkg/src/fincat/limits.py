"""Limits and colimits in finite sets: conical, weighted, ends, coends.

A covariant diagram on C is passed as a Presheaf on C.op(); in presheaf terms both
conical constructions read uniformly:

* ``finset_limit(p)``: families (x_a) with p.act(f, x_tgt) = x_src for every f.
* ``finset_colimit(p)``: quotient of the tagged union by x ~ p.act(f, x).

Weighted limits and colimits always run two independent routes, the end/coend formula
and the category-of-elements route, and raise InternalMismatch if they ever disagree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (FinCategory, FinFunctor, NatTrans, Presheaf, Profunctor,
                   category_of_elements, compose_functors, same_category)
from .errors import BudgetExceeded, InternalMismatch, MalformedTable

NAT_SEARCH_BUDGET = 10 ** 6


@dataclass
class LimitResult:
    apex: tuple                 # matching families, as tuples in base object order
    cone: dict                  # object -> {family -> component}


@dataclass
class ColimitResult:
    classes: tuple              # representatives, least (object index, element index)
    injections: dict            # object -> {element -> representative}

    def find(self, obj, elem):
        return self.injections[obj][elem]


class UnionFind:
    """Plain union-find; representatives are canonicalized after all unions."""

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def blocks(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def finset_limit(diagram: Presheaf) -> LimitResult:
    base = diagram.base
    objs = list(base.objects)
    families = []

    def extend(i, partial):
        if i == len(objs):
            families.append(tuple(partial))
            return
        a = objs[i]
        for x in diagram.sets[a]:
            ok = True
            for f in base.morphisms:
                s, t = base.src[f], base.tgt[f]
                if t == a and s in partial_idx and partial_idx[s] < i:
                    if diagram.act(f, x) != partial[partial_idx[s]]:
                        ok = False
                        break
                if s == a and t in partial_idx and partial_idx[t] < i:
                    if diagram.act(f, partial[partial_idx[t]]) != x:
                        ok = False
                        break
                if s == a and t == a and diagram.act(f, x) != x and not base.is_identity(f):
                    ok = False
                    break
            if ok:
                partial.append(x)
                extend(i + 1, partial)
                partial.pop()

    partial_idx = {a: i for i, a in enumerate(objs)}
    extend(0, [])
    cone = {a: {} for a in objs}
    for fam in families:
        for i, a in enumerate(objs):
            cone[a][fam] = fam[i]
    return LimitResult(tuple(families), cone)


def finset_colimit(diagram: Presheaf) -> ColimitResult:
    base = diagram.base
    tags = [(a, x) for a in base.objects for x in diagram.sets[a]]
    uf = UnionFind(tags)
    for f in base.morphisms:
        s, t = base.src[f], base.tgt[f]
        for x in diagram.sets[t]:
            uf.union((t, x), (s, diagram.act(f, x)))
    order = {tag: i for i, tag in enumerate(tags)}
    rep_of_root = {}
    for block in uf.blocks():
        rep = min(block, key=lambda tag: order[tag])
        for tag in block:
            rep_of_root[tag] = rep
    injections = {a: {} for a in base.objects}
    for a, x in tags:
        injections[a][x] = rep_of_root[(a, x)]
    classes = tuple(sorted(set(rep_of_root.values()), key=lambda tag: order[tag]))
    return ColimitResult(classes, injections)


# ---------------------------------------------------------------------------
# ends and coends of bifunctors C^op (x) C -> Set, given as Profunctor C -|-> C


@dataclass
class EndResult:
    families: tuple             # tuples of diagonal picks, base object order


@dataclass
class CoendResult:
    classes: tuple
    _lookup: dict = field(repr=False)

    def find(self, obj, elem):
        return self._lookup[(obj, elem)]


def end(h: Profunctor) -> EndResult:
    if not same_category(h.source, h.target):
        raise MalformedTable("end requires a bifunctor over a single category")
    c = h.source
    objs = list(c.objects)
    idx = {a: i for i, a in enumerate(objs)}
    families = []

    def ok_edge(u, xs, i):
        # u: s -> t; condition right(s, u)(x_s) = left(u, t)(x_t) in cell (s, t)
        s, t = c.src[u], c.tgt[u]
        if idx[s] > i or idx[t] > i:
            return True
        return h.right_act(s, u, xs[idx[s]]) == h.left_act(u, t, xs[idx[t]])

    def extend(i, partial):
        if i == len(objs):
            families.append(tuple(partial))
            return
        a = objs[i]
        for x in h.cell(a, a):
            partial.append(x)
            if all(ok_edge(u, partial, i) for u in c.morphisms
                   if max(idx[c.src[u]], idx[c.tgt[u]]) == i):
                extend(i + 1, partial)
            partial.pop()

    extend(0, [])
    return EndResult(tuple(families))


def coend(h: Profunctor) -> CoendResult:
    if not same_category(h.source, h.target):
        raise MalformedTable("coend requires a bifunctor over a single category")
    c = h.source
    tags = [(a, x) for a in c.objects for x in h.cell(a, a)]
    uf = UnionFind(tags)
    for u in c.morphisms:
        s, t = c.src[u], c.tgt[u]
        for y in h.cell(t, s):
            uf.union((s, h.left_act(u, s, y)), (t, h.right_act(t, u, y)))
    order = {tag: i for i, tag in enumerate(tags)}
    lookup = {}
    for block in uf.blocks():
        rep = min(block, key=lambda tag: order[tag])
        for tag in block:
            lookup[tag] = rep
    classes = tuple(sorted(set(lookup.values()), key=lambda tag: order[tag]))
    return CoendResult(classes, lookup)


# ---------------------------------------------------------------------------
# natural transformation sets (the end formula for presheaf homs)


def nat_trans_set(source: Presheaf, target: Presheaf, budget=NAT_SEARCH_BUDGET):
    """All natural transformations source -> target, in deterministic order.

    Backtracks one element image at a time; each naturality equation is
    checked as soon as both of its slots are assigned.  That keeps hom sets
    of concrete categories from exploding the search the way whole-component
    enumeration would.
    """
    if not same_category(source.base, target.base):
        raise MalformedTable("nat_trans_set requires presheaves on one base")
    c = source.base
    slots = [(a, x) for a in c.objects for x in source.sets[a]]
    pos = {s: i for i, s in enumerate(slots)}
    checks = [[] for _ in slots]
    # f: s -> t forces comp[s][x.f] == target.act(f, comp[t][x]); register the
    # equation at whichever slot is assigned later
    for f in c.morphisms:
        if c.is_identity(f):
            continue
        s, t = c.src[f], c.tgt[f]
        for x in source.sets[t]:
            p, q = pos[(t, x)], pos[(s, source.act(f, x))]
            checks[max(p, q)].append((p, q, f))
    out = []
    nodes = 0
    val = [None] * len(slots)

    def extend(k):
        nonlocal nodes
        if k == len(slots):
            comp = {a: {} for a in c.objects}
            for (a, x), v in zip(slots, val):
                comp[a][x] = v
            out.append(NatTrans(source, target, comp))
            return
        a, _ = slots[k]
        for v in target.sets[a]:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(budget, "nat_trans_set")
            val[k] = v
            if all(val[q] == target.act(f, val[p]) for (p, q, f) in checks[k]):
                extend(k + 1)
        val[k] = None

    extend(0)
    return out


# ---------------------------------------------------------------------------
# weighted limits and colimits, each along two independent routes


@dataclass
class WeightedLimitResult:
    transforms: tuple           # Nat(phi, t), the end route
    conical: LimitResult        # over el(phi), the elements route
    pairing: dict               # frozen transform -> conical family

    @property
    def size(self):
        return len(self.transforms)


def weighted_limit(phi: Presheaf, t: Presheaf, cross_check=True) -> WeightedLimitResult:
    """{phi, t} for a weight phi and diagram t, both presheaves on the same base."""
    if not same_category(phi.base, t.base):
        raise MalformedTable("weighted_limit: weight and diagram bases differ")
    transforms = nat_trans_set(phi, t)
    conical = None
    pairing = {}
    if cross_check:
        el, _proj = category_of_elements(phi)
        diagram = Presheaf(f"{t.name}|el", el.op(),
                           {(k, x): t.sets[k] for (k, x) in el.objects},
                           {(u, x): dict(t.actions[u]) for (u, x) in el.morphisms})
        conical = finset_limit(diagram)
        by_tuple = {}
        for alpha in transforms:
            key = tuple(alpha.components[k][x] for (k, x) in el.objects)
            if key in by_tuple:
                raise InternalMismatch("weighted_limit: end route not jointly injective")
            by_tuple[key] = alpha
        if set(by_tuple) != set(conical.apex):
            raise InternalMismatch(
                f"weighted_limit routes disagree: {len(by_tuple)} vs {len(conical.apex)}")
        pairing = {alpha.frozen(): key for key, alpha in by_tuple.items()}
    return WeightedLimitResult(tuple(transforms), conical, pairing)


@dataclass
class WeightedColimitResult:
    classes: tuple              # coend route representatives (k, (x, y))
    coend: CoendResult
    conical: ColimitResult      # over el(phi)^op, the elements route

    @property
    def size(self):
        return len(self.classes)

    def inject(self, k, x, y):
        return self.coend.find(k, (x, y))


def pairing_profunctor(phi: Presheaf, s: Presheaf) -> Profunctor:
    """Cells (k1, k2) = phi(k1) x s(k2); the coend of this over K is phi * s."""
    k = phi.base
    sets = {(k1, k2): tuple((x, y) for x in phi.sets[k1] for y in s.sets[k2])
            for k1 in k.objects for k2 in k.objects}
    left = {}
    right = {}
    for u in k.morphisms:
        for k2 in k.objects:
            left[(u, k2)] = {(x, y): (phi.act(u, x), y)
                             for (x, y) in sets[(k.tgt[u], k2)]}
        for k1 in k.objects:
            right[(k1, u)] = {(x, y): (x, s.actions[u][y])
                              for (x, y) in sets[(k1, k.src[u])]}
    return Profunctor(f"{phi.name}(x){s.name}", k, k, sets, left, right)


def weighted_colimit(phi: Presheaf, s: Presheaf, cross_check=True) -> WeightedColimitResult:
    """phi * s for a weight phi on K and covariant diagram s (a presheaf on K.op())."""
    if not same_category(s.base, phi.base.op()):
        raise MalformedTable("weighted_colimit: diagram must be a presheaf on weight base op")
    co = coend(pairing_profunctor(phi, s))
    conical = None
    if cross_check:
        el, _proj = category_of_elements(phi)
        diagram = Presheaf(f"{s.name}|el", el,
                           {(k, x): s.sets[k] for (k, x) in el.objects},
                           {(u, x): dict(s.actions[u]) for (u, x) in el.morphisms})
        conical = finset_colimit(diagram)
        part1 = {}
        for k in phi.base.objects:
            for x in phi.sets[k]:
                for y in s.sets[k]:
                    part1.setdefault(co.find(k, (x, y)), set()).add((k, x, y))
        part2 = {}
        for (k, x) in el.objects:
            for y in s.sets[k]:
                part2.setdefault(conical.find((k, x), y), set()).add((k, x, y))

        def canon(blocks):
            return sorted((sorted(b, key=repr) for b in blocks), key=repr)

        if canon(part1.values()) != canon(part2.values()):
            raise InternalMismatch("weighted_colimit routes disagree on the quotient")
    return WeightedColimitResult(co.classes, co, conical)


# ---------------------------------------------------------------------------
# colimits weighted by phi inside an arbitrary finite category


@dataclass
class ColimitInCategory:
    apex: object
    cocone: dict                # k -> {x in phi(k) -> morphism S(k) -> apex}


@dataclass
class LimitInCategory:
    apex: object
    cone: dict                  # k -> {y in psi(k) -> morphism apex -> t(k)}


def hom_diagram(s: FinFunctor, a) -> Presheaf:
    """k -> Hom_A(S k, a) as a presheaf on K, acting by precomposition."""
    k = s.source
    cat = s.target
    sets = {j: cat.hom(s.obj(j), a) for j in k.objects}
    actions = {u: {h: cat.compose(h, s.mor(u)) for h in sets[k.tgt[u]]}
               for u in k.morphisms}
    return Presheaf(f"hom({s.name}-,{a!r})", k, sets, actions)


def colimit_in_category(phi: Presheaf, s: FinFunctor):
    """Corepresentation search for Nat(phi, Hom(S-, ?)); lowest object index wins."""
    if not same_category(phi.base, s.source):
        raise MalformedTable("colimit_in_category: weight base must be the diagram source")
    cat = s.target
    nats = {a: nat_trans_set(phi, hom_diagram(s, a)) for a in cat.objects}
    frozen = {a: {n.frozen() for n in nats[a]} for a in cat.objects}
    for c in cat.objects:
        if any(len(cat.hom(c, a)) != len(nats[a]) for a in cat.objects):
            continue
        for eta in nats[c]:
            if _is_universal_cocone(phi, s, c, eta, frozen):
                cocone = {k: {x: eta.components[k][x] for x in phi.sets[k]}
                          for k in phi.base.objects}
                return ColimitInCategory(c, cocone)
    return None


def _is_universal_cocone(phi, s, c, eta, frozen):
    cat = s.target
    k = phi.base
    for a in cat.objects:
        seen = set()
        for g in cat.hom(c, a):
            image = tuple(
                tuple(cat.compose(g, eta.components[j][x]) for x in phi.sets[j])
                for j in k.objects
            )
            if image in seen:
                return False
            seen.add(image)
        if seen != frozen[a]:
            return False
    return True


def transported_is_universal(phi: Presheaf, s: FinFunctor, apex, cocone) -> bool:
    """Is (apex, cocone) a colimit of s weighted by phi, checked at every object."""
    cat = s.target
    k = phi.base
    nats = {a: nat_trans_set(phi, hom_diagram(s, a)) for a in cat.objects}
    frozen = {a: {n.frozen() for n in nats[a]} for a in cat.objects}
    if any(len(cat.hom(apex, a)) != len(nats[a]) for a in cat.objects):
        return False
    for a in cat.objects:
        seen = set()
        for g in cat.hom(apex, a):
            image = tuple(
                tuple(cat.compose(g, cocone[j][x]) for x in phi.sets[j])
                for j in k.objects
            )
            if image in seen:
                return False
            seen.add(image)
        if seen != frozen[a]:
            return False
    return True


def limit_in_category(psi: Presheaf, t: FinFunctor):
    """{psi, t} for psi on L and t: L^op -> A, via the colimit search in A^op."""
    got = colimit_in_category(psi, t.op())
    if got is None:
        return None
    return LimitInCategory(got.apex, got.cocone)


@dataclass
class PreservationResult:
    preserved: bool
    reason: str = ""

    def __bool__(self):
        return self.preserved


def preserves_weighted_colimit(f: FinFunctor, phi: Presheaf, s: FinFunctor,
                               colim: ColimitInCategory) -> PreservationResult:
    """Does f send the given colimit cocone to a colimit cocone in its target."""
    if not same_category(f.source, s.target):
        raise MalformedTable("preserves_weighted_colimit: functor source mismatch")
    fs = compose_functors(f, s)
    apex2 = f.obj(colim.apex)
    cocone2 = {k: {x: f.mor(m) for x, m in colim.cocone[k].items()}
               for k in phi.base.objects}
    if transported_is_universal(phi, fs, apex2, cocone2):
        return PreservationResult(True)
    if colimit_in_category(phi, fs) is None:
        return PreservationResult(False, "colimit missing in target")
    return PreservationResult(False, "transported cocone not universal")
