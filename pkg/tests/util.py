"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the library code paths they are checking:
the Karoubi enumeration works straight off the composition table, the functor
counter filters the raw product space, and the second commutation pipeline is
built from public pieces only.
"""
import itertools

from fincat import corpus, validate
from fincat.core import (FinCategory, FinFunctor, NatTrans, Presheaf,
                         Profunctor, covariant, product_category)
from fincat.limits import nat_trans_set, weighted_colimit, weighted_limit

# pool for randomized instances; every member has at most three objects
SMALL_CATEGORIES = [corpus.I, corpus.Two, corpus.Disc2, corpus.Span,
                    corpus.Cospan, corpus.Par, corpus.M, corpus.Z2,
                    corpus.Chain3]


def random_presheaf(rng, cat, name, max_size=3, attempts=2000):
    """Rejection-sample a valid presheaf with value sets of size <= max_size."""
    for _ in range(attempts):
        sets = {a: tuple(f"{a}x{i}" for i in range(rng.randint(0, max_size)))
                for a in cat.objects}
        actions = {}
        ok = True
        for f in cat.morphisms:
            dom, cod = sets[cat.tgt[f]], sets[cat.src[f]]
            if cat.is_identity(f):
                actions[f] = {x: x for x in dom}
                continue
            if dom and not cod:
                ok = False
                break
            actions[f] = {x: rng.choice(cod) for x in dom}
        if not ok:
            continue
        p = Presheaf(name, cat, sets, actions)
        if validate(p).ok:
            return p
    raise AssertionError(f"could not sample a presheaf on {cat.name}")


def random_nonempty_presheaf(rng, cat, name, max_size=3):
    for i in range(200):
        p = random_presheaf(rng, cat, name, max_size)
        if any(p.sets[a] for a in cat.objects):
            return p
    raise AssertionError(f"only empty presheaves sampled on {cat.name}")


def naive_functor_count(source, target):
    """Filter the full product space; only usable for tiny categories."""
    count = 0
    for objs in itertools.product(target.objects, repeat=len(source.objects)):
        omap = dict(zip(source.objects, objs))
        pools = [target.hom(omap[source.src[m]], omap[source.tgt[m]])
                 for m in source.morphisms]
        for images in itertools.product(*pools):
            mmap = dict(zip(source.morphisms, images))
            if any(mmap[source.id_of(a)] != target.id_of(omap[a])
                   for a in source.objects):
                continue
            if all(target.compose(mmap[g], mmap[f]) == mmap[h]
                   for (g, f), h in source.compose_table.items()):
                count += 1
    return count


def karoubi_oracle(cat):
    """Idempotent splitting sizes straight off the composition table.

    Returns (object count, hom-size tuple in row-major object order).
    """
    idem = [(a, e) for a in cat.objects for e in cat.hom(a, a)
            if cat.compose(e, e) == e]
    sizes = tuple(len([m for m in cat.hom(a1, a2)
                       if cat.compose(e2, cat.compose(m, e1)) == m])
                  for (a1, e1) in idem for (a2, e2) in idem)
    return len(idem), sizes


def poset_reflection(cat, sub_objects, x):
    """Least element of sub_objects above x, or None; cat must be a poset."""
    above = [b for b in sub_objects if cat.hom(x, b)]
    for b in above:
        if all(cat.hom(b, c) for c in above):
            return b
    return None


def profunctor_from_product(name, k_cat, l_cat, p):
    """Split a presheaf on k_cat x l_cat.op() into a profunctor l_cat -|-> k_cat."""
    sets = {(b, a): p.sets[(b, a)] for b in k_cat.objects for a in l_cat.objects}
    left = {(m, a): {x: p.act((m, l_cat.id_of(a)), x)
                     for x in sets[(k_cat.tgt[m], a)]}
            for m in k_cat.morphisms for a in l_cat.objects}
    right = {(b, alpha): {x: p.act((k_cat.id_of(b), alpha), x)
                          for x in sets[(b, l_cat.src[alpha])]}
             for b in k_cat.objects for alpha in l_cat.morphisms}
    return Profunctor(name, l_cat, k_cat, sets, left, right)


def random_profunctor(rng, l_cat, k_cat, name):
    base = product_category(k_cat, l_cat.op())
    return profunctor_from_product(name, k_cat, l_cat,
                                   random_presheaf(rng, base, f"{name}~", 2))


def commutation_verdict_reading2(phi, psi, s):
    """Does Nat(psi, -) send the phi-colimit of columns to a limit?

    An independent rebuild of the commutation comparison: form the pointwise
    phi-colimit of the column presheaves of s, then push colimit classes of
    transformation families through the coend injections and compare with the
    transformation set into the colimit presheaf.
    """
    l_cat, k_cat = s.source, s.target
    columns = {}
    for l in l_cat.objects:
        sets = {k: s.cell(k, l) for k in k_cat.objects}
        actions = {m: {x: s.left_act(m, l, x) for x in sets[k_cat.tgt[m]]}
                   for m in k_cat.morphisms}
        columns[l] = Presheaf(f"col@{l!r}", k_cat, sets, actions)
    # phi-colimit of the columns, one weighted colimit per k with handles kept
    per = {}
    for k in k_cat.objects:
        diag = covariant(f"row@{k!r}", l_cat,
                         {l: columns[l].sets[k] for l in l_cat.objects},
                         {u: {x: s.right_act(k, u, x)
                              for x in columns[l_cat.src[u]].sets[k]}
                          for u in l_cat.morphisms})
        per[k] = weighted_colimit(phi, diag)
    colim_sets = {k: per[k].classes for k in k_cat.objects}
    colim_actions = {}
    for m in k_cat.morphisms:
        k1, k2 = k_cat.src[m], k_cat.tgt[m]
        colim_actions[m] = {rep: per[k1].inject(l, x, s.left_act(m, l, y))
                            for rep in colim_sets[k2] for l, (x, y) in [rep]}
    colim_p = Presheaf("colim", k_cat, colim_sets, colim_actions)
    # left side: phi-colimit of the transformation sets into the columns
    gsets = {l: tuple(n.frozen() for n in nat_trans_set(psi, columns[l]))
             for l in l_cat.objects}

    def transport(u, frozen):
        l2 = l_cat.tgt[u]
        comps = {k: {w: s.right_act(k, u, v)
                     for w, v in zip(psi.sets[k], row)}
                 for k, row in zip(k_cat.objects, frozen)}
        return NatTrans(psi, columns[l2], comps).frozen()

    g = covariant("G2", l_cat, gsets,
                  {u: {fr: transport(u, fr) for fr in gsets[l_cat.src[u]]}
                   for u in l_cat.morphisms})
    left = weighted_colimit(phi, g)
    # canonical comparison into Nat(psi, colim_p)
    target_frozen = {n.frozen() for n in nat_trans_set(psi, colim_p)}
    images = set()
    for l, (x, frozen) in left.classes:
        comps = {k: {w: per[k].inject(l, x, v)
                     for w, v in zip(psi.sets[k], row)}
                 for k, row in zip(k_cat.objects, frozen)}
        images.add(NatTrans(psi, colim_p, comps).frozen())
    injective = len(images) == len(left.classes)
    surjective = images == target_frozen
    assert images <= target_frozen, "comparison image escapes the target"
    return injective and surjective


def kan_bijection(k, t, s):
    """The unit-induced map Nat(Lan_k t, s) -> Nat(t, s restricted along k).

    Returns (left size, right size, bijective).
    """
    from fincat.kan import lan, restrict
    res = lan(k, t)
    restricted = restrict(k, s)
    left = nat_trans_set(res.extension, s)
    right = {n.frozen() for n in nat_trans_set(t, restricted)}
    images = set()
    for alpha in left:
        comps = {a: {x: alpha.components[k.obj(a)][res.unit[a][x]]
                     for x in t.sets[a]}
                 for a in k.source.objects}
        images.add(NatTrans(t, restricted, comps).frozen())
    assert images <= right, "unit transpose is not natural"
    bijective = len(images) == len(left) and images == right
    return len(left), len(right), bijective
