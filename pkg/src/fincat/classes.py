"""Weight classes: bounded closure, saturation, atoms, commutation, flatness,
continuity, and recognition of free cocompletions."""
from __future__ import annotations

from dataclasses import dataclass

from .core import (FinCategory, FinFunctor, NatTrans, Presheaf, Profunctor,
                   category_of_elements, compose_functors, covariant,
                   full_subcategory, is_connected, is_filtered, nat_compose,
                   nat_identity, same_category)
from .equivalence import all_functors, is_fully_faithful, objects_isomorphic
from .errors import CapExceeded, InternalMismatch, MalformedTable
from .kan import (PresheafCollection, Provenance, member_category,
                  pointwise_colimit, yoneda_embed)
from .limits import (colimit_in_category, nat_trans_set, weighted_colimit,
                     weighted_limit)
from .profunctor import _column, _row


class WeightClass:
    """A finite, named collection of weights; each weight carries its own domain."""

    def __init__(self, name, weights):
        self.name = name
        self.weights = tuple(weights)
        for w in self.weights:
            if not isinstance(w, Presheaf):
                raise MalformedTable(f"weight class {name}: members must be presheaves")

    def restricted_to(self, k: FinCategory):
        return tuple(w for w in self.weights if same_category(w.base, k))

    def domains(self):
        out = []
        for w in self.weights:
            if not any(same_category(w.base, k) for k in out):
                out.append(w.base)
        return out

    def __repr__(self):
        return f"WeightClass({self.name!r}, {len(self.weights)} weights)"


@dataclass(frozen=True)
class Caps:
    rounds: int = 4
    members: int = 200
    value_size: int = 64


@dataclass
class ClosureResult:
    collection: PresheafCollection
    rounds: int
    saturated_at_bound: bool
    cap: Caps
    capped: tuple = ()           # notes for anything a cap suppressed


def phi_closure_bounded(weight_class: WeightClass, base: FinCategory,
                        caps: Caps = Caps(), cross_check=True) -> ClosureResult:
    """Close the representables of base under weighted colimits, round by round.

    Each round takes every weight and every diagram into the members present at
    the start of the round, computes the colimit pointwise, and adds it unless an
    isomorphic member exists.  Stops at a fixpoint or at the caps; hitting a cap
    is flagged on the result, never raised.
    """
    coll = PresheafCollection.representables(base)
    nat_cache = {}
    notes = []
    rounds = 0
    saturated = False
    while rounds < caps.rounds:
        rounds += 1
        snapshot = len(coll.members)
        mem_cat, decode = member_category(coll, count=snapshot, nat_cache=nat_cache)
        added = False
        capped_this_round = False
        for phi in weight_class.weights:
            for s in all_functors(phi.base, mem_cat):
                if len(coll.members) >= caps.members:
                    notes.append(f"member cap {caps.members} hit in round {rounds}")
                    capped_this_round = True
                    break
                objs = {k: coll.members[s.obj(k)] for k in phi.base.objects}
                mors = {u: decode[s.mor(u)] for u in phi.base.morphisms}
                p = pointwise_colimit(phi, objs, mors, base,
                                      f"{weight_class.name}#{len(coll.members)}",
                                      cross_check=cross_check)
                if any(len(p.sets[a]) > caps.value_size for a in base.objects):
                    notes.append(f"value cap {caps.value_size} hit by a "
                                 f"{phi.name}-colimit in round {rounds}")
                    capped_this_round = True
                    continue
                prov = Provenance("colimit", (
                    phi.name,
                    tuple((k, s.obj(k)) for k in phi.base.objects),
                    tuple((u, tuple((a, tuple(sorted(
                        decode[s.mor(u)].components[a].items(), key=repr)))
                        for a in base.objects))
                        for u in phi.base.morphisms)))
                _, was_new = coll.add(p, prov)
                added = added or was_new
            else:
                continue
            break
        if capped_this_round:
            break
        if not added:
            saturated = True
            break
    return ClosureResult(coll, rounds, saturated, caps, tuple(notes))


@dataclass
class SaturationVerdict:
    verdict: str                 # "yes" | "no-at-fixpoint" | "unknown-at-cap"
    member_index: object
    closure: ClosureResult

    @property
    def found(self):
        return self.verdict == "yes"


def in_saturation_bounded(psi: Presheaf, weight_class: WeightClass,
                          caps: Caps = Caps()) -> SaturationVerdict:
    """Is psi, up to isomorphism, in the bounded closure over its own base?"""
    closure = phi_closure_bounded(weight_class, psi.base, caps)
    i = closure.collection.find_isomorphic(psi)
    if i is not None:
        return SaturationVerdict("yes", i, closure)
    if closure.saturated_at_bound:
        return SaturationVerdict("no-at-fixpoint", None, closure)
    return SaturationVerdict("unknown-at-cap", None, closure)


@dataclass
class CocompletenessResult:
    cocomplete: bool
    witness: object              # (weight name, ((k, object), ...)) when missing

    def __bool__(self):
        return self.cocomplete


def is_phi_cocomplete(cat: FinCategory, weight_class: WeightClass,
                      budget=None) -> CocompletenessResult:
    for phi in weight_class.weights:
        for s in all_functors(phi.base, cat, budget=budget):
            if colimit_in_category(phi, s) is None:
                witness = (phi.name, tuple((k, s.obj(k)) for k in phi.base.objects))
                return CocompletenessResult(False, witness)
    return CocompletenessResult(True, None)


def _hom_preserves_colimit(cat, a, phi, s, colim) -> bool:
    """Does Hom(a, -) turn the given colimit into a colimit of sets?

    Computes the weighted colimit of k -> Hom(a, S k) and compares it with
    Hom(a, apex) along the map induced by the cocone.
    """
    k_cat = phi.base
    diagram = covariant(f"hom({a!r},S-)", k_cat,
                        {k: list(cat.hom(a, s.obj(k))) for k in k_cat.objects},
                        {u: {h: cat.compose(s.mor(u), h)
                             for h in cat.hom(a, s.obj(k_cat.src[u]))}
                         for u in k_cat.morphisms})
    wc = weighted_colimit(phi, diagram)
    image = {}
    for k in k_cat.objects:
        for x in phi.sets[k]:
            for h in cat.hom(a, s.obj(k)):
                rep = wc.inject(k, x, h)
                val = cat.compose(colim.cocone[k][x], h)
                if rep in image:
                    if image[rep] != val:
                        raise InternalMismatch(
                            "cocone-induced map not constant on colimit classes")
                else:
                    image[rep] = val
    vals = list(image.values())
    return len(set(vals)) == len(vals) and set(vals) == set(cat.hom(a, colim.apex))


def atoms(cat: FinCategory, weight_class: WeightClass, budget=None) -> tuple:
    """Objects whose covariant hom preserves every existing colimit instance."""
    good = set(cat.objects)
    for phi in weight_class.weights:
        for s in all_functors(phi.base, cat, budget=budget):
            colim = colimit_in_category(phi, s)
            if colim is None:
                continue
            for a in list(good):
                if not _hom_preserves_colimit(cat, a, phi, s, colim):
                    good.discard(a)
            if not good:
                return ()
    return tuple(a for a in cat.objects if a in good)


@dataclass
class CommutationResult:
    commutes: bool
    colimit_of_limits: int       # size of phi * Nat(psi, S(-, ?))
    limit_of_colimits: int       # size of Nat(psi, phi * S(?, -))
    injective: bool
    surjective: bool

    def __bool__(self):
        return self.commutes


def _limit_then_colimit(phi, psi, s):
    """The presheaf l -> Nat(psi, S(-, l)) with frozen elements, then its colimit."""
    l_cat, k_cat = s.source, s.target
    cols = {l: _column(s, l) for l in l_cat.objects}
    g_sets = {l: [n.frozen() for n in nat_trans_set(psi, cols[l])]
              for l in l_cat.objects}
    g_actions = {}
    for m in l_cat.morphisms:
        l = l_cat.src[m]
        table = {}
        for gamma in g_sets[l]:
            table[gamma] = tuple(tuple(s.right_act(k, m, y) for y in row)
                                 for k, row in zip(k_cat.objects, gamma))
        g_actions[m] = table
    g = covariant(f"lim[{psi.name},{s.name}]", l_cat, g_sets, g_actions)
    return g, weighted_colimit(phi, g)


def _colimit_then_limit(phi, psi, s):
    """Per-object colimits phi * S(k, -) assembled into a presheaf on the target."""
    l_cat, k_cat = s.source, s.target
    per = {k: weighted_colimit(phi, _row(s, k)) for k in k_cat.objects}
    sets = {k: per[k].classes for k in k_cat.objects}
    actions = {}
    for beta in k_cat.morphisms:
        k, k2 = k_cat.src[beta], k_cat.tgt[beta]
        table = {}
        for rep in sets[k2]:
            l, (x, y) = rep
            table[rep] = per[k].inject(l, x, s.left_act(beta, l, y))
        actions[beta] = table
    h = Presheaf(f"colim[{phi.name},{s.name}]", k_cat, sets, actions)
    return h, per


def check_commutation(phi: Presheaf, psi: Presheaf, s: Profunctor) -> CommutationResult:
    """Does the phi-colimit commute with the psi-limit over the two-variable s?

    s must be contravariant in its target (the psi side) and covariant in its
    source (the phi side).  Computes both iterated constructions and the
    comparison map from colimit-of-limits to limit-of-colimits; commutes means
    the comparison is a bijection.
    """
    if not same_category(phi.base, s.source):
        raise MalformedTable("check_commutation: colimit weight must live on the source")
    if not same_category(psi.base, s.target):
        raise MalformedTable("check_commutation: limit weight must live on the target")
    k_cat = s.target
    g, a_side = _limit_then_colimit(phi, psi, s)
    h, per = _colimit_then_limit(phi, psi, s)
    b_res = weighted_limit(psi, h)
    b_frozen = {t.frozen() for t in b_res.transforms}

    def push(l, x, gamma):
        comps = {}
        for k, row in zip(k_cat.objects, gamma):
            comps[k] = {w: per[k].inject(l, x, val)
                        for w, val in zip(psi.sets[k], row)}
        return NatTrans(psi, h, comps).frozen()

    assigned = {}
    for l in phi.base.objects:
        for x in phi.sets[l]:
            for gamma in g.sets[l]:
                rep = a_side.inject(l, x, gamma)
                tau = push(l, x, gamma)
                if tau not in b_frozen:
                    raise InternalMismatch("comparison image is not a natural family")
                if rep in assigned:
                    if assigned[rep] != tau:
                        raise InternalMismatch("comparison not constant on classes")
                else:
                    assigned[rep] = tau
    values = list(assigned.values())
    injective = len(set(values)) == len(values)
    surjective = set(values) == b_frozen
    return CommutationResult(injective and surjective, a_side.size, b_res.size,
                             injective, surjective)


def flat_for_finite_limits(phi: Presheaf) -> bool:
    """Filteredness of el(phi)^op; such weights commute with finite limits."""
    el, _ = category_of_elements(phi)
    return is_filtered(el.op())


def flat_for_terminal(phi: Presheaf) -> bool:
    """Connectedness of el(phi); such weights commute with the terminal object."""
    el, _ = category_of_elements(phi)
    return is_connected(el)


def _sends_colimit_to_limit(psi, phi, s, colim) -> bool:
    """Is psi(apex) -> Nat(phi, psi . S) induced by the cocone a bijection."""
    k_cat = phi.base
    comp = Presheaf(f"{psi.name}.{s.name}", k_cat,
                    {k: list(psi.sets[s.obj(k)]) for k in k_cat.objects},
                    {u: {z: psi.act(s.mor(u), z)
                         for z in psi.sets[s.obj(k_cat.tgt[u])]}
                     for u in k_cat.morphisms})
    families = {n.frozen() for n in nat_trans_set(phi, comp)}
    seen = []
    for z in psi.sets[colim.apex]:
        key = tuple(tuple(psi.act(colim.cocone[k][x], z) for x in phi.sets[k])
                    for k in k_cat.objects)
        if key not in families:
            raise InternalMismatch("cocone image under psi is not a natural family")
        seen.append(key)
    return len(set(seen)) == len(seen) and len(seen) == len(families)


def is_phi_continuous(psi: Presheaf, cat: FinCategory,
                      weight_class: WeightClass, budget=None) -> bool:
    """Does psi send every existing weighted colimit of cat to a limit of sets?

    Instances whose colimit does not exist in cat are skipped.
    """
    if not same_category(psi.base, cat):
        raise MalformedTable("is_phi_continuous: presheaf must live on the category")
    for phi in weight_class.weights:
        for s in all_functors(phi.base, cat, budget=budget):
            colim = colimit_in_category(phi, s)
            if colim is None:
                continue
            if not _sends_colimit_to_limit(psi, phi, s, colim):
                return False
    return True


@dataclass
class RecognitionReport:
    fully_faithful: bool
    cocomplete: bool
    closure_reaches_all: bool
    image_in_atoms: bool
    rounds: int
    unreached: tuple = ()

    @property
    def ok(self):
        return (self.fully_faithful and self.cocomplete
                and self.closure_reaches_all and self.image_in_atoms)

    def __bool__(self):
        return self.ok


def recognize_free_cocompletion(g: FinFunctor, weight_class: WeightClass,
                                caps: Caps = Caps(), budget=None) -> RecognitionReport:
    """Is g the inclusion of the atoms of a free cocompletion, at this bound?

    Checks four conditions: g fully faithful; its target has all the class's
    colimits; the image objects generate the target under those colimits; and
    the image lands in the atoms.  Raises CapExceeded only if the object closure
    is still growing when the round cap stops it and objects remain unreached.
    """
    b_cat = g.target
    ff = is_fully_faithful(g)
    cocomplete = bool(is_phi_cocomplete(b_cat, weight_class, budget=budget))
    reached = []
    for a in g.source.objects:
        if g.obj(a) not in reached:
            reached.append(g.obj(a))
    rounds = 0
    fixpoint = False
    while rounds < caps.rounds and not fixpoint:
        rounds += 1
        sub, incl = full_subcategory(b_cat, reached)
        new = []
        for phi in weight_class.weights:
            for s in all_functors(phi.base, sub, budget=budget):
                colim = colimit_in_category(phi, compose_functors(incl, s))
                if colim is None:
                    continue
                if colim.apex not in reached and colim.apex not in new:
                    new.append(colim.apex)
        if new:
            reached.extend(new)
        else:
            fixpoint = True
    unreached = tuple(b for b in b_cat.objects
                      if not any(objects_isomorphic(b_cat, b, c) for c in reached))
    if unreached and not fixpoint:
        raise CapExceeded(f"object closure still growing after {rounds} rounds "
                          f"with {len(unreached)} objects unreached")
    atom_set = set(atoms(b_cat, weight_class, budget=budget))
    in_atoms = all(g.obj(a) in atom_set for a in g.source.objects)
    return RecognitionReport(ff, cocomplete, not unreached, in_atoms,
                             rounds, unreached)


@dataclass
class CommaWitness:
    connected: bool
    objects: int
    morphisms: int
    category: FinCategory


def empty_weight(cat: FinCategory) -> Presheaf:
    """The constantly empty presheaf; weights the colimit over no data."""
    return Presheaf("0", cat, {a: () for a in cat.objects},
                    {f: {} for f in cat.morphisms})


def comma_connectedness_witness(target: Presheaf) -> CommaWitness:
    """Build the comma of (representables + empty presheaf) over target.

    The empty presheaf maps uniquely into everything, so the comma category is
    never empty and always connected; the witness makes that checkable.
    """
    cat = target.base
    probes = [yoneda_embed(cat, a) for a in cat.objects]
    probes.append(empty_weight(cat))
    into = {i: nat_trans_set(p, target) for i, p in enumerate(probes)}
    between = {}
    index_of = {}
    for i, p in enumerate(probes):
        for j, q in enumerate(probes):
            between[(i, j)] = nat_trans_set(p, q)
            for n, m in enumerate(between[(i, j)]):
                index_of[(i, j, m.frozen())] = n
    objects = [(i, w.frozen()) for i in range(len(probes)) for w in into[i]]
    arrow = {(i, w.frozen()): w for i in range(len(probes)) for w in into[i]}
    morphisms = []
    identity = {}
    for src in objects:
        i, _ = src
        for tgt in objects:
            j, vf = tgt
            for n, m in enumerate(between[(i, j)]):
                if nat_compose(arrow[tgt], m).frozen() == src[1]:
                    mid = (src, tgt, n)
                    morphisms.append((mid, src, tgt))
        ident = nat_identity(probes[i])
        identity[src] = (src, src, index_of[(i, i, ident.frozen())])
    compose = {}
    for (m2, s2, t2) in morphisms:
        for (m1, s1, t1) in morphisms:
            if t1 == s2:
                i, j, k = s1[0], s2[0], t2[0]
                comp = nat_compose(between[(j, k)][m2[2]], between[(i, j)][m1[2]])
                compose[(m2, m1)] = (s1, t2, index_of[(i, k, comp.frozen())])
    comma = FinCategory(f"comma(W/{target.name})", objects, morphisms,
                        identity, compose)
    return CommaWitness(is_connected(comma), len(objects), len(morphisms), comma)
