"""Small projectives, Cauchy completion, the Isbell adjunction, Morita equivalence.

Three independent routes decide small-projectivity and are cross-checked in the
test suite: the canonical-map criterion implemented here, an exhaustive
retract-of-representable search, and adjoint detection on the weight's module.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (FinCategory, FinFunctor, NatTrans, Presheaf, nat_compose,
                   nat_identity, validate)
from .equivalence import (Equivalence, find_equivalence, is_fully_faithful,
                          objects_isomorphic, all_functors)
from .errors import InternalMismatch
from .kan import nerve, yoneda_embed
from .limits import (colimit_in_category, limit_in_category, nat_trans_set,
                     preserves_weighted_colimit, weighted_colimit)
from .profunctor import has_right_adjoint, module_of_weight


def _image(frozen_key, source: Presheaf, j, y):
    """Read off a component of a frozen transformation out of source."""
    return frozen_key[source.base.obj_index[j]][source.sets[j].index(y)]


# ---------------------------------------------------------------------------
# the Isbell adjunction


def isbell_left(phi: Presheaf) -> Presheaf:
    """L(phi)(b) = Nat(phi, Yb) as a covariant weight (presheaf on B^op).

    Elements are frozen transformations; a morphism f: b -> b' acts by
    post-composing with Y(f).
    """
    b_cat = phi.base
    nats = {b: nat_trans_set(phi, yoneda_embed(b_cat, b)) for b in b_cat.objects}
    sets = {b: tuple(n.frozen() for n in nats[b]) for b in b_cat.objects}
    actions = {}
    for f in b_cat.morphisms:
        b = b_cat.src[f]
        table = {}
        for key in sets[b]:
            moved = tuple(
                tuple(b_cat.compose(f, h) for h in row) for row in key
            )
            table[key] = moved
        actions[f] = table
    # the constructor rejects any action that leaves the transformation sets
    return Presheaf(f"L({phi.name})", b_cat.op(), sets, actions)


def isbell_right(psi: Presheaf) -> Presheaf:
    """R(psi)(b) = [B,V](psi, B(b,-)), contravariant in b."""
    b_cat = psi.base.op()
    cov_y = {b: yoneda_embed(psi.base, b) for b in b_cat.objects}
    nats = {b: nat_trans_set(psi, cov_y[b]) for b in b_cat.objects}
    sets = {b: tuple(n.frozen() for n in nats[b]) for b in b_cat.objects}
    actions = {}
    for f in b_cat.morphisms:
        b2 = b_cat.tgt[f]
        table = {}
        for key in sets[b2]:
            moved = tuple(
                tuple(b_cat.compose(h, f) for h in row) for row in key
            )
            table[key] = moved
        actions[f] = table
    return Presheaf(f"R({psi.name})", b_cat, sets, actions)


def isbell_unit(phi: Presheaf) -> NatTrans:
    """phi -> R(L(phi)), x at b mapping to (gamma -> gamma_b(x))."""
    lphi = isbell_left(phi)
    rl = isbell_right(lphi)
    b_cat = phi.base
    comps = {}
    for b in b_cat.objects:
        table = {}
        for x in phi.sets[b]:
            delta = {a: {g: _image(g, phi, b, x) for g in lphi.sets[a]}
                     for a in b_cat.objects}
            table[x] = NatTrans(lphi, yoneda_embed(b_cat.op(), b), delta).frozen()
        comps[b] = table
    unit = NatTrans(phi, rl, comps, name=f"isbell-unit({phi.name})")
    rep = validate(unit)
    if not rep.ok:
        raise InternalMismatch(f"isbell unit not natural: {rep}")
    return unit


def isbell_counit(psi: Presheaf) -> NatTrans:
    """psi -> L(R(psi)) in covariant weights (the counit read in the opposite)."""
    rpsi = isbell_right(psi)
    lr = isbell_left(rpsi)
    b_cat = psi.base.op()
    comps = {}
    for b in b_cat.objects:
        table = {}
        for z in psi.sets[b]:
            gamma = {a: {d: _image(d, psi, b, z) for d in rpsi.sets[a]}
                     for a in b_cat.objects}
            table[z] = NatTrans(rpsi, yoneda_embed(b_cat, b), gamma).frozen()
        comps[b] = table
    counit = NatTrans(psi, lr, comps, name=f"isbell-counit({psi.name})")
    rep = validate(counit)
    if not rep.ok:
        raise InternalMismatch(f"isbell counit not natural: {rep}")
    return counit


# ---------------------------------------------------------------------------
# small projectives


@dataclass
class SmallProjectiveReport:
    colimit_size: int
    nat_size: int
    injective: bool
    surjective: bool

    @property
    def ok(self):
        return self.injective and self.surjective


def small_projective_report(phi: Presheaf) -> SmallProjectiveReport:
    """Bijectivity report for the canonical map phi * L(phi) -> Nat(phi, phi).

    The map sends the class of (x, gamma) over k to y |-> phi(gamma(y))(x); it
    is checked to be constant on classes before anything else.
    """
    b_cat = phi.base
    psi = isbell_left(phi)
    colim = weighted_colimit(phi, psi)
    nats = {n.frozen() for n in nat_trans_set(phi, phi)}
    per_class = {}
    for k in b_cat.objects:
        for x in phi.sets[k]:
            for gkey in psi.sets[k]:
                comps = {j: {y: phi.act(_image(gkey, phi, j, y), x)
                             for y in phi.sets[j]}
                         for j in b_cat.objects}
                alpha = NatTrans(phi, phi, comps).frozen()
                cls = colim.inject(k, x, gkey)
                per_class.setdefault(cls, set()).add(alpha)
    images = {}
    for cls, alphas in per_class.items():
        if len(alphas) != 1:
            raise InternalMismatch("canonical self-map not constant on classes")
        images[cls] = next(iter(alphas))
    for alpha in images.values():
        if alpha not in nats:
            raise InternalMismatch("canonical self-map left the natural set")
    injective = len(set(images.values())) == len(colim.classes)
    surjective = set(images.values()) == nats
    return SmallProjectiveReport(len(colim.classes), len(nats), injective, surjective)


def is_small_projective(phi: Presheaf) -> bool:
    return small_projective_report(phi).ok


def retract_oracle(phi: Presheaf):
    """Exhaustive search for b, s: phi -> Yb, r: Yb -> phi with r.s = id.

    Independent of the canonical-map criterion; used to cross-check it.
    """
    b_cat = phi.base
    ident = nat_identity(phi).frozen()
    for b in b_cat.objects:
        yb = yoneda_embed(b_cat, b)
        sections = nat_trans_set(phi, yb)
        if not sections:
            continue
        retractions = nat_trans_set(yb, phi)
        for s in sections:
            for r in retractions:
                if nat_compose(r, s).frozen() == ident:
                    return b, s, r
    return None


# ---------------------------------------------------------------------------
# Cauchy completion


@dataclass
class CauchyCompletion:
    base: FinCategory
    completion: FinCategory
    embedding: FinFunctor
    idempotents: tuple          # objects of the completion, (a, e) pairs


def idempotent_endos(cat: FinCategory):
    return tuple((a, e) for a in cat.objects for e in cat.hom(a, a)
                 if cat.compose(e, e) == e)


def cauchy_completion(cat: FinCategory, verify=False) -> CauchyCompletion:
    """Split every idempotent: objects (a,e), hom((a,e),(a',e')) = {m = e'.m.e}."""
    objs = idempotent_endos(cat)
    morphisms = []
    for o1 in objs:
        a1, e1 = o1
        for o2 in objs:
            a2, e2 = o2
            for m in cat.hom(a1, a2):
                if cat.compose(e2, cat.compose(m, e1)) == m:
                    morphisms.append(((o1, o2, m), o1, o2))
    identity = {(a, e): ((a, e), (a, e), e) for (a, e) in objs}
    compose = {}
    for (g, gs, gt) in morphisms:
        for (f, fs, ft) in morphisms:
            if ft == gs:
                compose[(g, f)] = (fs, gt, cat.compose(g[2], f[2]))
    completion = FinCategory(f"Q({cat.name})", list(objs), morphisms, identity, compose)
    emb_obj = {a: (a, cat.id_of(a)) for a in cat.objects}
    emb_mor = {f: (emb_obj[cat.src[f]], emb_obj[cat.tgt[f]], f) for f in cat.morphisms}
    embedding = FinFunctor(f"embed({cat.name})", cat, completion, emb_obj, emb_mor)
    result = CauchyCompletion(cat, completion, embedding, objs)
    if verify:
        _verify_completion(result)
    return result


def _verify_completion(qc: CauchyCompletion):
    for entity in (qc.completion, qc.embedding):
        rep = validate(entity)
        if not rep.ok:
            raise InternalMismatch(f"completion invalid: {rep}")
    if not is_fully_faithful(qc.embedding):
        raise InternalMismatch("completion embedding is not fully faithful")
    unsplit = unsplit_idempotents(qc.completion)
    if unsplit:
        raise InternalMismatch(f"idempotents fail to split in completion: {unsplit}")
    grown = nerve(qc.embedding)
    for (b, e) in qc.idempotents:
        p = grown.presheaves[(b, e)]
        for a in qc.base.objects:
            expect = {m for m in qc.base.hom(a, b)
                      if qc.base.compose(e, m) == m}
            got = {triple[2] for triple in p.sets[a]}
            if expect != got:
                raise InternalMismatch("nerve of completion object is not the split image")
        if not is_small_projective(p):
            raise InternalMismatch(f"completion object {(b, e)!r} not small projective")


def unsplit_idempotents(cat: FinCategory):
    """Idempotents admitting no splitting s.p = e, p.s = id; empty means all split."""
    bad = []
    for (x, e) in idempotent_endos(cat):
        found = False
        for r in cat.objects:
            for s in cat.hom(r, x):
                for p in cat.hom(x, r):
                    if cat.compose(s, p) == e and cat.compose(p, s) == cat.id_of(r):
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if not found:
            bad.append((x, e))
    return bad


# ---------------------------------------------------------------------------
# duality and Morita equivalence


@dataclass
class QDuality:
    forward: FinFunctor         # opposite(Q(A^op)) -> Q(A), an isomorphism
    equivalence: Equivalence


def q_duality(cat: FinCategory) -> QDuality:
    """The contravariant match between completions of a category and its opposite."""
    q = cauchy_completion(cat).completion
    q_op = cauchy_completion(cat.op()).completion
    source = q_op.op()
    obj_map = {(a, e): (a, e) for (a, e) in source.objects}
    mor_map = {}
    for mid in source.morphisms:
        (o1, o2, m) = mid
        mor_map[mid] = (o2, o1, m)
    forward = FinFunctor(f"duality({cat.name})", source, q, obj_map, mor_map)
    rep = validate(forward)
    if not rep.ok:
        raise InternalMismatch(f"duality witness invalid: {rep}")
    if len(source.morphisms) != len(q.morphisms) or not is_fully_faithful(forward):
        raise InternalMismatch("duality witness is not an isomorphism")
    equiv = find_equivalence(source, q)
    if equiv is None:
        raise InternalMismatch("duality equivalence search failed")
    return QDuality(forward, equiv)


@dataclass
class MoritaResult:
    equivalent: bool
    witness: Equivalence = None
    left: CauchyCompletion = None
    right: CauchyCompletion = None

    def __bool__(self):
        return self.equivalent


def morita_equivalent(a: FinCategory, b: FinCategory, budget=None) -> MoritaResult:
    qa, qb = cauchy_completion(a), cauchy_completion(b)
    witness = find_equivalence(qa.completion, qb.completion, budget)
    return MoritaResult(witness is not None, witness, qa, qb)


# ---------------------------------------------------------------------------
# dual pairs (weight with right-adjoint module) and Prop-7.3-style checks


@dataclass
class DualPair:
    phi: Presheaf               # contravariant weight on B
    psi: Presheaf               # covariant weight, presheaf on B^op
    phi_module: object          # I -|-> B
    psi_module: object          # B -|-> I, right adjoint of phi_module
    adjunction: object

    def family(self, k, elem, b, x):
        """The component at (b, x) of a psi-element over k: a morphism b -> k."""
        return elem[self.phi.base.obj_index[b]][self.phi.sets[b].index(x)]


def dual_pair_from_weight(phi: Presheaf):
    """The adjoint pair generated by a small projective weight, else None."""
    phi_mod = module_of_weight(phi)
    adj = has_right_adjoint(phi_mod)
    if not adj:
        return None
    g = adj.right
    b_cat = phi.base
    star = g.target.objects[0]
    sets = {b: g.cell(star, b) for b in b_cat.objects}
    actions = {}
    for f in b_cat.morphisms:
        b = b_cat.src[f]
        actions[f] = {x: g.right_act(star, f, x) for x in sets[b]}
    psi = Presheaf(f"dual({phi.name})", b_cat.op(), sets, actions)
    return DualPair(phi, psi, phi_mod, g, adj)


def verify_covariant_representation(pair: DualPair, x_weight: Presheaf) -> int:
    """Checks [B,V](psi, X) = phi * X via the canonical bijection; returns the size.

    The class of (x, xi) over b maps to the transformation gamma -> X(gamma_b(x))(xi).
    """
    phi, psi = pair.phi, pair.psi
    colim = weighted_colimit(phi, x_weight)
    nats = {n.frozen() for n in nat_trans_set(psi, x_weight)}
    per_class = {}
    for b in phi.base.objects:
        for x in phi.sets[b]:
            for xi in x_weight.sets[b]:
                comps = {k: {gamma: x_weight.act(pair.family(k, gamma, b, x), xi)
                             for gamma in psi.sets[k]}
                         for k in phi.base.objects}
                tau = NatTrans(psi, x_weight, comps).frozen()
                cls = colim.inject(b, x, xi)
                per_class.setdefault(cls, set()).add(tau)
    images = set()
    for cls, taus in per_class.items():
        if len(taus) != 1:
            raise InternalMismatch("representation map not constant on classes")
        images.add(next(iter(taus)))
    if len(images) != len(colim.classes) or images != nats:
        raise InternalMismatch(
            f"phi*X and [B,V](psi,X) disagree: {len(colim.classes)} classes vs {len(nats)} transformations")
    return len(nats)


@dataclass
class DualComparison:
    colimit: object             # ColimitInCategory or None
    limit: object               # LimitInCategory or None
    agree: bool
    reason: str = ""


def dual_limit_colimit(pair: DualPair, diagram: FinFunctor) -> DualComparison:
    """{psi, F} against phi * F inside the diagram's target category.

    Both sides must exist together and then have isomorphic apexes.
    """
    colim = colimit_in_category(pair.phi, diagram)
    lim = limit_in_category(pair.psi, diagram)
    if (colim is None) != (lim is None):
        return DualComparison(colim, lim, False, "one side exists without the other")
    if colim is None:
        return DualComparison(None, None, True, "both sides absent")
    same = objects_isomorphic(diagram.target, colim.apex, lim.apex)
    reason = "" if same else "apexes not isomorphic"
    return DualComparison(colim, lim, same, reason)


# ---------------------------------------------------------------------------
# absoluteness sampling


@dataclass
class AbsoluteInstance:
    functor: str
    diagram: tuple              # the diagram's object images, for the record
    side: str                   # "colimit" or "limit"
    exists: bool
    preserved: bool = None
    reason: str = ""


@dataclass
class AbsoluteReport:
    weight: str
    small_projective: bool
    instances: list

    @property
    def violations(self):
        return [i for i in self.instances if i.preserved is False]

    @property
    def consistent(self):
        """Small projectivity must imply that nothing was violated."""
        return not (self.small_projective and self.violations)


def check_absolute_sampled(phi: Presheaf, functors, cap_per_functor=25) -> AbsoluteReport:
    """Preservation of phi-weighted colimits and limits under sampled functors.

    For every sampled functor F: A -> X, every diagram K -> A (up to the cap)
    with an existing weighted colimit is transported and re-checked in X, and
    dually for diagrams K^op -> A and weighted limits.
    """
    k_cat = phi.base
    instances = []
    for f in functors:
        a_cat = f.source
        for s in all_functors(k_cat, a_cat, cap=cap_per_functor):
            colim = colimit_in_category(phi, s)
            summary = tuple(s.obj(j) for j in k_cat.objects)
            if colim is None:
                instances.append(AbsoluteInstance(f.name, summary, "colimit", False))
                continue
            res = preserves_weighted_colimit(f, phi, s, colim)
            instances.append(AbsoluteInstance(f.name, summary, "colimit", True,
                                              res.preserved, res.reason))
        for t in all_functors(k_cat.op(), a_cat, cap=cap_per_functor):
            colim = colimit_in_category(phi, t.op())
            summary = tuple(t.obj(j) for j in k_cat.objects)
            if colim is None:
                instances.append(AbsoluteInstance(f.name, summary, "limit", False))
                continue
            res = preserves_weighted_colimit(f.op(), phi, t.op(), colim)
            instances.append(AbsoluteInstance(f.name, summary, "limit", True,
                                              res.preserved, res.reason))
    return AbsoluteReport(phi.name, is_small_projective(phi), instances)
