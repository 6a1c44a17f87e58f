import pytest

from fincat import corpus
from fincat.cauchy import (cauchy_completion, check_absolute_sampled,
                           dual_limit_colimit, dual_pair_from_weight,
                           idempotent_endos, is_small_projective, isbell_left,
                           isbell_right, isbell_unit, isbell_counit,
                           morita_equivalent, q_duality, retract_oracle,
                           small_projective_report, unsplit_idempotents,
                           verify_covariant_representation)
from fincat.core import identity_functor, nat_compose, nat_identity, validate
from fincat.corpus import (CATEGORIES, GSet, I, M, QM, Two, Z2, PRESHEAVES,
                           embedM, orbit)
from fincat.equivalence import find_equivalence, is_fully_faithful
from fincat.kan import yoneda_embed
from fincat.limits import weighted_colimit
from fincat.profunctor import has_right_adjoint, module_of_weight

from util import karoubi_oracle


def hom_size_grid(cat):
    return tuple(len(cat.hom(a, b)) for a in cat.objects for b in cat.objects)


def test_splitting_the_free_idempotent_monoid():
    qc = cauchy_completion(M, verify=True)
    assert len(qc.completion.objects) == 2
    assert sorted(hom_size_grid(qc.completion), reverse=True) == [2, 1, 1, 1]
    n, sizes = karoubi_oracle(M)
    assert len(qc.completion.objects) == n
    assert sorted(len(qc.completion.hom(a, b))
                  for a in qc.completion.objects
                  for b in qc.completion.objects) == sorted(sizes)


def test_completion_matches_brute_karoubi_everywhere():
    for name, cat in CATEGORIES.items():
        qc = cauchy_completion(cat)
        n, sizes = karoubi_oracle(cat)
        assert len(qc.completion.objects) == n, name
        assert sorted(hom_size_grid(qc.completion)) == sorted(sizes), name


def test_completion_verification_passes_on_fixtures():
    for cat in (I, Two, M, Z2, corpus.Par, corpus.Span):
        cauchy_completion(cat, verify=True)


def test_groups_and_posets_are_already_complete():
    for cat in (I, Z2, corpus.Z3, corpus.Chain3, corpus.N5, Two):
        qc = cauchy_completion(cat)
        assert len(qc.completion.objects) == len(cat.objects), cat.name
        assert not unsplit_idempotents(cat), cat.name


def test_unsplit_idempotent_detection():
    assert unsplit_idempotents(M) == [("*", "e")]
    assert unsplit_idempotents(QM) == []
    assert idempotent_endos(QM) == ((("s1", "s1>s1:1")), ("s1", "s1>s1:e"),
                                    ("se", "se>se:e"))


def test_concrete_completion_size():
    qc = cauchy_completion(GSet)
    assert len(qc.completion.objects) == 7
    assert len(qc.completion.morphisms) == 113
    assert is_fully_faithful(qc.embedding)


def test_small_projective_three_ways_spot_checks():
    yes = ["E", "Y.M.*", "Y.Two.0", "free.Z2", "one.M", "one.Two"]
    no = ["one.Z2", "one.Z3", "zero.Two", "one.Span", "EplusE"]
    for name in yes:
        phi = PRESHEAVES[name]
        assert is_small_projective(phi), name
        assert retract_oracle(phi) is not None, name
        assert has_right_adjoint(module_of_weight(phi)).found, name
    for name in no:
        phi = PRESHEAVES[name]
        assert not is_small_projective(phi), name
        assert retract_oracle(phi) is None, name
        assert not has_right_adjoint(module_of_weight(phi)).found, name


def test_small_projective_report_shape():
    rep = small_projective_report(PRESHEAVES["E"])
    assert rep.ok and rep.colimit_size == rep.nat_size
    rep = small_projective_report(PRESHEAVES["one.Z2"])
    assert not rep.ok


def test_retract_witness_is_a_retract():
    # the witness is (object, section, retraction) with r . s the identity
    b, section, retraction = retract_oracle(PRESHEAVES["E"])
    y = yoneda_embed(M, b)
    assert section.source.name == PRESHEAVES["E"].name
    assert section.target.name == y.name
    assert nat_compose(retraction, section).frozen() == \
        nat_identity(PRESHEAVES["E"]).frozen()


def test_isbell_left_of_representable_is_covariant_hom():
    lphi = isbell_left(PRESHEAVES["Y.M.*"])
    cov = corpus.covariant_hom(M, "*")
    # both are presheaves on M.op() with two elements at *
    assert len(lphi.sets["*"]) == len(cov.sets["*"]) == 2
    assert validate(lphi).ok


def test_isbell_round_trip_on_small_projectives():
    from fincat.equivalence import presheaf_isomorphic
    for name in ("E", "Y.Two.0", "Y.M.*", "free.Z2", "one.Two"):
        phi = PRESHEAVES[name]
        back = isbell_right(isbell_left(phi))
        assert presheaf_isomorphic(phi, back), name


def test_isbell_unit_and_counit_validate():
    for name in ("E", "one.Z2", "zero.Two", "Y.Span.0"):
        phi = PRESHEAVES[name]
        assert validate(isbell_unit(phi)).ok, name
        psi = isbell_left(phi)
        assert validate(isbell_counit(psi)).ok, name


def test_q_duality_fixture_categories():
    for cat in (I, M, Z2):
        dual = q_duality(cat)
        assert validate(dual.forward).ok
        assert dual.equivalence is not None


def test_morita_verdicts():
    assert morita_equivalent(M, QM)
    assert not morita_equivalent(Z2, I)
    assert morita_equivalent(Two, Two)
    assert morita_equivalent(M, M)
    res = morita_equivalent(M, QM)
    assert res.witness is not None
    assert validate(res.witness.forward).ok


def test_morita_without_equivalence():
    # M and QM are not equivalent as categories, only Morita equivalent
    assert find_equivalence(M, QM) is None
    assert morita_equivalent(M, QM).equivalent


def test_completion_is_idempotent_up_to_equivalence():
    for cat in (M, Two, Z2, corpus.Par, I):
        q1 = cauchy_completion(cat).completion
        q2 = cauchy_completion(q1).completion
        assert find_equivalence(q1, q2) is not None, cat.name


def test_dual_pair_from_small_projective_weight():
    pair = dual_pair_from_weight(PRESHEAVES["E"])
    assert pair is not None
    assert pair.psi.name == "dual(E)"
    assert dual_pair_from_weight(PRESHEAVES["one.Z2"]) is None


def test_covariant_representation_counts():
    from fincat.core import covariant
    pair = dual_pair_from_weight(PRESHEAVES["E"])
    fixed = covariant("fix", M, {"*": ("x",)},
                      {"1": {"x": "x"}, "e": {"x": "x"}})
    squash = covariant("squash", M, {"*": ("u", "v")},
                       {"1": {"u": "u", "v": "v"}, "e": {"u": "u", "v": "u"}})
    for x in (corpus.covariant_hom(M, "*"), fixed, squash):
        n = verify_covariant_representation(pair, x)
        assert n == len(weighted_colimit(PRESHEAVES["E"], x).classes), x.name


def test_dual_limit_colimit_needs_the_completion():
    pair = dual_pair_from_weight(PRESHEAVES["E"])
    inside = dual_limit_colimit(pair, identity_functor(M))
    assert inside.agree and inside.colimit is None and inside.limit is None
    split = dual_limit_colimit(pair, embedM)
    assert split.agree
    assert split.colimit.apex == "se" and split.limit.apex == "se"


def test_absolute_sampling_respects_small_projectivity():
    rep = check_absolute_sampled(PRESHEAVES["Y.M.*"], [embedM])
    assert rep.small_projective
    assert rep.consistent and not rep.violations
    assert any(i.exists for i in rep.instances)


def test_absolute_sampling_finds_group_average_failure():
    rep = check_absolute_sampled(PRESHEAVES["one.Z2"], [orbit])
    assert not rep.small_projective
    assert rep.violations
    sides = {i.side for i in rep.violations}
    assert sides == {"colimit", "limit"}
    assert rep.consistent
