import pytest

from fincat import corpus, validate
from fincat.core import (FinCategory, FinFunctor, NatTrans, Presheaf,
                         category_of_elements, compose_functors, covariant,
                         full_subcategory, identity_functor, is_connected,
                         is_filtered, nat_compose, nat_identity,
                         product_category, same_category, unit_category)
from fincat.corpus import (Chain3, Disc2, Empty, GSet, I, M, N5, Par, QM, Span,
                           Two, Z2, Z3, PRESHEAVES)
from fincat.errors import MalformedTable


def test_compose_is_first_then_second():
    # compose(g, f) means "first f, then g"
    assert Two.compose("id1", "f") == "f"
    assert Two.compose("f", "id0") == "f"
    assert Z3.compose("g", "g") == "h"
    assert Chain3.compose("1<=2", "0<=1") == "0<=2"


def test_hom_and_identities():
    assert Two.hom("0", "1") == ("f",)
    assert Two.hom("1", "0") == ()
    assert M.hom("*", "*") == ("1", "e")
    assert M.id_of("*") == "1"
    assert Span.id_of("2") == "id2"


def test_missing_composite_is_rejected():
    with pytest.raises(MalformedTable):
        FinCategory("broken", ["a"], [("i", "a", "a"), ("e", "a", "a")],
                    {"a": "i"}, {("i", "i"): "i", ("i", "e"): "e",
                                 ("e", "i"): "e"}).compose("e", "e")


def test_op_is_a_cached_involution():
    from fincat import opposite
    for cat in (Two, M, Z2, Span, GSet):
        op = cat.op()
        assert op.op() is cat
        assert cat.op() is op
        assert opposite(cat) is op
        assert set(op.morphisms) == set(cat.morphisms)
        for f in cat.morphisms:
            assert op.src[f] == cat.tgt[f] and op.tgt[f] == cat.src[f]


def test_op_reverses_composition():
    op = Chain3.op()
    assert op.compose("0<=1", "1<=2") == "0<=2"
    with pytest.raises(MalformedTable):
        op.compose("1<=2", "0<=1")


def test_unit_category_shape():
    u = unit_category()
    assert u.objects == ("*",)
    assert u.morphisms == ("id",)
    assert u.compose("id", "id") == "id"


def test_product_category_counts():
    p = product_category(Two, Two)
    assert len(p.objects) == 4
    assert len(p.morphisms) == 9
    assert validate(p).ok
    assert p.compose(("id1", "f"), ("f", "id0")) == ("f", "f")


def test_full_subcategory_of_QM_is_M_shaped():
    sub, incl = full_subcategory(QM, ["s1"])
    assert len(sub.objects) == 1 and len(sub.morphisms) == 2
    assert validate(sub).ok and validate(incl).ok
    assert sub.compose("s1>s1:e", "s1>s1:e") == "s1>s1:e"


def test_validate_accepts_whole_corpus():
    for cat in corpus.CATEGORIES.values():
        assert validate(cat).ok, cat.name
    for p in PRESHEAVES.values():
        assert validate(p).ok, p.name
    for f in corpus.FUNCTORS.values():
        assert validate(f).ok, f.name
    for p in corpus.PROFUNCTORS.values():
        assert validate(p).ok, p.name
    for p in corpus.COVARIANT.values():
        assert validate(p).ok, p.name


def test_validate_reports_nonassociative_triple():
    report = validate(corpus.nonassociative_table())
    assert not report.ok
    assoc = [v for v in report.violations if v.law == "associativity"]
    assert assoc, report
    witnesses = {v.witness for v in assoc}
    assert any("f" in w and "e" in w for w in witnesses)


def test_validate_functor():
    collapse = FinFunctor("collapse", Two, Two, {"0": "0", "1": "0"},
                          {"id0": "id0", "id1": "id0", "f": "id0"})
    assert validate(collapse).ok
    squash = FinFunctor("squash", Par, Two, {"0": "0", "1": "1"},
                        {"id0": "id0", "id1": "id1", "s": "f", "t": "f"})
    assert validate(squash).ok
    broken = FinFunctor("broken", Par, Two, {"0": "0", "1": "1"},
                        {"id0": "id0", "id1": "id1", "s": "f", "t": "id1"})
    rep = validate(broken)
    assert not rep.ok
    assert any(v.law == "endpoint-preservation" for v in rep.violations)


def test_presheaf_requires_action_coverage():
    with pytest.raises(MalformedTable):
        Presheaf("p", Two, {"0": ("a",), "1": ("b",)},
                 {"id0": {"a": "a"}, "id1": {"b": "b"}, "f": {}})


def test_presheaf_validate_catches_broken_identity_action():
    p = Presheaf("p", Two, {"0": ("a", "b"), "1": ()},
                 {"id0": {"a": "b", "b": "a"}, "id1": {}, "f": {}})
    rep = validate(p)
    assert not rep.ok
    assert any(v.law == "identity-action" for v in rep.violations)


def test_nat_trans_validate_and_compose():
    e, one = PRESHEAVES["E"], PRESHEAVES["one.M"]
    up = NatTrans(e, PRESHEAVES["Y.M.*"], {"*": {"e": "e"}})
    assert validate(up).ok
    bad = NatTrans(e, PRESHEAVES["Y.M.*"], {"*": {"e": "1"}})
    assert not validate(bad).ok
    ident = nat_identity(e)
    assert nat_compose(ident, ident).frozen() == ident.frozen()


def test_covariant_constructor_matches_manual_op_presheaf():
    cov = corpus.covariant_hom(Two, "0")
    assert cov.base is Two.op()
    assert cov.sets["0"] == ("id0",) and cov.sets["1"] == ("f",)
    assert cov.act("f", "id0") == "f"
    assert validate(cov).ok


def test_category_of_elements_of_E():
    el, proj = category_of_elements(PRESHEAVES["E"])
    assert len(el.objects) == 1
    assert len(el.morphisms) == 2
    assert validate(el).ok and validate(proj).ok
    assert is_connected(el)


def test_category_of_elements_counts():
    el, _ = category_of_elements(PRESHEAVES["groupCospan"])
    assert len(el.objects) == 5
    assert len(el.morphisms) == 9
    el2, _ = category_of_elements(PRESHEAVES["zero.Two"])
    assert len(el2.objects) == 0
    assert not is_connected(el2)


def test_connectedness():
    assert is_connected(Span)
    assert is_connected(Two)
    assert not is_connected(Disc2)
    assert not is_connected(Empty)
    assert is_connected(Z2)


def test_filteredness():
    assert is_filtered(Chain3)
    assert is_filtered(N5)          # finite lattice: directed
    assert is_filtered(I)
    assert is_filtered(M)           # e coequalizes the pair (1, e)
    assert not is_filtered(Z2)      # nothing coequalizes 1 and g
    assert not is_filtered(Disc2)   # no cospans
    assert not is_filtered(Empty)
    assert not is_filtered(Par.op())


def test_functor_composition_and_identity():
    ident = identity_functor(M)
    emb = corpus.embedM
    comp = compose_functors(emb, ident)
    assert comp.obj("*") == "s1"
    assert comp.mor("e") == "s1>s1:e"
    with pytest.raises(MalformedTable):
        compose_functors(emb, corpus.orbit)


def test_same_category_is_structural():
    clone = FinCategory("Two", list(Two.objects),
                        [(m, Two.src[m], Two.tgt[m]) for m in Two.morphisms],
                        {a: Two.id_of(a) for a in Two.objects},
                        dict(Two.compose_table))
    assert same_category(Two, clone)
    assert not same_category(Two, Par)
