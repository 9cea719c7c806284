import json

import pytest

from algset.errors import InconclusiveError, MalformedInput, PreconditionError, UnsupportedStructure
from algset.excomp import (
    CompletedClass,
    ExCategory,
    check_bounded_quotients,
    ex_complete,
    fibre_class_census,
    quotient_in_completion,
    replay_witness,
    verify_embedding,
)
from algset.excomp.completion import relation_from_labels
from algset.fincat import FINSET, Arrow, PresheafCategory, Subobject, sierpinski_category
from algset.smallmaps import all_maps, even_domain, fibre_below, monos


@pytest.fixture(scope="module")
def ex():
    return ExCategory(FINSET)


def all_morphisms(ex, max_size):
    objs = list(ex.objects(max_size))
    for A in objs:
        for B in objs:
            yield from ex.hom(A, B)


# -- the category of setoids -----------------------------------------------------------

def test_representable_hom_sets(ex):
    assert len(list(ex.hom(ex.y(2), ex.y(3)))) == 9


def test_subobjects_of_a_representable(ex):
    assert len(list(ex.subobjects(ex.y(2)))) == 4


def test_hom_matches_functional_relations(ex):
    for A in ex.objects(3):
        for B in ex.objects(2):
            assert set(ex.hom(A, B)) == set(ex.functional_relations(A, B))


def test_objects_up_to_size_three(ex):
    # setoids with carrier n: one per set partition (Bell numbers 1, 1, 2, 5)
    assert len(list(ex.objects(3))) == 1 + 1 + 2 + 5


def test_quotient_of_two_by_everything_is_a_point(ex):
    A = ex.y(2)
    S = relation_from_labels((0, 0))
    q = ex.quotient(A, S)
    assert q.cod.n_classes == 1 and ex.is_cover(q) and ex.is_exact(A, S, q)
    assert ex.find_iso(q.cod, ex.y(1)) is not None


def test_quotient_by_the_diagonal_is_an_iso(ex):
    A = ex.y(3)
    q = ex.quotient(A, relation_from_labels((0, 1, 2)))
    assert ex.is_iso(q)


def test_non_equivalence_is_rejected(ex):
    A = ex.y(2)
    comp = ex_complete(FINSET, all_maps(FINSET), check_base=False)
    with pytest.raises(PreconditionError):
        quotient_in_completion(comp, A, Subobject(4, frozenset({0, 1})))


def test_compose_and_identity(ex):
    for F in all_morphisms(ex, 2):
        assert ex.compose(F, ex.identity(F.dom)) == F
        assert ex.compose(ex.identity(F.cod), F) == F


def test_pullback_is_universal(ex):
    A, B = ex.from_labels((0, 0, 1)), ex.y(2)
    for F in ex.hom(A, B):
        for G in ex.hom(ex.y(1), B):
            P, p1, p2 = ex.pullback(F, G)
            assert ex.compose(F, p1) == ex.compose(G, p2)
            for T in ex.objects(2):
                for a in ex.hom(T, A):
                    for b in ex.hom(T, G.dom):
                        if ex.compose(F, a) == ex.compose(G, b):
                            assert len(ex.mediators(T, (p1, p2), (a, b))) == 1


def test_morphism_needs_a_functional_relation(ex):
    with pytest.raises(MalformedInput):
        ex.morphism(ex.y(1), ex.y(2), [(0, 0), (0, 1)])


def test_only_finite_sets_are_completed():
    with pytest.raises(UnsupportedStructure):
        ExCategory(PresheafCategory(sierpinski_category()))


# -- the completed class ---------------------------------------------------------------

@pytest.mark.parametrize("k", [2, 3])
def test_fibre_class_matches_the_census_oracle(ex, k):
    cls = CompletedClass(ex, fibre_below(FINSET, k))
    for F in all_morphisms(ex, 3):
        assert cls.contains(F) == all(n < k for n in fibre_class_census(F))


def test_mono_class_matches_the_census_oracle(ex):
    cls = CompletedClass(ex, monos(FINSET))
    for F in all_morphisms(ex, 3):
        assert cls.contains(F) == ex.is_mono(F) == all(n <= 1 for n in fibre_class_census(F))


def test_witnesses_replay(ex):
    cls = CompletedClass(ex, fibre_below(FINSET, 3))
    for F in all_morphisms(ex, 3):
        w = cls.witness(F)
        if w is not None:
            assert all(replay_witness(ex, cls, F, w).values())
            assert json.loads(json.dumps(w.to_json()))["f"] == list(w.f.data)


def test_even_domain_uses_the_exhaustive_search(ex):
    cls = CompletedClass(ex, even_domain(FINSET))
    for f in (Arrow(2, 1, (0, 0)), Arrow(1, 1, (0,)), Arrow(0, 1, ()), Arrow(3, 2, (0, 0, 1))):
        F = ex.y_arrow(f)
        w = cls.witness(F)
        assert (w is not None) == (f.dom % 2 == 0)
        if w is not None:
            assert all(replay_witness(ex, cls, F, w).values())


def test_search_ceiling(ex):
    cls = CompletedClass(ex, even_domain(FINSET), ceiling=3)
    with pytest.raises(InconclusiveError):
        cls.witness(ex.y_arrow(Arrow(3, 3, (0, 1, 2))))


def test_smallness_is_preserved_and_reflected(ex):
    cls = CompletedClass(ex, fibre_below(FINSET, 3))
    for X in range(4):
        for Y in range(4):
            for f in FINSET.hom(X, Y):
                assert cls.contains(ex.y_arrow(f)) == cls.base.contains(f)


# -- the construction ------------------------------------------------------------------

def test_base_checks_are_recorded():
    comp = ex_complete(FINSET, fibre_below(FINSET, 3))
    assert comp.base_checks["A1"] in ("PASSED-SAMPLED", "WITNESSED")
    assert comp.base_checks["A5"] == "REFUTED"


def test_strict_mode_rejects_a_refuted_base():
    with pytest.raises(PreconditionError):
        ex_complete(FINSET, fibre_below(FINSET, 3), strict=True)


def test_embedding_at_size_three():
    rep = verify_embedding(ex_complete(FINSET, fibre_below(FINSET, 3), check_base=False), 3)
    assert rep.ok, rep.failures
    assert rep.to_json()["counts"]["objects"] == 9


def test_bounded_quotients_are_stable():
    comp = ex_complete(FINSET, fibre_below(FINSET, 3), check_base=False)
    out = check_bounded_quotients(comp, 2)
    assert out["ok"] and out["relations"] > 0
