from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algset.errors import CompositionError, ParseError, ResourceBoundError, UnsupportedStructure
from algset.fincat import (
    FINSET,
    Arrow,
    Subobject,
    compose,
    dump_category,
    forall_along,
    image_factorization,
    load_category,
    pullback,
    sierpinski_category,
    subobject_lattice,
)
from algset.fincat.base import AmbientCategory


def arrows(max_dom=4, max_cod=4):
    @st.composite
    def build(draw):
        d = draw(st.integers(0, max_dom))
        c = draw(st.integers(1 if d else 0, max_cod))
        table = draw(st.lists(st.integers(0, c - 1), min_size=d, max_size=d)) if c else []
        return Arrow(d, c, tuple(table))
    return build()


# -- compose ---------------------------------------------------------------------------

def test_identity_is_a_unit():
    f = Arrow(3, 2, (0, 1, 1))
    assert compose(FINSET.identity(2), f) == f
    assert compose(f, FINSET.identity(3)) == f


def test_composite_is_the_table_composite():
    g = Arrow(3, 2, (1, 0, 1))
    f = Arrow(2, 1, (0, 0))
    assert compose(f, g) == Arrow(3, 1, (0, 0, 0))
    h = Arrow(2, 3, (2, 0))
    assert compose(g, h) == Arrow(2, 2, (1, 1))


def test_mismatched_endpoints_raise():
    with pytest.raises(CompositionError):
        compose(Arrow(2, 1, (0, 0)), Arrow(3, 3, (0, 1, 2)))


@given(arrows(), st.data())
def test_composition_is_associative(f, data):
    c1 = f.cod
    t1 = data.draw(st.integers(1, 3))
    g = Arrow(c1, t1, tuple(data.draw(st.lists(st.integers(0, t1 - 1), min_size=c1, max_size=c1))))
    t2 = data.draw(st.integers(1, 3))
    h = Arrow(t1, t2, tuple(data.draw(st.lists(st.integers(0, t2 - 1), min_size=t1, max_size=t1))))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


# -- pullbacks -------------------------------------------------------------------------

def test_pullback_over_the_terminal_is_the_product():
    P, a, b = pullback(Arrow(2, 1, (0, 0)), Arrow(3, 1, (0, 0, 0)))
    assert P == 6


def test_pullback_along_identity():
    g = Arrow(3, 2, (0, 1, 1))
    P, _, _ = pullback(FINSET.identity(2), g)
    assert P == g.dom


def test_disjoint_points_have_empty_pullback():
    P, _, _ = pullback(Arrow(1, 2, (0,)), Arrow(1, 2, (1,)))
    assert P == 0


def brute_force_pullback_size(f, g):
    return sum(1 for x in range(f.dom) for y in range(g.dom) if f.data[x] == g.data[y])


@given(arrows(3, 3), st.data())
def test_pullback_matches_pairs_and_is_universal(f, data):
    n = f.cod
    d = data.draw(st.integers(0, 3)) if n else 0
    g = Arrow(d, n, tuple(data.draw(st.lists(st.integers(0, n - 1), min_size=d, max_size=d))) if n else ())
    P, a, b = FINSET.pullback(f, g)
    assert P == brute_force_pullback_size(f, g)
    assert compose(f, a) == compose(g, b)
    assert FINSET.check_pullback_universal(f, g, range(3))


def test_pullback_needs_finite_limits():
    class Bare(AmbientCategory):
        name = "bare"
    with pytest.raises(UnsupportedStructure):
        pullback(Arrow(1, 1, (0,)), Arrow(1, 1, (0,)), Bare())


# -- images ----------------------------------------------------------------------------

def test_constant_map_image_is_a_point():
    e, m = image_factorization(Arrow(3, 2, (0, 0, 0)))
    assert (e.dom, e.cod, m.dom, m.cod) == (3, 1, 1, 2)
    assert m.data == (0,)


def test_identity_factors_as_identities():
    e, m = image_factorization(FINSET.identity(3))
    assert e == FINSET.identity(3) and m == FINSET.identity(3)


@given(arrows())
def test_image_factorization_recomposes(f):
    e, m = image_factorization(f)
    assert compose(m, e) == f
    assert FINSET.is_cover(e) and FINSET.is_mono(m)


def test_presheaf_image_is_componentwise(arrow_cat):
    P = arrow_cat
    # brute force: componentwise images, then check closure under restriction
    for X in P.objects(3):
        for Y in P.objects(3):
            for f in P.hom(X, Y):
                e, m = P.image_factorization(f)
                assert P.compose(m, e) == f
                assert P.is_mono(m) and P.is_cover(e)
                image = tuple(frozenset(comp) for comp in f.data)
                assert P.sub_of_mono(m).data == image
                assert P.is_subpresheaf(Subobject(Y, image))


def test_covers_are_stable_under_pullback():
    for p in FINSET.hom(3, 2):
        if not FINSET.is_cover(p):
            continue
        for A in range(4):
            for g in FINSET.hom(A, 2):
                _, _, q = FINSET.pullback(p, g)
                assert FINSET.is_cover(q)


# -- subobject lattices ----------------------------------------------------------------

def test_subobjects_of_three_form_the_powerset():
    L = subobject_lattice(3)
    assert len(L) == 8 and L.is_boolean()


def test_terminal_presheaf_has_a_three_element_chain(arrow_cat):
    P = arrow_cat
    T = P.terminal()
    L = subobject_lattice(T, P)
    # brute force: pairs of stage subsets closed under restriction
    brute = [s for s in product([frozenset(), frozenset({0})], repeat=2)
             if not (s[1] and not s[0])]
    assert len(L) == len(brute) == 3
    assert L.is_chain() and not L.is_boolean()


def test_empty_object_has_a_one_element_lattice():
    assert len(subobject_lattice(0)) == 1


def test_lattice_limit():
    with pytest.raises(ResourceBoundError):
        subobject_lattice(5, limit=10)


def test_middle_subobject_is_not_regular(arrow_cat):
    P = arrow_cat
    T = P.terminal()
    middle = Subobject(T, (frozenset({0}), frozenset()))
    assert P.sub_neg(P.sub_neg(middle)) != middle
    assert P.sub_neg(P.sub_neg(middle)) == P.sub_top(T)


def subsets(n):
    return [Subobject(n, frozenset(i for i in range(n) if m >> i & 1)) for m in range(1 << n)]


@given(st.integers(0, 4), st.data())
def test_heyting_adjunction_in_finite_sets(n, data):
    S, T, U = (data.draw(st.sampled_from(subsets(n))) for _ in range(3))
    lhs = FINSET.sub_leq(FINSET.sub_meet(S, T), U)
    rhs = FINSET.sub_leq(S, FINSET.sub_implies(T, U))
    assert lhs == rhs


def test_heyting_adjunction_in_presheaves(arrow_cat):
    P = arrow_cat
    for X in P.objects(3):
        subs = list(P.subobjects(X))
        for S, T, U in product(subs, repeat=3):
            assert P.sub_leq(P.sub_meet(S, T), U) == P.sub_leq(S, P.sub_implies(T, U))


def test_finite_set_lattices_are_boolean():
    for n in range(5):
        assert subobject_lattice(n).is_boolean()


def test_pullback_preserves_lattice_operations(arrow_cat):
    for cat, objs in ((FINSET, range(4)), (arrow_cat, list(arrow_cat.objects(2)))):
        for X in objs:
            for Y in objs:
                for f in cat.hom(X, Y):
                    subs = list(cat.subobjects(Y))
                    assert cat.sub_pullback(f, cat.sub_top(Y)) == cat.sub_top(X)
                    assert cat.sub_pullback(f, cat.sub_bottom(Y)) == cat.sub_bottom(X)
                    for S, T in product(subs, repeat=2):
                        for op in (cat.sub_meet, cat.sub_join, cat.sub_implies):
                            assert cat.sub_pullback(f, op(S, T)) == \
                                op(cat.sub_pullback(f, S), cat.sub_pullback(f, T))


# -- universal quantification ----------------------------------------------------------

def test_forall_of_true_is_true():
    f = FINSET.terminal_arrow(3)
    assert forall_along(f, FINSET.sub_top(3)) == FINSET.sub_top(1)


def test_forall_of_a_proper_subset_is_false():
    f = Arrow(2, 1, (0, 0))
    assert forall_along(f, Subobject(2, frozenset({0}))) == FINSET.sub_bottom(1)


def brute_forall(cat, f, S):
    """Join of every T with f*T <= S."""
    good = [T for T in cat.subobjects(f.cod) if cat.sub_leq(cat.sub_pullback(f, T), S)]
    out = cat.sub_bottom(f.cod)
    for T in good:
        out = cat.sub_join(out, T)
    return out


def test_presheaf_forall_differs_from_image_complement(arrow_cat):
    P = arrow_cat
    differs = False
    for X in P.objects(3):
        for Y in P.objects(2):
            for f in P.hom(X, Y):
                for S in P.subobjects(X):
                    A = forall_along(f, S, P)
                    assert A == brute_forall(P, f, S)
                    for T in P.subobjects(Y):
                        assert P.sub_leq(P.sub_pullback(f, T), S) == P.sub_leq(T, A)
                    complement = P.sub_neg(P.sub_image(f, P.sub_neg(S)))
                    differs |= complement != A
    assert differs


# -- coproducts and text format --------------------------------------------------------

def test_coproducts_are_disjoint_and_stable():
    S, i1, i2 = FINSET.coproduct(2, 3)
    P, _, _ = FINSET.pullback(i1, i2)
    assert S == 5 and P == 0
    for g in FINSET.hom(2, 5):
        Q1, _, _ = FINSET.pullback(i1, g)
        Q2, _, _ = FINSET.pullback(i2, g)
        assert Q1 + Q2 == 2


def test_category_text_round_trip():
    C = sierpinski_category()
    assert load_category(dump_category(C)) == C


def test_category_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        load_category("objects: a b\narrow u b -> a\n")
    assert err.value.line == 2
