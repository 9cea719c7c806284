from itertools import chain, combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algset.errors import ResourceBoundError
from algset.fincat import FINSET, Arrow
from algset.logic import parse
from algset.wzf import (
    FAILS,
    HOLDS,
    OUT_OF_HEADROOM,
    PolynomialSignature,
    WTree,
    bisim_quotient,
    build_V,
    check_set_axiom,
    check_zf_laws,
    code_of,
    embedding_coherent,
    polynomial_apply,
    polynomial_elements,
    set_of,
    show_set,
    wtype,
)


def powerset(s):
    s = list(s)
    return {frozenset(c) for c in chain.from_iterable(combinations(s, k) for k in range(len(s) + 1))}


def hierarchy_oracle(n):
    """V_0 = {}, V_{k+1} = P(V_k) on Python frozensets."""
    V = set()
    out = [V]
    for _ in range(n):
        V = powerset(V)
        out.append(V)
    return out


# -- polynomial functors ---------------------------------------------------------------

@given(st.lists(st.integers(0, 3), min_size=1, max_size=3), st.integers(0, 3))
def test_polynomial_functor_counts(arities, Z):
    sig = PolynomialSignature.from_arities(FINSET, arities)
    expected = sum(Z ** n for n in arities)
    assert polynomial_apply(sig, Z) == expected
    assert len(polynomial_elements(sig, Z)) == expected


def test_polynomial_arities_follow_the_fibres():
    sig = PolynomialSignature(FINSET, Arrow(3, 2, (1, 1, 0)))
    assert sig.arities == (1, 2)


def test_polynomial_element_limit():
    sig = PolynomialSignature.from_arities(FINSET, (6,))
    with pytest.raises(ResourceBoundError):
        polynomial_elements(sig, 10, limit=100)


# -- W-types ---------------------------------------------------------------------------

def test_nullary_signature_has_one_tree():
    r = wtype(PolynomialSignature(FINSET, Arrow(0, 1, ())), 5)
    assert r.converged and r.census[-1] == 1 and r.initial_algebra_ok


def test_unary_only_signature_is_empty():
    r = wtype(PolynomialSignature(FINSET, Arrow(1, 1, (0,))), 5)
    assert r.converged and r.census[-1] == 0 and r.trees == ()


def test_natural_numbers_grow_by_one():
    r = wtype(PolynomialSignature.from_arities(FINSET, (0, 1)), 4)
    assert r.census[1:] == [1, 2, 3, 4]
    assert not r.converged


def test_binary_trees_census():
    # t_{k+1} = 1 + t_k^2
    r = wtype(PolynomialSignature.from_arities(FINSET, (0, 2)), 4)
    assert r.census == [0, 1, 2, 5, 26]


def brute_force_mediators(sig, trees, Z, alpha):
    """Count maps h: W -> Z with h(sup(y, t)) = alpha(y, h . t), by recursion on trees."""
    def fold(t):
        return alpha[(t.root, tuple(fold(c) for c in t.children))]
    return {t: fold(t) for t in trees}


def test_initial_algebra_mediators_are_the_folds():
    sig = PolynomialSignature(FINSET, Arrow(0, 2, ()))
    r = wtype(sig, 3, algebras=5, seed=11)
    assert r.converged and r.initial_algebra_ok
    assert len(r.algebra_checks) == 5
    assert all(c["morphisms"] == 1 for c in r.algebra_checks)
    alpha = {(0, ()): 1, (1, ()): 0}
    assert brute_force_mediators(sig, r.trees, 2, alpha) == {WTree(0): 1, WTree(1): 0}


def test_bisimulation_forgets_order_and_repeats():
    leaf = WTree(0)
    one = WTree(1, (leaf,))
    trees = [WTree(2, (leaf, one)), WTree(2, (one, leaf)), WTree(2, (leaf, leaf)), one]
    q = bisim_quotient(trees)
    assert len(q) == 2


# -- hereditarily finite sets ----------------------------------------------------------

@given(st.integers(0, 2 ** 16 - 1))
def test_codes_round_trip(n):
    assert code_of(set_of(n)) == n


def test_show_set():
    assert show_set(0) == "{}"
    assert show_set(3) == "{{}, {{}}}"


def test_build_V_matches_the_powerset_iteration():
    oracle = hierarchy_oracle(4)
    for n in range(5):
        V = build_V(n)
        assert V.size == len(oracle[n])
        assert {set_of(c) for c in V.elements()} == oracle[n]
    assert [build_V(n).size for n in range(5)] == [0, 1, 2, 4, 16]


def test_membership_from_the_order_is_extensional():
    V = build_V(4)
    for x in V.elements():
        for y in V.elements():
            assert V.member(x, y) == (set_of(x) in set_of(y))


def test_zf_algebra_laws():
    assert all(check_zf_laws(build_V(4)).values())


def test_truncations_embed_coherently():
    for n in range(4):
        assert embedding_coherent(build_V(n), build_V(n + 1))


def test_successor_leaves_the_truncation():
    V = build_V(3)
    assert V.succ(3) is None
    assert V.succ(1) == 2


def test_rank_limit():
    with pytest.raises(ResourceBoundError):
        build_V(5, limit=1000)


# -- set axioms ------------------------------------------------------------------------

@pytest.fixture(scope="module")
def V4():
    return build_V(4)


@pytest.mark.parametrize("name", ["Extensionality", "EmptySet", "Pairing", "Union", "PowerSet",
                                  "FullSeparation", "EpsilonInduction", "BoundedSeparation",
                                  "StrongCollection"])
def test_set_axioms_hold_with_headroom(V4, name):
    assert check_set_axiom(name, V4, 1).status == HOLDS


def test_infinity_fails_in_every_truncation(V4):
    assert check_set_axiom("Infinity", V4, 0).status == FAILS


def test_pairing_needs_headroom():
    V = build_V(3)
    assert check_set_axiom("Pairing", V, 0).status == OUT_OF_HEADROOM
    v = check_set_axiom("Pairing", V, 0, enforce_headroom=False)
    assert v.status == FAILS and v.witnesses


def test_separation_with_an_explicit_parameter(V4):
    phi = parse("exists z in y. z = z")
    assert check_set_axiom("BoundedSeparation", V4, 1, phi).status == HOLDS


def test_fullness_is_out_of_headroom_at_rank_four(V4):
    assert check_set_axiom("Fullness", V4, 1).status == OUT_OF_HEADROOM


def test_verdict_json(V4):
    record = check_set_axiom("EmptySet", V4, 1).to_json()
    assert record["status"] == HOLDS and record["rank"] == 4
