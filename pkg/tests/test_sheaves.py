from itertools import product

import pytest

from algset.errors import MalformedInput, ParseError, PreconditionError
from algset.fincat import FINSET, PresheafCategory
from algset.sheaves import (
    SheafCategory,
    all_sieves,
    bounded_cov_check,
    broken_stability_site,
    dense_site,
    dump_site,
    fixture_sites,
    is_separated,
    is_sheaf,
    is_sieve,
    load_site,
    matching_families,
    pointwise_small,
    sheaf_category,
    sheafify,
    trivial_site,
    two_object_site,
    v_poset,
    validate_site,
)
from algset.smallmaps import all_maps, fibre_below
from support import fixture_presheaves


def brute_matching_families(site, X, a, S):
    """Every assignment over S, kept when X(g) x_f = x_(fg) for all g into dom f."""
    C = site.C
    arrows = sorted(S)
    out = []
    for values in product(*(range(X.sizes[C.dom[f]]) for f in arrows)):
        fam = dict(zip(arrows, values))
        if all(X.restrict[g][fam[f]] == fam[C.compose(f, g)]
               for f in arrows for g in C.arrows_into(C.dom[f])):
            out.append(fam)
    return out


def brute_amalgamations(X, S, fam, a):
    return [x for x in range(X.sizes[a]) if all(X.restrict[f][x] == fam[f] for f in S)]


def brute_is_sheaf(site, X):
    return all(len(brute_amalgamations(X, S, fam, a)) == 1
               for a in range(site.C.n_objects) for S in site.covers(a)
               for fam in brute_matching_families(site, X, a, S))


def isomorphic(P, A, B):
    return any(P.is_iso(f) for f in P.hom(A, B))


# -- sites -----------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["trivial-sierpinski", "trivial-v", "dense-v", "two-object"])
def test_fixture_sites_satisfy_the_coverage_axioms(name):
    verdicts = validate_site(fixture_sites()[name])
    assert all(v.passed for v in verdicts.values())


def test_broken_site_fails_stability_only():
    v = validate_site(broken_stability_site())
    assert not v["L"].passed and v["L"].witness["arrow"] == "u"
    assert v["M"].passed


def test_dense_topology_on_v():
    site = dense_site(v_poset())
    t = site.C.object_index("t")
    assert len(site.covers(t)) == 2
    assert bounded_cov_check(site)


def test_sieves_are_closed_under_precomposition():
    C = v_poset()
    for a in range(C.n_objects):
        for S in all_sieves(C, a):
            assert is_sieve(C, a, S)


def test_site_text_round_trip():
    for site in fixture_sites().values():
        assert load_site(dump_site(site), site.name) == site


def test_site_parse_errors():
    with pytest.raises(ParseError):
        load_site("objects: a\ncover b: {id_a}\n")
    with pytest.raises(MalformedInput):
        load_site("objects: a\n")


def test_non_sieve_cover_is_rejected():
    site = trivial_site(v_poset())
    t = site.C.object_index("t")
    lone = frozenset({site.C.arrow_index("id_t")})  # misses the arrows factoring through id_t
    cov = tuple(c | {lone} if a == t else c for a, c in enumerate(site.cov))
    bad = type(site)(site.C, cov, None, "bad")
    with pytest.raises(MalformedInput):
        validate_site(bad)


# -- sheafification --------------------------------------------------------------------

SAMPLES = fixture_presheaves()


def test_there_are_ten_samples():
    assert len(SAMPLES) == 10


@pytest.mark.parametrize("site,P,X", SAMPLES, ids=[f"{s.name}-{i}" for i, (s, _, _) in enumerate(SAMPLES)])
def test_matching_families_match_brute_force(site, P, X):
    for a in range(site.C.n_objects):
        for S in site.covers(a):
            fast = sorted(tuple(sorted(f.items())) for f in matching_families(site, X, a, S))
            slow = sorted(tuple(sorted(f.items())) for f in brute_matching_families(site, X, a, S))
            assert fast == slow
    assert is_sheaf(site, X) == brute_is_sheaf(site, X)


@pytest.mark.parametrize("site,P,X", SAMPLES, ids=[f"{s.name}-{i}" for i, (s, _, _) in enumerate(SAMPLES)])
def test_associated_sheaf_has_unique_amalgamation(site, P, X):
    aX, unit = sheafify(site, X, P)
    assert brute_is_sheaf(site, aX)
    aaX, unit2 = sheafify(site, aX, P)
    assert P.is_iso(unit2) and isomorphic(P, aX, aaX)
    if brute_is_sheaf(site, X):
        assert P.is_iso(unit)


def test_separated_presheaf_gains_a_point():
    site = two_object_site()
    P = PresheafCategory(site.C)
    X = P.presheaf((1, 2), {"u": [0]})
    assert is_separated(site, X) and not is_sheaf(site, X)
    aX, unit = sheafify(site, X, P)
    assert aX.sizes == (2, 2) and P.is_mono(unit)


def test_collapsing_presheaf_is_not_separated():
    site = two_object_site()
    P = PresheafCategory(site.C)
    X = P.presheaf((2, 1), {"u": [0, 0]})
    assert not is_separated(site, X)
    aX, unit = sheafify(site, X, P)
    assert aX.sizes == (1, 1) and not P.is_mono(unit)


def test_maps_into_sheaves_extend_uniquely():
    site = two_object_site()
    S = SheafCategory(site)
    P = S.P
    X = P.presheaf((1, 2), {"u": [0]})
    aX, unit = S.associated(X)
    for Y in S.objects(3):
        ext = [g for g in P.hom(aX, Y)]
        for f in P.hom(X, Y):
            assert sum(P.compose(g, unit) == f for g in ext) == 1


# -- the category of sheaves -----------------------------------------------------------

def test_closure_is_a_closure_operator():
    site = two_object_site()
    S = SheafCategory(site)
    for X in S.P.objects(3):
        for A in S.P.subobjects(X):
            c = S.closure(A)
            assert S.P.sub_leq(A, c) and S.closure(c) == c


def test_closed_subobjects_of_sheaves_form_a_heyting_algebra():
    S = SheafCategory(two_object_site())
    for X in S.objects(3):
        subs = list(S.subobjects(X))
        for A, B, C in product(subs, repeat=3):
            assert S.is_closed(S.sub_implies(A, B))
            assert S.sub_leq(S.sub_meet(A, B), C) == S.sub_leq(A, S.sub_implies(B, C))


def test_sheaf_coproducts_are_sheaves():
    S = SheafCategory(two_object_site())
    objs = list(S.objects(2))
    for A in objs:
        for B in objs:
            Sum, i1, i2 = S.coproduct(A, B)
            assert S.is_sheaf(Sum)


def test_pointwise_class_reads_components():
    site = two_object_site()
    S = SheafCategory(site)
    cls = pointwise_small(S, fibre_below(FINSET, 2))
    for X in S.objects(3):
        f = S.terminal_arrow(X)
        assert cls.contains(f) == all(n <= 1 for n in X.sizes)


def test_sheaf_category_rejects_a_base_without_dependent_products():
    with pytest.raises(PreconditionError):
        sheaf_category(two_object_site(), fibre_below(FINSET, 3))


def test_sheaf_category_needs_a_basis():
    with pytest.raises(PreconditionError):
        sheaf_category(broken_stability_site(), all_maps(FINSET))
