"""The acceptance gate: one test per criterion, each logging a PASS/FAIL line."""

import json
import random
import time
from contextlib import contextmanager
from itertools import combinations_with_replacement, product

from algset.excomp import check_bounded_quotients, ex_complete, verify_embedding
from algset.fincat import FINSET, Arrow, PresheafCategory, Subobject, sierpinski_category
from algset.logic import (
    SAMPLE_PARAMETERS,
    Environment,
    classical_truth_set,
    formula_corpus,
    kripke_joyal_eval,
    parse,
    show,
)
from algset.sheaves import fixture_sites, sheaf_category, sheafify, validate_site
from algset.smallmaps import (
    Budget,
    Outcome,
    all_maps,
    check_axiom,
    check_suite,
    even_domain,
    fibre_below,
    monos,
    replay,
)
from algset.smallmaps.verdict import verdict_from_json
from algset.wzf import FAILS, HOLDS, PolynomialSignature, build_V, check_set_axiom, set_of, wtype
from support import ACCEPTANCE_LINES, fixture_presheaves


@contextmanager
def criterion(n: int, title: str, limit: float | None = None):
    """Record the outcome of criterion ``n``; a time limit counts as part of it."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - start
        within = limit is None or dt < limit
        status = "PASS" if ok and within else "FAIL"
        bound = f" of {limit:.0f}s" if limit is not None else ""
        ACCEPTANCE_LINES[n] = f"CRITERION {n}: {status} ({dt:.1f}s{bound}) {title}"
    assert within, f"criterion {n} took {dt:.1f}s, limit {limit}s"


def positive(v):
    return v.outcome in (Outcome.PASSED_SAMPLED, Outcome.WITNESSED)


# -- 1 ---------------------------------------------------------------------------------

def test_criterion_1_axiom_suite_positive():
    with criterion(1, "all-maps class on finite sets passes the core axioms at size 4", 60):
        axioms = ["A1", "A2", "A3", "A4", "A5", "A6", "C", "PiE", "HB", "US", "BE", "M", "PE"]
        suite = check_suite(all_maps(FINSET), axioms, Budget(max_size=4))
        bad = {a: v.outcome.value for a, v in suite.items() if not positive(v)}
        assert not bad, bad
        assert all(v.instances > 0 or v.outcome is Outcome.WITNESSED
                   for a, v in suite.items() if a != "A6")


# -- 2 ---------------------------------------------------------------------------------

def test_criterion_2_axiom_suite_negative():
    with criterion(2, "expected refutations replay; no universal map for all maps", 60):
        budget = Budget(max_size=4)
        for cls, axiom in ((fibre_below(FINSET, 3), "A5"), (monos(FINSET), "A4"),
                           (even_domain(FINSET), "A2")):
            v = check_axiom(cls, axiom, budget)
            assert v.outcome is Outcome.REFUTED, (cls.label, axiom)
            assert replay(cls, v)
            assert replay(cls, verdict_from_json(json.loads(json.dumps(v.to_json()))))
            if axiom == "A5":
                f, g = v.diagram["f"], v.diagram["g"]
                assert (f.dom, f.cod, g.cod) == (4, 2, 1)

        r = check_axiom(all_maps(FINSET), "R", Budget(max_size=4, r_bound=6))
        assert r.outcome is not Outcome.WITNESSED
        # every fibre profile with at most 6 elements in total over at most 6 points
        profiles = {t for u in range(1, 7) for t in combinations_with_replacement(range(7), u)
                    if sum(t) <= 6}
        assert r.evidence["candidates"] == len(profiles)
        refuters = r.evidence["refuters"]
        assert {tuple(int(x) for x in k.strip("(,)").split(",") if x.strip()) for k in refuters} == profiles
        for key, f in refuters.items():
            sizes = {int(x) for x in key.strip("(,)").split(",") if x.strip()}
            # a map onto a point is a pullback of the candidate only if its fibre size occurs
            assert f.cod == 1 and f.dom not in sizes


# -- 3 ---------------------------------------------------------------------------------

def brute_implies(cat, X, T, U):
    """Largest S with S /\\ T <= U, by scanning the lattice."""
    best = None
    for S in cat.subobjects(X):
        if cat.sub_leq(cat.sub_meet(S, T), U) and (best is None or cat.sub_leq(best, S)):
            best = S
    return best


def test_criterion_3_heyting_kernel():
    with criterion(3, "Heyting adjunction on 200 triples; double negation moves in presheaves"):
        rng = random.Random(3)
        P = PresheafCategory(sierpinski_category())
        triples = []
        for cat, objs in ((FINSET, list(range(4))), (P, list(P.objects(3)))):
            pool = [(X, S, T, U) for X in objs
                    for S, T, U in product(list(cat.subobjects(X)), repeat=3)]
            triples += [(cat,) + t for t in rng.sample(pool, 100)]
        assert len(triples) == 200
        for cat, X, S, T, U in triples:
            imp = cat.sub_implies(T, U)
            assert imp == brute_implies(cat, X, T, U)
            assert cat.sub_leq(cat.sub_meet(S, T), U) == cat.sub_leq(S, imp)
        T1 = P.terminal()
        middle = Subobject(T1, (frozenset({0}), frozenset()))
        assert P.sub_neg(P.sub_neg(middle)) != middle


# -- 4 ---------------------------------------------------------------------------------

def test_criterion_4_kripke_joyal_against_classical():
    with criterion(4, "100 formulas agree with the classical evaluator"):
        phis = formula_corpus(seed=4, n=100)
        rng = random.Random(4)
        for phi in phis:
            n = rng.randint(1, 3)
            subs = {}
            for name, arity in (("P", 1), ("R", 2), ("E", 2)):
                size = n ** arity
                subs[name] = Subobject(size, frozenset(i for i in range(size) if rng.random() < 0.5))
            env = Environment(FINSET, {"D": n}, relations={
                "P": (("D",), subs["P"]), "R": (("D", "D"), subs["R"]),
                "E": (("D", "D"), subs["E"])}, membership="E")
            ctx = (("a", "D"), ("b", "D"))
            assert kripke_joyal_eval(phi, env, ctx) == classical_truth_set(phi, env, ctx), show(phi)


# -- 5 ---------------------------------------------------------------------------------

def test_criterion_5_wtypes():
    with criterion(5, "W-type censuses and initial-algebra uniqueness"):
        one = wtype(PolynomialSignature(FINSET, Arrow(0, 1, ())), 5, algebras=5)
        assert one.converged and one.census[-1] == 1
        empty = wtype(PolynomialSignature(FINSET, Arrow(1, 1, (0,))), 5, algebras=5)
        assert empty.converged and empty.census[-1] == 0
        nat = wtype(PolynomialSignature.from_arities(FINSET, (0, 1)), 4)
        assert nat.census[1:5] == [1, 2, 3, 4]
        for r in (one, empty):
            assert r.initial_algebra_ok and len(r.algebra_checks) == 5
            assert all(c["morphisms"] == 1 for c in r.algebra_checks)


# -- 6 ---------------------------------------------------------------------------------

def test_criterion_6_cumulative_hierarchy():
    with criterion(6, "V_0..V_4 sizes and membership from the order"):
        level, oracle = set(), [0]
        for _ in range(4):
            elems = list(level)
            level = {frozenset(e for i, e in enumerate(elems) if m >> i & 1)
                     for m in range(1 << len(elems))}
            oracle.append(len(level))
        assert [build_V(n).size for n in range(5)] == oracle == [0, 1, 2, 4, 16]
        V = build_V(4)
        assert {set_of(c) for c in V.elements()} == level
        for x, y in product(V.elements(), repeat=2):
            assert V.member(x, y) == (set_of(x) in set_of(y))


# -- 7 ---------------------------------------------------------------------------------

def test_criterion_7_set_axiom_census():
    with criterion(7, "set axioms on V_4 with headroom 1", 120):
        V = build_V(4)
        for name in ("Extensionality", "EmptySet", "Pairing", "Union", "FullSeparation", "PowerSet"):
            assert check_set_axiom(name, V, 1).status == HOLDS, name
        for name, count in (("EpsilonInduction", 3), ("BoundedSeparation", 5), ("StrongCollection", 3)):
            params = SAMPLE_PARAMETERS[name]
            assert len(params) == count
            for p in params:
                assert check_set_axiom(name, V, 1, parse(p)).status == HOLDS, (name, p)
        assert check_set_axiom("Infinity", V, 1).status == FAILS


# -- 8 ---------------------------------------------------------------------------------

def brute_unique_amalgamation(site, X):
    C = site.C
    for a in range(C.n_objects):
        for S in site.covers(a):
            arrows = sorted(S)
            for values in product(*(range(X.sizes[C.dom[f]]) for f in arrows)):
                fam = dict(zip(arrows, values))
                if not all(X.restrict[g][fam[f]] == fam[C.compose(f, g)]
                           for f in arrows for g in C.arrows_into(C.dom[f])):
                    continue
                glue = [x for x in range(X.sizes[a]) if all(X.restrict[f][x] == fam[f] for f in S)]
                if len(glue) != 1:
                    return False
    return True


def test_criterion_8_sheaves():
    with criterion(8, "coverage axioms; sheafification on 10 presheaves"):
        sites = fixture_sites()
        for name in ("trivial-sierpinski", "trivial-v", "dense-v"):
            assert all(v.passed for v in validate_site(sites[name]).values()), name
        assert not validate_site(sites["broken-L"])["L"].passed
        samples = fixture_presheaves(10)
        assert len(samples) == 10
        for site, P, X in samples:
            aX, _ = sheafify(site, X, P)
            assert brute_unique_amalgamation(site, aX)
            aaX, unit = sheafify(site, aX, P)
            assert P.is_iso(unit)


# -- 9 ---------------------------------------------------------------------------------

def test_criterion_9_pointwise_small_sheaves():
    with criterion(9, "pointwise-small sheaves on the two-object site pass the suite"):
        _, cls = sheaf_category(fixture_sites()["two-object"], all_maps(FINSET))
        budget = Budget(max_size=4)
        for ax in ("A1", "A2", "A3", "A4", "A5", "A6", "C", "HB", "US", "BE"):
            v = check_axiom(cls, ax, budget)
            assert positive(v), (ax, v.outcome.value, v.note)


# -- 10 --------------------------------------------------------------------------------

def test_criterion_10_exact_completion():
    with criterion(10, "exact completion of finite sets with the fibre<3 class", 120):
        comp = ex_complete(FINSET, fibre_below(FINSET, 3))
        rep = verify_embedding(comp, max_size=4)
        assert rep.fully_faithful and rep.subobject_bijective, rep.failures
        assert rep.smallness_preserved_and_reflected, rep.failures
        assert rep.ok, rep.failures
        quotients = check_bounded_quotients(comp, max_size=3)
        assert quotients["relations"] > 0 and quotients["ok"], quotients["failures"]
