import json

import pytest

from algset.errors import MalformedInput, PreconditionError
from algset.fincat import FINSET, Arrow, Subobject
from algset.logic import Environment, parse
from algset.smallmaps import (
    Budget,
    Outcome,
    all_maps,
    bounded_separation_check,
    builtin_class,
    check_axiom,
    check_suite,
    even_domain,
    fibre_below,
    load_class,
    monos,
    omega_b,
    power_class,
    replay,
    separation_violations,
    slice_class,
)
from algset.smallmaps.verdict import verdict_from_json

SMALL = Budget(max_size=3)


# -- classes ---------------------------------------------------------------------------

def test_fibre_class_membership():
    f3 = fibre_below(FINSET, 3)
    assert f3.contains(Arrow(2, 1, (0, 0)))
    assert not f3.contains(Arrow(3, 1, (0, 0, 0)))


def test_builtin_names_resolve():
    for name in ("all", "mono", "even-domain", "fibre<2"):
        assert builtin_class(FINSET, name).label == name
    with pytest.raises(MalformedInput):
        builtin_class(FINSET, "finite")


def test_class_files():
    c = load_class(FINSET, json.dumps({"name": "ones", "fibre_sizes": [0, 1]}))
    assert c.contains(Arrow(1, 2, (1,))) and not c.contains(Arrow(2, 1, (0, 0)))
    t = load_class(FINSET, json.dumps({"arrows": [[1, 1, [0]]]}))
    assert t.contains(Arrow(1, 1, (0,))) and not t.contains(Arrow(0, 1, ()))
    with pytest.raises(MalformedInput):
        load_class(FINSET, "{}")


def test_small_objects_and_bounded_subobjects():
    f2 = fibre_below(FINSET, 2)
    assert f2.is_small_object(1) and not f2.is_small_object(2)
    assert monos(FINSET).is_bounded(Subobject(3, frozenset({0, 2})))


# -- positive checks -------------------------------------------------------------------

@pytest.mark.parametrize("axiom", ["A1", "A2", "A3", "A4", "A5", "A6", "C", "HB", "US", "BE", "M"])
def test_all_maps_pass_at_small_budget(axiom):
    v = check_axiom(all_maps(FINSET), axiom, SMALL)
    assert v.outcome.positive, v.note


def test_fibre_below_three_is_stable_under_pullback_and_sums():
    cls = fibre_below(FINSET, 3)
    suite = check_suite(cls, ["A1", "A2", "A3", "A4"], SMALL)
    assert all(v.outcome.positive for v in suite.values())


def test_unicode_axiom_names_are_accepted():
    assert check_axiom(all_maps(FINSET), "ΠE", Budget(max_size=2)).axiom == "PiE"


def test_unknown_axiom_is_rejected():
    with pytest.raises(MalformedInput):
        check_axiom(all_maps(FINSET), "Z9")


def test_negative_budget_is_rejected():
    with pytest.raises(ValueError):
        Budget(max_size=-1)


# -- refutations -----------------------------------------------------------------------

@pytest.mark.parametrize("cls,axiom", [
    (fibre_below(FINSET, 3), "A5"),
    (monos(FINSET), "A4"),
    (even_domain(FINSET), "A2"),
])
def test_expected_refutations_replay(cls, axiom):
    v = check_axiom(cls, axiom, SMALL)
    assert v.outcome is Outcome.REFUTED
    assert replay(cls, v)


def test_composite_of_two_fibre_two_maps_escapes_fibre_three():
    cls = fibre_below(FINSET, 3)
    v = check_axiom(cls, "A5", Budget(max_size=4))
    g, f = v.diagram["g"], v.diagram["f"]
    assert cls.contains(f) and cls.contains(g)
    assert not cls.contains(FINSET.compose(g, f))


def test_refutation_replays_from_json():
    cls = monos(FINSET)
    v = check_axiom(cls, "A4", SMALL)
    record = json.loads(json.dumps(v.to_json()))
    assert replay(cls, verdict_from_json(record))


def test_tampered_evidence_does_not_replay():
    cls = monos(FINSET)
    v = check_axiom(cls, "A4", SMALL)
    v.diagram["map"] = FINSET.identity(2)
    assert not replay(cls, v)


def test_passing_verdicts_cannot_be_replayed():
    cls = all_maps(FINSET)
    with pytest.raises(PreconditionError):
        replay(cls, check_axiom(cls, "A1", Budget(max_size=2)))


def test_representability_is_inconclusive_for_all_maps():
    v = check_axiom(all_maps(FINSET), "R", Budget(max_size=2, r_bound=4))
    assert v.outcome is Outcome.INCONCLUSIVE


def test_fibre_bounded_class_is_representable():
    v = check_axiom(fibre_below(FINSET, 2), "R", Budget(max_size=2))
    assert v.outcome is Outcome.WITNESSED


# -- power classes, slices, separation -------------------------------------------------

def test_power_class_counts_small_subsets():
    data = power_class(fibre_below(FINSET, 2), 3)
    assert data.power == 4  # the empty set and three singletons
    assert power_class(all_maps(FINSET), 3).power == 8


def test_bounded_truth_values():
    assert omega_b(all_maps(FINSET)).power == 2


def test_slice_class_inherits_membership():
    sc = slice_class(fibre_below(FINSET, 2), 1)
    p = Arrow(2, 1, (0, 0))
    S = sc.category
    homs = list(S.hom(p, p))
    assert len(homs) == 4
    assert [sc.contains(u) for u in homs].count(True) == 2  # the bijections
    v = check_axiom(sc, "A1", Budget(max_size=2))
    assert v.outcome.positive


def test_bounded_separation_for_a_decidable_formula():
    env = Environment(FINSET, {"X": 3}, relations={"P": (("X",), Subobject(3, frozenset({1})))})
    assert bounded_separation_check(all_maps(FINSET), parse("P(x)"), 3, env)


def test_separation_rejects_unbounded_quantifiers():
    cls = fibre_below(FINSET, 2)
    env = Environment(FINSET, {"X": 3}, variables={"x": "X"})
    phi = parse("exists y. x = y")
    assert separation_violations(cls, phi, env)
    with pytest.raises(PreconditionError):
        bounded_separation_check(cls, phi, 3, env)
