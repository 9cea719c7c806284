import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algset.errors import MalformedInput, ParseError, PreconditionError
from algset.fincat import FINSET, Subobject
from algset.logic import (
    SAMPLE_PARAMETERS,
    SCHEMAS,
    And,
    Environment,
    Forall,
    classical_truth_set,
    formula_corpus,
    free_vars,
    holds,
    instantiate_schema,
    is_bounded,
    kripke_joyal_eval,
    parse,
    parse_document,
    random_formula,
    schema_instance,
    show,
)


def random_env(seed, n=3):
    rng = random.Random(seed)
    def rand_sub(size):
        return Subobject(size, frozenset(i for i in range(size) if rng.random() < 0.5))
    return Environment(FINSET, {"D": n}, relations={
        "P": (("D",), rand_sub(n)),
        "R": (("D", "D"), rand_sub(n * n)),
        "E": (("D", "D"), rand_sub(n * n)),
    }, membership="E", variables={"a": "D", "b": "D"})


# -- syntax ----------------------------------------------------------------------------

@given(st.integers(0, 10_000), st.integers(0, 4))
def test_show_then_parse_is_identity(seed, depth):
    phi = random_formula(random.Random(seed), ["a", "b"], {"P": 1, "R": 2}, depth)
    assert parse(show(phi)) == phi


def test_precedence():
    phi = parse("a = a /\\ b = b \\/ a = b -> true")
    assert show(phi) == "(((a = a /\\ b = b) \\/ a = b) -> true)"
    assert parse("forall x. x = x /\\ true") == Forall("x", None, And(parse("x = x"), parse("true")))


def test_implication_associates_to_the_right():
    assert parse("true -> false -> true") == parse("true -> (false -> true)")


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse("forall x.\n  x = ")
    assert (err.value.line, err.value.column) == (2, 7)
    with pytest.raises(ParseError) as err:
        parse("a = $")
    assert err.value.column == 5


def test_document_sort_checking():
    doc = parse_document("sort S T\nrelation P : S\nvar a : S\nvar b : T\n---\nP(a)")
    assert doc.signature.variables == {"a": "S", "b": "T"}
    with pytest.raises(ParseError) as err:
        parse_document("sort S T\nrelation P : S\nvar a : S\nvar b : T\n---\nP(b)")
    assert err.value.line == 6
    with pytest.raises(ParseError):
        parse_document("sort S T\nvar a : S\nvar b : T\n---\na = b")


def test_unknown_sort_in_preamble():
    with pytest.raises(ParseError):
        parse_document("sort S\nrelation P : Q\n---\ntrue")


def test_bounded_formulas():
    assert is_bounded(parse("forall z in y. exists w in z. w = w"))
    assert not is_bounded(parse("exists z. z in y"))


def test_free_variables_respect_binders():
    assert free_vars(parse("forall x. (x in y /\\ exists y. y = z)")) == {"y", "z"}


# -- semantics -------------------------------------------------------------------------

def test_kripke_joyal_matches_classical_truth_sets():
    phis = formula_corpus(seed=7, n=60)
    for i, phi in enumerate(phis):
        env = random_env(i)
        ctx = (("a", "D"), ("b", "D"))
        assert kripke_joyal_eval(phi, env, ctx) == classical_truth_set(phi, env, ctx), show(phi)


@given(st.integers(0, 10_000))
def test_kripke_joyal_matches_classical_on_random_environments(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, ["a"], {"P": 1, "R": 2}, 3)
    env = random_env(seed, n=rng.randint(1, 3))
    ctx = (("a", "D"),)
    assert kripke_joyal_eval(phi, env, ctx) == classical_truth_set(phi, env, ctx)


def test_excluded_middle_holds_in_finite_sets():
    env = random_env(1)
    assert holds(parse("forall x. (P(x) \\/ ~P(x))"), env)


def test_excluded_middle_fails_in_presheaves(arrow_cat):
    P = arrow_cat
    T = P.terminal()
    middle = Subobject(T, (frozenset({0}), frozenset()))
    env = Environment(P, {"T": T}, relations={"P": (("T",), middle)})
    lem = parse("forall x. (P(x) \\/ ~P(x))")
    assert not holds(lem, env)
    assert holds(parse("forall x. ~~(P(x) \\/ ~P(x))"), env)


def test_context_order_is_respected():
    env = random_env(3)
    phi = parse("R(a, b)")
    ab = kripke_joyal_eval(phi, env, (("a", "D"), ("b", "D")))
    ba = kripke_joyal_eval(phi, env, (("b", "D"), ("a", "D")))
    swap = {a * 3 + b: b * 3 + a for a in range(3) for b in range(3)}
    assert ba.data == frozenset(swap[i] for i in ab.data)


def test_missing_context_variable():
    with pytest.raises(MalformedInput):
        kripke_joyal_eval(parse("R(a, b)"), random_env(0), (("a", "D"),))


# -- schemas ---------------------------------------------------------------------------

def test_every_schema_has_a_closed_instance():
    for name in SCHEMAS:
        assert free_vars(instantiate_schema(name)) == set()


def test_sample_parameters_parse_and_instantiate():
    for name, params in SAMPLE_PARAMETERS.items():
        for text in params:
            assert free_vars(instantiate_schema(name, parse(text))) == set()


def test_reserved_variables_are_rejected():
    with pytest.raises(PreconditionError):
        schema_instance("BoundedSeparation", parse("x in y"))
    with pytest.raises(PreconditionError):
        schema_instance("EpsilonInduction", parse("y in x"))


def test_bounded_separation_needs_a_bounded_parameter():
    with pytest.raises(PreconditionError):
        schema_instance("BoundedSeparation", parse("exists z. z in y"))
    schema_instance("FullSeparation", parse("exists z. z in y"))


def test_parameterless_schemas_take_no_parameter():
    with pytest.raises(PreconditionError):
        schema_instance("Pairing", parse("true"))


def test_unknown_schema():
    with pytest.raises(MalformedInput):
        instantiate_schema("Choice")


def test_extra_free_variables_become_parameters():
    inst = schema_instance("BoundedSeparation", parse("exists z in y. z in p"))
    assert inst.params[0] == "p"
    assert isinstance(inst.closure, Forall)
