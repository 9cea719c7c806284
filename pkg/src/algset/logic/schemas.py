"""The axiom schemas of constructive and intuitionistic set theory as formulas."""

from __future__ import annotations

from dataclasses import dataclass, field

from algset.errors import MalformedInput, PreconditionError
from algset.logic.parser import parse
from algset.logic.syntax import (
    And,
    BExists,
    BForall,
    Bi,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Mem,
    Or,
    conj,
    forall_closure,
    free_vars,
    is_bounded,
    substitute,
)

SCHEMAS = ("Extensionality", "EmptySet", "Pairing", "Union", "EpsilonInduction",
           "BoundedSeparation", "StrongCollection", "Infinity", "FullSeparation", "PowerSet",
           "SubsetCollection", "Fullness")

# the distinguished free variables of each schema parameter
PARAMETER_VARS = {
    "EpsilonInduction": ("x",),
    "BoundedSeparation": ("y",),
    "FullSeparation": ("y",),
    "StrongCollection": ("x", "y"),
    "SubsetCollection": ("x", "y", "z"),
}
# names bound by the schema around the parameter; the parameter must not use them freely
RESERVED = {
    "EpsilonInduction": ("y",),
    "BoundedSeparation": ("a", "x"),
    "FullSeparation": ("a", "x"),
    "StrongCollection": ("a", "b"),
    "SubsetCollection": ("a", "b", "c", "d"),
}
# rank slack needed so that the constructed witness stays inside a truncation
HEADROOM = {"Extensionality": 0, "EmptySet": 0, "Pairing": 1, "Union": 1, "EpsilonInduction": 0,
            "BoundedSeparation": 0, "StrongCollection": 1, "Infinity": 0, "FullSeparation": 0,
            "PowerSet": 1, "SubsetCollection": 1, "Fullness": 3}

DEFAULT_PARAMETERS = {
    "EpsilonInduction": "exists w in x. w = w -> exists w in x. forall z in w. ~z = z",
    "BoundedSeparation": "exists z in y. forall w in z. ~w = w",
    "FullSeparation": "exists z. (y in z /\\ ~z = y)",
    "StrongCollection": "forall z in y. z in x",
    "SubsetCollection": "y in x \\/ y = z",
}


# further instances used by the set-axiom census
SAMPLE_PARAMETERS = {
    "EpsilonInduction": (
        DEFAULT_PARAMETERS["EpsilonInduction"],
        "(exists z in x. z = z) \\/ ~(exists z in x. z = z)",
        "forall z in x. exists w in x. z = w",
    ),
    "BoundedSeparation": (
        DEFAULT_PARAMETERS["BoundedSeparation"],
        "forall z in y. ~z = z",
        "exists z in y. exists w in z. w = w",
        "forall z in y. forall w in z. ~w = w",
        "exists z in y. forall w in y. w = z",
    ),
    "StrongCollection": (
        DEFAULT_PARAMETERS["StrongCollection"],
        "x in y",
        "forall z in x. z in y",
    ),
}

@dataclass(frozen=True)
class AxiomSchemaId:
    name: str
    param: Formula | None = None

    def __post_init__(self):
        if self.name not in SCHEMAS:
            raise MalformedInput(f"unknown axiom schema {self.name!r}; expected one of {', '.join(SCHEMAS)}")

    @property
    def parametric(self) -> bool:
        return self.name in PARAMETER_VARS


@dataclass(frozen=True)
class SchemaInstance:
    """``closure`` is the closed formula; ``body`` is it with the leading
    universal parameters stripped.  ``witness`` names the constructed set and
    ``exempt`` lists bound variables that range over the whole model when
    quantifiers are relativized."""

    id: AxiomSchemaId
    params: tuple[str, ...]
    body: Formula
    witness: str | None
    exempt: frozenset = field(default_factory=frozenset)

    @property
    def closure(self) -> Formula:
        return forall_closure(self.body, self.params)


# -- set-theoretic abbreviations ------------------------------------------------------

def subset(y: str, a: str, t: str = "t") -> Formula:
    return BForall(t, y, Mem(t, a))


def is_singleton(q: str, x: str) -> Formula:
    return And(Mem(x, q), BForall("t", q, Eq("t", x)))


def is_doubleton(q: str, x: str, y: str) -> Formula:
    return conj(Mem(x, q), Mem(y, q), BForall("t", q, Or(Eq("t", x), Eq("t", y))))


def is_pair(p: str, x: str, y: str) -> Formula:
    """p is the ordered pair {{x}, {x, y}}."""
    return conj(BForall("q", p, Or(is_singleton("q", x), is_doubleton("q", x, y))),
                BExists("q", p, is_singleton("q", x)),
                BExists("q", p, is_doubleton("q", x, y)))


def is_mv(r: str, a: str, b: str) -> Formula:
    """r is a relation from a to b which is total on a."""
    return And(BForall("p", r, BExists("x", a, BExists("y", b, is_pair("p", "x", "y")))),
               BForall("x", a, BExists("y", b, BExists("p", r, is_pair("p", "x", "y")))))


# -- schemas ----------------------------------------------------------------------------

def _check_param(name: str, phi: Formula | None) -> Formula:
    if phi is None:
        phi = parse(DEFAULT_PARAMETERS[name])
    clash = free_vars(phi) & set(RESERVED[name])
    if clash:
        raise PreconditionError(f"{name} parameter uses reserved variables {sorted(clash)}")
    if name == "BoundedSeparation" and not is_bounded(phi):
        raise PreconditionError("bounded separation needs a bounded formula")
    return phi


def schema_instance(id: AxiomSchemaId | str, param: Formula | None = None) -> SchemaInstance:
    if isinstance(id, str):
        id = AxiomSchemaId(id, param)
    elif param is not None:
        id = AxiomSchemaId(id.name, param)
    name = id.name
    if name not in PARAMETER_VARS and id.param is not None:
        raise PreconditionError(f"{name} takes no parameter")
    phi = _check_param(name, id.param) if name in PARAMETER_VARS else None
    extra = tuple(sorted(free_vars(phi) - set(PARAMETER_VARS[name]))) if phi is not None else ()

    def make(params, body, witness=None, exempt=()):
        return SchemaInstance(AxiomSchemaId(name, phi), extra + params, body, witness,
                              frozenset(exempt) | ({witness} if witness else frozenset()))

    if name == "Extensionality":
        return make(("a", "b"), parse("(forall x. (x in a <-> x in b)) -> a = b"))
    if name == "EmptySet":
        return make((), parse("exists x. forall y. ~y in x"), "x")
    if name == "Pairing":
        return make(("a", "b"), parse("exists x. forall y. (y in x <-> y = a \\/ y = b)"), "x")
    if name == "Union":
        return make(("a",), parse("exists x. forall y. (y in x <-> exists z in a. y in z)"), "x")
    if name == "Infinity":
        return make((), parse("exists a. (exists x. x in a) /\\ forall x in a. exists y in a. x in y"), "a")
    if name == "PowerSet":
        return make(("a",), Exists("x", None, Forall("y", None, Iff(Mem("y", "x"), subset("y", "a"))))
                    , "x")
    if name == "EpsilonInduction":
        step = Forall("x", None, Implies(BForall("y", "x", substitute(phi, {"x": "y"})), phi))
        return make((), Implies(step, Forall("x", None, phi)))
    if name in ("BoundedSeparation", "FullSeparation"):
        body = Exists("x", None, Forall("y", None, Iff(Mem("y", "x"), And(Mem("y", "a"), phi))))
        return make(("a",), body, "x")
    if name == "StrongCollection":
        hyp = BForall("x", "a", Exists("y", None, phi))
        return make(("a",), Implies(hyp, Exists("b", None, Bi("x", "a", "y", "b", phi))), "b")
    if name == "SubsetCollection":
        inner = Implies(BForall("x", "a", BExists("y", "b", phi)),
                        BExists("d", "c", Bi("x", "a", "y", "d", phi)))
        return make(("a", "b"), Exists("c", None, Forall("z", None, inner)), "c")
    if name == "Fullness":
        body = Exists("u", None, And(
            BForall("r", "u", is_mv("r", "a", "b")),
            Forall("v", None, Implies(is_mv("v", "a", "b"), BExists("w", "u", subset("w", "v"))))))
        return make(("a", "b"), body, "u", exempt=("v",))
    raise MalformedInput(name)  # pragma: no cover


def instantiate_schema(id: AxiomSchemaId | str, param: Formula | None = None) -> Formula:
    """The closed formula for the schema (parameters universally closed)."""
    return schema_instance(id, param).closure


def all_schema_instances() -> list[SchemaInstance]:
    return [schema_instance(n) for n in SCHEMAS]
