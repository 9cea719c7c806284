"""Verdicts and search budgets for the axiom checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from algset.fincat.base import Arrow, Subobject


class Outcome(str, enum.Enum):
    WITNESSED = "WITNESSED"
    PASSED_SAMPLED = "PASSED-SAMPLED"
    REFUTED = "REFUTED"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value

    @property
    def positive(self) -> bool:
        return self in (Outcome.WITNESSED, Outcome.PASSED_SAMPLED)


AXIOMS = (
    "A1", "A2", "A3", "A4", "A5", "A6", "C", "R", "R-strong", "PiE", "WE",
    "HB", "US", "BE", "NE", "NS", "PE", "PS", "M", "F", "PiS",
)

ALIASES = {"ΠE": "PiE", "ΠS": "PiS", "PIE": "PiE", "PIS": "PiS"}


def normalize_axiom(name: str) -> str:
    return ALIASES.get(name, name)


@dataclass(frozen=True)
class Budget:
    """Search limits.

    ``max_size`` bounds every object in an enumerated diagram.  The other
    fields bound the auxiliary searches: test objects for universal
    properties, existential witnesses, and the candidate universal maps for
    (R).
    """

    max_size: int = 4
    test_size: int = 2
    witness_size: int = 3
    r_bound: int = 6
    ceiling: int = 200_000

    def __post_init__(self):
        for name in ("max_size", "test_size", "witness_size", "r_bound", "ceiling"):
            if getattr(self, name) < 0:
                raise ValueError(f"budget field {name} must be non-negative")

    def shrink(self, max_size: int) -> "Budget":
        return Budget(max_size, self.test_size, self.witness_size, self.r_bound, self.ceiling)


@dataclass
class AxiomVerdict:
    axiom: str
    outcome: Outcome
    evidence: dict[str, Any] = field(default_factory=dict)
    instances: int = 0
    diagram: dict[str, Any] = field(default_factory=dict)
    note: str = ""

    def to_json(self) -> dict[str, Any]:
        return {
            "axiom": self.axiom,
            "outcome": self.outcome.value,
            "instances": self.instances,
            "evidence": to_jsonable(self.evidence),
            "diagram": to_jsonable(self.diagram),
            "note": self.note,
        }


def to_jsonable(value):
    """Recursively turn arrows, subobjects and dataclasses into JSON data."""
    if isinstance(value, Arrow):
        return {"dom": to_jsonable(value.dom), "cod": to_jsonable(value.cod),
                "data": to_jsonable(value.data)}
    if isinstance(value, Subobject):
        return {"base": to_jsonable(value.base), "data": to_jsonable(value.data)}
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted((to_jsonable(v) for v in value), key=repr)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(value, k)) for k in value.__dataclass_fields__
                if not k.startswith("_")}
    return value


def from_jsonable(value):
    """Inverse of :func:`to_jsonable` for finite-set data: lists become tuples,
    arrow and subobject records become objects again."""
    if isinstance(value, dict):
        keys = set(value)
        if keys == {"dom", "cod", "data"}:
            return Arrow(from_jsonable(value["dom"]), from_jsonable(value["cod"]),
                         from_jsonable(value["data"]))
        if keys == {"base", "data"}:
            return Subobject(from_jsonable(value["base"]), frozenset(from_jsonable(value["data"])))
        return {k: from_jsonable(v) for k, v in value.items()}
    if isinstance(value, list):
        return tuple(from_jsonable(v) for v in value)
    return value


def verdict_from_json(record: dict) -> AxiomVerdict:
    return AxiomVerdict(record["axiom"], Outcome(record["outcome"]),
                        from_jsonable(record.get("evidence", {})), record.get("instances", 0),
                        from_jsonable(record.get("diagram", {})), record.get("note", ""))
