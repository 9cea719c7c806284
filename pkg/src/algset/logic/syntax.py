"""Abstract syntax of many-sorted first-order formulas with bounded quantifiers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class Formula:
    """Base class; every node is an immutable, hashable dataclass."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __str__(self) -> str:
        from algset.logic.parser import show

        return show(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Mem(Formula):
    """``elem in coll``, interpreted by the structure's membership relation."""

    elem: str
    coll: str


@dataclass(frozen=True)
class Rel(Formula):
    name: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    sort: str | None
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    sort: str | None
    body: Formula


@dataclass(frozen=True)
class BForall(Formula):
    """``forall var in bound. body``"""

    var: str
    bound: str
    body: Formula


@dataclass(frozen=True)
class BExists(Formula):
    var: str
    bound: str
    body: Formula


@dataclass(frozen=True)
class Bi(Formula):
    """``B(x in a, y in b) body``: every x in a has a y in b and vice versa."""

    x: str
    a: str
    y: str
    b: str
    body: Formula

    def expand(self) -> Formula:
        return And(BForall(self.x, self.a, BExists(self.y, self.b, self.body)),
                   BForall(self.y, self.b, BExists(self.x, self.a, self.body)))


BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists, BForall, BExists, Bi)


def free_vars(phi: Formula) -> frozenset[str]:
    if isinstance(phi, (Top, Bottom)):
        return frozenset()
    if isinstance(phi, Eq):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, Mem):
        return frozenset((phi.elem, phi.coll))
    if isinstance(phi, Rel):
        return frozenset(phi.args)
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, BINARY):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Forall, Exists)):
        return free_vars(phi.body) - {phi.var}
    if isinstance(phi, (BForall, BExists)):
        return (free_vars(phi.body) - {phi.var}) | {phi.bound}
    if isinstance(phi, Bi):
        return free_vars(phi.expand())
    raise TypeError(f"not a formula: {phi!r}")


def subformulas(phi: Formula) -> Iterator[Formula]:
    yield phi
    if isinstance(phi, Not):
        yield from subformulas(phi.body)
    elif isinstance(phi, BINARY):
        yield from subformulas(phi.left)
        yield from subformulas(phi.right)
    elif isinstance(phi, QUANTIFIERS):
        yield from subformulas(phi.body)


def size(phi: Formula) -> int:
    return sum(1 for _ in subformulas(phi))


def is_bounded(phi: Formula) -> bool:
    """No unbounded quantifiers anywhere."""
    return not any(isinstance(s, (Forall, Exists)) for s in subformulas(phi))


def all_vars(phi: Formula) -> set[str]:
    out: set[str] = set()
    for s in subformulas(phi):
        out |= free_vars(s)
        if isinstance(s, QUANTIFIERS[:4]):
            out.add(s.var)
        elif isinstance(s, Bi):
            out |= {s.x, s.y}
    return out


def fresh(base: str, avoid) -> str:
    name = base
    while name in avoid:
        name += "'"
    return name


def substitute(phi: Formula, mapping: dict[str, str]) -> Formula:
    """Capture-avoiding renaming of free variables."""
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return phi
    r = lambda v: mapping.get(v, v)  # noqa: E731
    if isinstance(phi, (Top, Bottom)):
        return phi
    if isinstance(phi, Eq):
        return Eq(r(phi.left), r(phi.right))
    if isinstance(phi, Mem):
        return Mem(r(phi.elem), r(phi.coll))
    if isinstance(phi, Rel):
        return Rel(phi.name, tuple(r(a) for a in phi.args))
    if isinstance(phi, Not):
        return Not(substitute(phi.body, mapping))
    if isinstance(phi, BINARY):
        return type(phi)(substitute(phi.left, mapping), substitute(phi.right, mapping))
    if isinstance(phi, Bi):
        return substitute(phi.expand(), mapping) if _bi_clash(phi, mapping) else Bi(
            phi.x, r(phi.a), phi.y, r(phi.b),
            substitute(phi.body, {k: v for k, v in mapping.items() if k not in (phi.x, phi.y)}))
    if isinstance(phi, (Forall, Exists, BForall, BExists)):
        inner = {k: v for k, v in mapping.items() if k != phi.var}
        var = phi.var
        body = phi.body
        targets = {inner[k] for k in free_vars(body) if k in inner}
        if var in targets:
            new = fresh(var, targets | all_vars(body) | set(inner))
            body = substitute(body, {var: new})
            var = new
        body = substitute(body, inner)
        if isinstance(phi, (Forall, Exists)):
            return type(phi)(var, phi.sort, body)
        return type(phi)(var, r(phi.bound), body)
    raise TypeError(f"not a formula: {phi!r}")


def _bi_clash(phi: Bi, mapping) -> bool:
    targets = set(mapping.values())
    return phi.x in targets or phi.y in targets or phi.x in (phi.a, phi.b) or phi.y in (phi.a, phi.b)


def desugar(phi: Formula) -> Formula:
    """Expand every B-macro (bounded quantifiers stay primitive)."""
    if isinstance(phi, Bi):
        return desugar(phi.expand())
    if isinstance(phi, Not):
        return Not(desugar(phi.body))
    if isinstance(phi, BINARY):
        return type(phi)(desugar(phi.left), desugar(phi.right))
    if isinstance(phi, (Forall, Exists)):
        return type(phi)(phi.var, phi.sort, desugar(phi.body))
    if isinstance(phi, (BForall, BExists)):
        return type(phi)(phi.var, phi.bound, desugar(phi.body))
    return phi


def unbound(phi: Formula, element_sort: str | None = None) -> Formula:
    """Rewrite bounded quantifiers through the standard abbreviations."""
    if isinstance(phi, Bi):
        return unbound(phi.expand(), element_sort)
    if isinstance(phi, BForall):
        return Forall(phi.var, element_sort, Implies(Mem(phi.var, phi.bound), unbound(phi.body, element_sort)))
    if isinstance(phi, BExists):
        return Exists(phi.var, element_sort, And(Mem(phi.var, phi.bound), unbound(phi.body, element_sort)))
    if isinstance(phi, Not):
        return Not(unbound(phi.body, element_sort))
    if isinstance(phi, BINARY):
        return type(phi)(unbound(phi.left, element_sort), unbound(phi.right, element_sort))
    if isinstance(phi, (Forall, Exists)):
        return type(phi)(phi.var, phi.sort, unbound(phi.body, element_sort))
    return phi


def relativize(phi: Formula, predicate: str, exempt=frozenset()) -> Formula:
    """Guard every unbounded quantifier by the unary relation ``predicate``.

    Quantifiers binding a variable named in ``exempt`` are left alone.
    """
    rec = lambda p: relativize(p, predicate, exempt)  # noqa: E731
    if isinstance(phi, Forall):
        body = rec(phi.body)
        if phi.var in exempt:
            return Forall(phi.var, phi.sort, body)
        return Forall(phi.var, phi.sort, Implies(Rel(predicate, (phi.var,)), body))
    if isinstance(phi, Exists):
        body = rec(phi.body)
        if phi.var in exempt:
            return Exists(phi.var, phi.sort, body)
        return Exists(phi.var, phi.sort, And(Rel(predicate, (phi.var,)), body))
    if isinstance(phi, (BForall, BExists)):
        return type(phi)(phi.var, phi.bound, rec(phi.body))
    if isinstance(phi, Bi):
        return Bi(phi.x, phi.a, phi.y, phi.b, rec(phi.body))
    if isinstance(phi, Not):
        return Not(rec(phi.body))
    if isinstance(phi, BINARY):
        return type(phi)(rec(phi.left), rec(phi.right))
    return phi


def forall_closure(phi: Formula, variables, sort: str | None = None) -> Formula:
    for v in reversed(list(variables)):
        phi = Forall(v, sort, phi)
    return phi


def conj(*parts: Formula) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(*parts: Formula) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out
