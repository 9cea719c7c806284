"""Computable categories: arrows, subobjects and the shared interface.

Every concrete category (finite sets, presheaves, sheaves, exact completions,
slices) implements :class:`AmbientCategory`.  Constructions return canonical
representatives so that objects, arrows and subobjects can be compared by
value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Any, Callable, Iterable, Iterator

from algset.errors import (
    CompositionError,
    InconclusiveError,
    ResourceBoundError,
    UnsupportedStructure,
)

FINITE_LIMITS = "finite-limits"
REGULAR = "regular"
SUMS = "sums"
HEYTING = "heyting"
PI = "pi"
QUOTIENTS = "quotients"
FIBRE_CENSUS = "fibre-census"

DEFAULT_CEILING = 200_000


@dataclass(frozen=True)
class Arrow:
    dom: Any
    cod: Any
    data: Any

    def __repr__(self) -> str:
        return f"Arrow({self.dom!r} -> {self.cod!r}: {self.data!r})"


@dataclass(frozen=True)
class Subobject:
    """A canonical subobject of ``base``; ``data`` identifies the lattice element."""

    base: Any
    data: Any


@dataclass(frozen=True)
class SearchResult:
    found: tuple
    exhausted: bool

    @property
    def unique(self) -> bool:
        return self.exhausted and len(self.found) == 1


@dataclass(frozen=True)
class PiResult:
    """Dependent product of ``p`` along ``f: X -> Y`` with its counit.

    ``arrow`` is the object over Y, ``pulled`` and ``to_pi`` are the two legs of
    ``f^*`` of it, and ``counit`` is the evaluation map ``f^* Pi -> P`` over X.
    """

    arrow: Arrow
    pulled: Arrow
    to_pi: Arrow
    counit: Arrow


class AmbientCategory:
    """Interface of a computable Heyting category with sums.

    Subclasses fill in the primitive constructions; the generic helpers below
    derive everything else (mediating-arrow search, quasi-pullback tests,
    kernel pairs, equivalence relations) from them.
    """

    name = "abstract"
    capabilities: frozenset = frozenset()

    # -- primitives --------------------------------------------------------
    def objects(self, max_size: int) -> Iterator[Any]:
        raise NotImplementedError

    def size(self, X) -> int:
        raise NotImplementedError

    def contains_object(self, X) -> bool:
        raise NotImplementedError

    def hom(self, A, B) -> Iterator[Arrow]:
        raise NotImplementedError

    def identity(self, A) -> Arrow:
        raise NotImplementedError

    def _compose(self, g: Arrow, f: Arrow) -> Arrow:
        raise NotImplementedError

    def terminal(self):
        raise NotImplementedError

    def initial(self):
        raise NotImplementedError

    def product(self, objs) -> tuple[Any, tuple[Arrow, ...]]:
        raise NotImplementedError

    def tuple_arrow(self, arrows) -> Arrow:
        """The arrow into ``product([a.cod for a in arrows])`` with the given legs."""
        raise NotImplementedError

    def pullback(self, f: Arrow, g: Arrow) -> tuple[Any, Arrow, Arrow]:
        raise NotImplementedError

    def pullback_mediator(self, f: Arrow, g: Arrow, a: Arrow, b: Arrow) -> Arrow:
        """The comparison from the apex of ``f a = g b`` into ``pullback(f, g)``."""
        raise NotImplementedError

    def equalizer(self, f: Arrow, g: Arrow) -> Arrow:
        raise NotImplementedError

    def coproduct(self, A, B) -> tuple[Any, Arrow, Arrow]:
        raise NotImplementedError

    def copair(self, f: Arrow, g: Arrow) -> Arrow:
        raise NotImplementedError

    def image_factorization(self, f: Arrow) -> tuple[Arrow, Arrow]:
        raise NotImplementedError

    def is_mono(self, f: Arrow) -> bool:
        raise NotImplementedError

    def is_cover(self, f: Arrow) -> bool:
        raise NotImplementedError

    def subobjects(self, X) -> Iterator[Subobject]:
        raise NotImplementedError

    def sub_top(self, X) -> Subobject:
        raise NotImplementedError

    def sub_bottom(self, X) -> Subobject:
        raise NotImplementedError

    def sub_meet(self, S: Subobject, T: Subobject) -> Subobject:
        raise NotImplementedError

    def sub_join(self, S: Subobject, T: Subobject) -> Subobject:
        raise NotImplementedError

    def sub_implies(self, S: Subobject, T: Subobject) -> Subobject:
        raise NotImplementedError

    def sub_leq(self, S: Subobject, T: Subobject) -> bool:
        return self.sub_meet(S, T) == S

    def sub_pullback(self, f: Arrow, S: Subobject) -> Subobject:
        raise NotImplementedError

    def sub_image(self, f: Arrow, S: Subobject) -> Subobject:
        raise NotImplementedError

    def sub_forall(self, f: Arrow, S: Subobject) -> Subobject:
        raise NotImplementedError

    def sub_mono(self, S: Subobject) -> Arrow:
        """The canonical mono representing ``S``."""
        raise NotImplementedError

    def sub_of_mono(self, m: Arrow) -> Subobject:
        raise NotImplementedError

    # -- derived -----------------------------------------------------------
    def require(self, capability: str) -> None:
        if capability not in self.capabilities:
            raise UnsupportedStructure(f"{self.name} lacks capability {capability!r}")

    def compose(self, g: Arrow, f: Arrow, *rest: Arrow) -> Arrow:
        """``compose(g, f)`` is g after f; extra arguments continue to the right."""
        if rest:
            return self.compose(self.compose(g, f), *rest)
        if f.cod != g.dom:
            raise CompositionError(f"cannot compose {g!r} after {f!r}")
        return self._compose(g, f)

    def sub_neg(self, S: Subobject) -> Subobject:
        return self.sub_implies(S, self.sub_bottom(S.base))

    def is_iso(self, f: Arrow) -> bool:
        return self.is_mono(f) and self.is_cover(f)

    def binary_product(self, A, B):
        P, (p1, p2) = self.product((A, B))
        return P, p1, p2

    def terminal_arrow(self, X) -> Arrow:
        (t,) = islice(self.hom(X, self.terminal()), 1)
        return t

    def initial_arrow(self, X) -> Arrow:
        (t,) = islice(self.hom(self.initial(), X), 1)
        return t

    def diagonal(self, X) -> Arrow:
        i = self.identity(X)
        return self.tuple_arrow((i, i))

    def sum_arrows(self, f: Arrow, g: Arrow) -> Arrow:
        _, i1, i2 = self.coproduct(f.cod, g.cod)
        return self.copair(self.compose(i1, f), self.compose(i2, g))

    def image(self, f: Arrow) -> Subobject:
        return self.sub_of_mono(self.image_factorization(f)[1])

    def relation(self, r0: Arrow, r1: Arrow) -> Subobject:
        """Image of the span ``(r0, r1)`` in the product of their codomains."""
        return self.image(self.tuple_arrow((r0, r1)))

    def kernel_pair(self, q: Arrow) -> Subobject:
        _, k0, k1 = self.pullback(q, q)
        return self.relation(k0, k1)

    def hom_list(self, A, B, ceiling: int = DEFAULT_CEILING) -> list[Arrow]:
        out = list(islice(self.hom(A, B), ceiling + 1))
        if len(out) > ceiling:
            raise ResourceBoundError(f"hom({A!r}, {B!r}) exceeds {ceiling}", len(out))
        return out

    def search_hom(self, A, B, predicate: Callable[[Arrow], bool],
                   ceiling: int = DEFAULT_CEILING) -> SearchResult:
        found = []
        for n, u in enumerate(self.hom(A, B)):
            if n >= ceiling:
                return SearchResult(tuple(found), False)
            if predicate(u):
                found.append(u)
        return SearchResult(tuple(found), True)

    def mediating_arrows(self, apex, legs, limit_legs, ceiling: int = DEFAULT_CEILING) -> SearchResult:
        """All u: apex -> L with ``limit_legs[i] . u == legs[i]``, by exhaustive search."""
        L = limit_legs[0].dom
        return self.search_hom(
            apex, L,
            lambda u: all(self.compose(p, u) == c for p, c in zip(limit_legs, legs)),
            ceiling,
        )

    def commutes(self, a: Arrow, b: Arrow, f: Arrow, g: Arrow) -> bool:
        return self.compose(f, a) == self.compose(g, b)

    def quasi_pullback_check(self, a: Arrow, b: Arrow, f: Arrow, g: Arrow) -> bool:
        """Square ``f a = g b``: is the comparison into the inscribed pullback a cover?"""
        if not self.commutes(a, b, f, g):
            return False
        return self.is_cover(self.pullback_mediator(f, g, a, b))

    def is_pullback_square(self, a: Arrow, b: Arrow, f: Arrow, g: Arrow) -> bool:
        if not self.commutes(a, b, f, g):
            return False
        return self.is_iso(self.pullback_mediator(f, g, a, b))

    def check_pullback_universal(self, f: Arrow, g: Arrow, test_objects: Iterable,
                                 ceiling: int = DEFAULT_CEILING) -> bool:
        """Every competing cone over ``(f, g)`` factors uniquely through the pullback.

        Raises :class:`InconclusiveError` when a hom-set search hits the ceiling.
        """
        P, p1, p2 = self.pullback(f, g)
        for C in test_objects:
            for a in self.hom(C, f.dom):
                for b in self.hom(C, g.dom):
                    if self.compose(f, a) != self.compose(g, b):
                        continue
                    res = self.mediating_arrows(C, (a, b), (p1, p2), ceiling)
                    if not res.exhausted:
                        raise InconclusiveError("mediating-arrow search hit the ceiling")
                    if len(res.found) != 1:
                        return False
        return True

    def unique_arrow_check(self, A, B) -> bool:
        return len(self.hom_list(A, B)) == 1

    def subobject_lattice(self, X, limit: int = 4096):
        from algset.fincat.lattice import SubobjectLattice

        return SubobjectLattice.build(self, X, limit)

    def is_equivalence_relation(self, X, R: Subobject) -> bool:
        """Reflexive, symmetric and transitive, tested with subobject algebra only."""
        XX, p1, p2 = self.binary_product(X, X)
        if R.base != XX:
            return False
        if not self.sub_leq(self.image(self.diagonal(X)), R):
            return False
        twist = self.tuple_arrow((p2, p1))
        if not self.sub_leq(self.sub_pullback(twist, R), R):
            return False
        m = self.sub_mono(R)
        r0, r1 = self.compose(p1, m), self.compose(p2, m)
        _, a, b = self.pullback(r1, r0)
        composite = self.relation(self.compose(r0, a), self.compose(r1, b))
        return self.sub_leq(composite, R)

    def equivalence_relations(self, X) -> Iterator[Subobject]:
        XX = self.binary_product(X, X)[0]
        for R in self.subobjects(XX):
            if self.is_equivalence_relation(X, R):
                yield R

    def relation_legs(self, X, R: Subobject) -> tuple[Arrow, Arrow]:
        _, p1, p2 = self.binary_product(X, X)
        m = self.sub_mono(R)
        return self.compose(p1, m), self.compose(p2, m)

    def quotient(self, X, R: Subobject) -> Arrow:
        raise UnsupportedStructure(f"{self.name} has no quotient constructor")

    def is_exact(self, X, R: Subobject, q: Arrow) -> bool:
        """``R => X -> Q`` is a pullback and a coequaliser.

        In a regular category this is the same as: q is a cover whose kernel
        pair is R.
        """
        return self.is_cover(q) and self.kernel_pair(q) == R

    def fibre_census(self, f: Arrow) -> Iterator[int]:
        raise UnsupportedStructure(f"{self.name} has no fibre census")

    def pi_along(self, f: Arrow, p: Arrow):
        raise UnsupportedStructure(f"{self.name} has no dependent products")

    def describe(self, X) -> str:
        return repr(X)
