"""Polynomial functors P_f(Z) = Sigma_Y Pi_f X^*(Z)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from algset.errors import ResourceBoundError, UnsupportedStructure
from algset.fincat.base import FIBRE_CENSUS, AmbientCategory, Arrow, PiResult
from algset.fincat.finset import SkeletalFinSet


@dataclass(frozen=True)
class PolynomialSignature:
    """Constructors are the elements of ``f.cod``; the arity of y is the fibre of f over y."""

    category: AmbientCategory
    f: Arrow
    arities: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        census = ()
        if FIBRE_CENSUS in self.category.capabilities:
            census = tuple(self.category.fibre_census(self.f))
        object.__setattr__(self, "arities", census)

    @property
    def finite_sets(self) -> bool:
        return isinstance(self.category, SkeletalFinSet)

    def fibres(self) -> list[list[int]]:
        if not self.finite_sets:
            raise UnsupportedStructure("explicit fibres need finite sets")
        return self.category.fibres(self.f)

    @classmethod
    def from_arities(cls, cat: SkeletalFinSet, arities) -> "PolynomialSignature":
        """One constructor per entry, with the given number of arguments."""
        table = [y for y, n in enumerate(arities) for _ in range(n)]
        return cls(cat, Arrow(len(table), len(arities), tuple(table)))


def polynomial_pi(sig: PolynomialSignature, Z) -> PiResult:
    """Pi_f of the projection X x Z -> X; its domain is P_f(Z)."""
    cat = sig.category
    _, p1, _ = cat.binary_product(sig.f.dom, Z)
    return cat.pi_along(sig.f, p1)


def polynomial_apply(sig: PolynomialSignature, Z):
    """P_f(Z), computed through the kernel's pullback and dependent product."""
    return polynomial_pi(sig, Z).arrow.dom


def polynomial_elements(sig: PolynomialSignature, Z: int, limit: int = 1_000_000):
    """Explicit elements (y, t) of P_f(Z) in finite sets, t a tuple over the fibre of y."""
    total = sum(Z ** n for n in sig.arities)
    if total > limit:
        raise ResourceBoundError(f"P_f({Z}) has {total} elements", {"size": total})
    return [(y, t) for y, n in enumerate(sig.arities) for t in iproduct(range(Z), repeat=n)]
