"""Finite categories with the structure needed to interpret small maps."""

from algset.fincat.base import (
    FIBRE_CENSUS,
    FINITE_LIMITS,
    HEYTING,
    PI,
    QUOTIENTS,
    REGULAR,
    SUMS,
    AmbientCategory,
    Arrow,
    PiResult,
    SearchResult,
    Subobject,
)
from algset.fincat.finset import FINSET, SkeletalFinSet
from algset.fincat.lattice import SubobjectLattice
from algset.fincat.lattice import forall_along as _forall_along
from algset.fincat.presheaf import (
    FiniteCategory,
    Presheaf,
    PresheafCategory,
    point_category,
    sierpinski_category,
)
from algset.fincat.textformat import dump_category, load_category


# Module-level shortcuts; they default to skeletal finite sets.

def compose(g: Arrow, f: Arrow, cat: AmbientCategory = FINSET) -> Arrow:
    return cat.compose(g, f)


def pullback(f: Arrow, g: Arrow, cat: AmbientCategory = FINSET):
    cat.require(FINITE_LIMITS)
    return cat.pullback(f, g)


def image_factorization(f: Arrow, cat: AmbientCategory = FINSET):
    cat.require(REGULAR)
    return cat.image_factorization(f)


def subobject_lattice(X, cat: AmbientCategory = FINSET, limit: int = 4096) -> SubobjectLattice:
    return cat.subobject_lattice(X, limit)


def forall_along(f: Arrow, S: Subobject, cat: AmbientCategory = FINSET) -> Subobject:
    return _forall_along(cat, f, S)


__all__ = [
    "FIBRE_CENSUS", "FINITE_LIMITS", "FINSET", "HEYTING", "PI", "QUOTIENTS", "REGULAR", "SUMS",
    "AmbientCategory", "Arrow", "FiniteCategory", "PiResult", "Presheaf", "PresheafCategory",
    "SearchResult", "SkeletalFinSet", "Subobject", "SubobjectLattice", "compose",
    "dump_category", "forall_along", "image_factorization", "load_category", "point_category",
    "pullback", "sierpinski_category", "subobject_lattice",
]
