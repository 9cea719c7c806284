"""Polynomial functors, W-types and rank-truncated initial ZF-algebras."""

from algset.wzf.polynomial import PolynomialSignature, polynomial_apply, polynomial_elements
from algset.wzf.wtype import WTree, WTypeResult, bisim_quotient, check_initial_algebra, wtype
from algset.wzf.zf import (
    FAILS,
    HOLDS,
    OUT_OF_HEADROOM,
    SetAxiomVerdict,
    VApprox,
    build_V,
    check_set_axiom,
    check_zf_laws,
    code_of,
    embedding_coherent,
    set_of,
    show_set,
)

__all__ = [
    "FAILS", "HOLDS", "OUT_OF_HEADROOM", "PolynomialSignature", "SetAxiomVerdict", "VApprox",
    "WTree", "WTypeResult", "bisim_quotient", "build_V", "check_initial_algebra",
    "check_set_axiom", "check_zf_laws", "code_of", "embedding_coherent", "polynomial_apply",
    "polynomial_elements", "set_of", "show_set", "wtype",
]
