"""Finite sites, sheafification and sheaf categories."""

from algset.sheaves.category import SheafCategory, components, pointwise_small, sheaf_category
from algset.sheaves.sheafify import (
    amalgamations,
    family_census,
    is_separated,
    is_sheaf,
    matching_families,
    plus,
    sheaf_condition,
    sheafify,
)
from algset.sheaves.site import (
    CovCheck,
    Site,
    SiteVerdict,
    all_sieves,
    bounded_cov_check,
    broken_stability_site,
    dense_site,
    dump_site,
    fixture_sites,
    is_sieve,
    load_site,
    maximal_sieve,
    pullback_sieve,
    site_from_basis,
    trivial_site,
    two_object_site,
    v_poset,
    validate_site,
)

__all__ = [
    "CovCheck", "SheafCategory", "Site", "SiteVerdict", "all_sieves", "amalgamations",
    "bounded_cov_check", "broken_stability_site", "components", "dense_site", "dump_site",
    "family_census", "fixture_sites", "is_separated", "is_sheaf", "is_sieve", "load_site",
    "matching_families", "maximal_sieve", "plus", "pointwise_small", "pullback_sieve",
    "sheaf_category", "sheaf_condition", "sheafify", "site_from_basis", "trivial_site",
    "two_object_site", "v_poset", "validate_site",
]
