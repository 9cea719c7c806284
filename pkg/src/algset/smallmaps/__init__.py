"""Classes of small maps and bounded checks of their axioms."""

from algset.smallmaps.axioms import (
    check_axiom,
    check_descent_counterexample_suite,
    check_suite,
    replay,
)
from algset.smallmaps.catalog import Catalog
from algset.smallmaps.classes import (
    MapClass,
    all_maps,
    builtin_class,
    even_domain,
    fibre_below,
    load_class,
    monos,
)
from algset.smallmaps.extras import (
    MultiValuedSpan,
    UniversalMapWitness,
    check_fullness_instance,
    nno_detect,
    small_object_subcategory,
)
from algset.smallmaps.power import PowerClassData, omega_b, pi_along, power_class
from algset.smallmaps.separation import bounded_separation_check, separation_violations
from algset.smallmaps.slice import SliceCategory, slice_class
from algset.smallmaps.verdict import AXIOMS, AxiomVerdict, Budget, Outcome

__all__ = [
    "AXIOMS", "AxiomVerdict", "Budget", "Catalog", "MapClass", "MultiValuedSpan", "Outcome",
    "PowerClassData", "SliceCategory", "UniversalMapWitness", "all_maps", "builtin_class",
    "bounded_separation_check", "check_axiom", "check_descent_counterexample_suite", "check_fullness_instance",
    "check_suite", "even_domain", "fibre_below", "load_class", "monos", "nno_detect",
    "omega_b", "pi_along", "power_class", "replay", "separation_violations", "slice_class", "small_object_subcategory",
]
