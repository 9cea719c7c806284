"""Candidate classes of small maps."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Callable

from algset.errors import MalformedInput
from algset.fincat.base import FIBRE_CENSUS, AmbientCategory, Arrow


@dataclass(frozen=True)
class MapClass:
    """A decidable predicate on the arrows of ``category``.

    ``fibre_ok`` is set for classes defined by a bound on fibre cardinality;
    several checks (power classes, representability, fullness) use it to
    build analytic witnesses.  ``witnesses`` holds any other named analytic
    witnesses (for instance a universal small map).
    """

    category: AmbientCategory
    label: str
    predicate: Callable[[Arrow], bool] = field(compare=False)
    fibre_ok: Callable[[int], bool] | None = field(default=None, compare=False)
    down_closed: bool = False
    witnesses: dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __contains__(self, f: Arrow) -> bool:
        return self.predicate(f)

    def contains(self, f: Arrow) -> bool:
        return self.predicate(f)

    def is_small_object(self, X) -> bool:
        return self.predicate(self.category.terminal_arrow(X))

    def is_bounded(self, S) -> bool:
        return self.predicate(self.category.sub_mono(S))

    def on(self, category: AmbientCategory, predicate=None, label=None) -> "MapClass":
        return MapClass(category, label or self.label, predicate or self.predicate,
                        self.fibre_ok, self.down_closed, dict(self.witnesses))


def all_maps(cat: AmbientCategory) -> MapClass:
    return MapClass(cat, "all", lambda f: True, fibre_ok=lambda n: True,
                    down_closed=True)


def fibre_below(cat: AmbientCategory, k: int) -> MapClass:
    """Maps all of whose fibres (over global points, componentwise) have fewer than k elements."""
    cat.require(FIBRE_CENSUS)
    return MapClass(cat, f"fibre<{k}",
                    lambda f: all(n < k for n in cat.fibre_census(f)),
                    fibre_ok=lambda n: n < k, down_closed=True)


def monos(cat: AmbientCategory) -> MapClass:
    census = FIBRE_CENSUS in cat.capabilities
    return MapClass(cat, "mono", cat.is_mono,
                    fibre_ok=(lambda n: n < 2) if census else None, down_closed=census)


def even_domain(cat: AmbientCategory) -> MapClass:
    """Regression class that is not even a class of open maps: fails descent."""
    return MapClass(cat, "even-domain", lambda f: cat.size(f.dom) % 2 == 0)


def fibre_sizes(cat: AmbientCategory, allowed) -> MapClass:
    allowed = frozenset(int(a) for a in allowed)
    cat.require(FIBRE_CENSUS)
    return MapClass(cat, "fibres" + str(sorted(allowed)),
                    lambda f: all(n in allowed for n in cat.fibre_census(f)),
                    fibre_ok=lambda n: n in allowed,
                    down_closed=allowed == frozenset(range(len(allowed))))


def table_class(cat: AmbientCategory, arrows, label="table") -> MapClass:
    """Explicit finite membership table."""
    members = frozenset(arrows)
    return MapClass(cat, label, lambda f: f in members)


_FIBRE = re.compile(r"^fibre<(\d+)$")


def builtin_class(cat: AmbientCategory, name: str) -> MapClass:
    """Resolve ``all``, ``fibre<k``, ``mono`` or ``even-domain``."""
    if name == "all":
        return all_maps(cat)
    if name == "mono":
        return monos(cat)
    if name == "even-domain":
        return even_domain(cat)
    m = _FIBRE.match(name)
    if m:
        return fibre_below(cat, int(m.group(1)))
    raise MalformedInput(f"unknown class {name!r}")


def load_class(cat: AmbientCategory, text: str) -> MapClass:
    """User class file (JSON) for finite sets.

    Either ``{"name": ..., "fibre_sizes": [0, 1, 2]}`` or
    ``{"name": ..., "arrows": [[dom, cod, [table...]], ...]}``.
    """
    spec = json.loads(text)
    name = spec.get("name", "user")
    if "builtin" in spec:
        return builtin_class(cat, spec["builtin"])
    if "fibre_sizes" in spec:
        c = fibre_sizes(cat, spec["fibre_sizes"])
        return MapClass(cat, name, c.predicate, c.fibre_ok, c.down_closed)
    if "arrows" in spec:
        arrows = [cat.arrow(d, c, t) for d, c, t in spec["arrows"]]
        return table_class(cat, arrows, name)
    raise MalformedInput("class file needs 'builtin', 'fibre_sizes' or 'arrows'")
