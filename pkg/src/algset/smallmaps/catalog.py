"""Deterministic instance generators for the axiom checks."""

from __future__ import annotations

from functools import cached_property

from algset.fincat.base import AmbientCategory


class Catalog:
    """All objects of size at most ``max_size`` and the arrows between them.

    Hom-sets are cached; every enumeration is in a fixed order so that
    verdicts (and their counterexamples) are reproducible.
    """

    def __init__(self, cat: AmbientCategory, max_size: int):
        self.cat = cat
        self.max_size = max_size
        self._hom: dict = {}

    @cached_property
    def objects(self) -> list:
        return list(self.cat.objects(self.max_size))

    def hom(self, A, B) -> list:
        key = (A, B)
        out = self._hom.get(key)
        if out is None:
            out = self._hom[key] = list(self.cat.hom(A, B))
        return out

    def arrows_into(self, A):
        for B in self.objects:
            yield from self.hom(B, A)

    def arrows_from(self, A):
        for B in self.objects:
            yield from self.hom(A, B)

    def arrows(self):
        for A in self.objects:
            for B in self.objects:
                yield from self.hom(A, B)

    def covers_into(self, A):
        is_cover = self.cat.is_cover
        return [p for p in self.arrows_into(A) if is_cover(p)]

    def monos(self):
        is_mono = self.cat.is_mono
        return [m for m in self.arrows() if is_mono(m)]
