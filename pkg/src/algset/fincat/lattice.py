"""Tabulated subobject lattices.

The tables are derived from the order relation alone (greatest lower bounds,
least upper bounds, largest ``U`` with ``U /\\ S <= T``).  They never call the
category's own lattice operations, so they serve as an independent check on
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Any

from algset.errors import ResourceBoundError
from algset.fincat.base import Subobject


@dataclass(frozen=True)
class SubobjectLattice:
    base: Any
    elements: tuple[Subobject, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    implies: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    top: int
    bottom: int

    @classmethod
    def build(cls, cat, X, limit: int = 4096) -> "SubobjectLattice":
        elems = tuple(islice(cat.subobjects(X), limit + 1))
        if len(elems) > limit:
            raise ResourceBoundError(f"Sub({cat.describe(X)}) has more than {limit} elements", limit)
        n = len(elems)
        leq = tuple(tuple(cat.sub_leq(a, b) for b in elems) for a in elems)

        def greatest(candidates):
            for c in candidates:
                if all(leq[d][c] for d in candidates):
                    return c
            raise ValueError("no greatest element: not a lattice")

        def least(candidates):
            for c in candidates:
                if all(leq[c][d] for d in candidates):
                    return c
            raise ValueError("no least element: not a lattice")

        rng = range(n)
        top = greatest(list(rng))
        bottom = least(list(rng))
        meet = tuple(tuple(greatest([k for k in rng if leq[k][i] and leq[k][j]]) for j in rng) for i in rng)
        join = tuple(tuple(least([k for k in rng if leq[i][k] and leq[j][k]]) for j in rng) for i in rng)
        implies = tuple(
            tuple(greatest([k for k in rng if leq[meet[k][i]][j]]) for j in rng) for i in rng
        )
        neg = tuple(implies[i][bottom] for i in rng)
        return cls(X, elems, leq, meet, join, implies, neg, top, bottom)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, S: Subobject) -> int:
        return self.elements.index(S)

    def __getitem__(self, i: int) -> Subobject:
        return self.elements[i]

    def is_heyting(self) -> bool:
        rng = range(len(self))
        return all(
            self.leq[self.meet[s][t]][u] == self.leq[s][self.implies[t][u]]
            for s in rng for t in rng for u in rng
        )

    def is_distributive(self) -> bool:
        rng = range(len(self))
        m, j = self.meet, self.join
        return all(m[a][j[b][c]] == j[m[a][b]][m[a][c]] for a in rng for b in rng for c in rng)

    def is_boolean(self) -> bool:
        return all(self.neg[self.neg[i]] == i for i in range(len(self)))

    def non_boolean_witness(self) -> Subobject | None:
        for i in range(len(self)):
            if self.neg[self.neg[i]] != i:
                return self.elements[i]
        return None

    def is_chain(self) -> bool:
        rng = range(len(self))
        return all(self.leq[a][b] or self.leq[b][a] for a in rng for b in rng)


def forall_along(cat, f, S: Subobject) -> Subobject:
    """Right adjoint to pulling back subobjects along ``f``."""
    return cat.sub_forall(f, S)


def forall_along_bruteforce(cat, f, S: Subobject, limit: int = 4096) -> Subobject:
    """Largest T in Sub(cod f) with f*T <= S, found by scanning the whole lattice."""
    lat = cat.subobject_lattice(f.cod, limit)
    ok = [i for i, T in enumerate(lat.elements) if cat.sub_leq(cat.sub_pullback(f, T), S)]
    for i in ok:
        if all(lat.leq[j][i] for j in ok):
            return lat.elements[i]
    raise ValueError("adjoint does not exist")


def exists_along_bruteforce(cat, f, S: Subobject, limit: int = 4096) -> Subobject:
    """Least T in Sub(cod f) with S <= f*T."""
    lat = cat.subobject_lattice(f.cod, limit)
    ok = [i for i, T in enumerate(lat.elements) if cat.sub_leq(S, cat.sub_pullback(f, T))]
    for i in ok:
        if all(lat.leq[i][j] for j in ok):
            return lat.elements[i]
    raise ValueError("adjoint does not exist")
