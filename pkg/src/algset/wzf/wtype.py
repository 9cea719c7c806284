"""Well-founded trees: depth-truncated W-types and their bisimulation quotient."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as iproduct

from algset.errors import ResourceBoundError
from algset.wzf.polynomial import PolynomialSignature, polynomial_elements


@dataclass(frozen=True)
class WTree:
    """``sup(root, children)``; children are listed in fibre order."""

    root: int
    children: tuple["WTree", ...] = ()

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0)

    def collapse(self) -> frozenset:
        """The hereditarily finite set obtained by forgetting labels and multiplicities."""
        return frozenset(c.collapse() for c in self.children)


@dataclass
class WTypeResult:
    trees: tuple[WTree, ...]
    converged: bool
    census: list[int]                   # |W_k| for k = 0 .. depth
    converged_at: int | None = None
    initial_algebra_ok: bool | None = None
    algebra_checks: list = field(default_factory=list)


def wtype(sig: PolynomialSignature, depth: int, *, limit: int = 200_000,
          algebras: int = 5, seed: int = 0) -> WTypeResult:
    """Iterate W_0 = 0, W_{k+1} = P_f(W_k) up to ``depth``.

    When the iteration stabilizes the trees form the initial algebra; this
    is confirmed by checking that sup is a bijection P_f(W) -> W and that
    each of ``algebras`` seeded random P_f-algebras receives exactly one
    algebra morphism.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    arities = sig.arities
    level: list[WTree] = []
    census = [0]
    converged_at = None
    for k in range(depth):
        total = sum(len(level) ** n for n in arities)
        if total > limit:
            raise ResourceBoundError(f"W-type level {k + 1} has {total} trees", census)
        nxt = [WTree(y, kids) for y, n in enumerate(arities) for kids in iproduct(level, repeat=n)]
        census.append(len(nxt))
        if len(nxt) == len(level):
            converged_at = k
            census.pop()
            break
        level = nxt
    if converged_at is None and census[-1] == 0:
        converged_at = 0
    res = WTypeResult(tuple(level), converged_at is not None, census, converged_at)
    if res.converged:
        res.initial_algebra_ok, res.algebra_checks = check_initial_algebra(sig, res.trees, algebras, seed)
    return res


def sup_map(sig: PolynomialSignature, trees) -> dict:
    """The structure map P_f(W) -> W on explicit elements."""
    index = {t: i for i, t in enumerate(trees)}
    out = {}
    for y, t in polynomial_elements(sig, len(trees)):
        out[(y, t)] = index.get(WTree(y, tuple(trees[i] for i in t)))
    return out


def check_initial_algebra(sig: PolynomialSignature, trees, algebras: int = 5, seed: int = 0):
    """Bijectivity of sup and unique mediating maps into sampled algebras."""
    trees = list(trees)
    s = sup_map(sig, trees)
    bijective = None not in s.values() and sorted(s.values()) == list(range(len(trees)))
    rng = random.Random(seed)
    checks = []
    for _ in range(algebras):
        Z = rng.randint(1, 3)
        alpha = {e: rng.randrange(Z) for e in polynomial_elements(sig, Z)}
        count = 0
        for h in iproduct(range(Z), repeat=len(trees)):
            if all(h[trees.index(t)] == alpha[(t.root, tuple(h[trees.index(c)] for c in t.children))]
                   for t in trees):
                count += 1
        checks.append({"Z": Z, "morphisms": count})
    return bijective and all(c["morphisms"] == 1 for c in checks), checks


def bisim_quotient(trees) -> list[WTree]:
    """One representative per extensional-bisimulation class, in first-seen order."""
    seen = {}
    for t in trees:
        seen.setdefault(t.collapse(), t)
    return list(seen.values())
