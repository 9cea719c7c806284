"""Instance checks of the embedding into the completion and of its quotients."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from algset.errors import PreconditionError
from algset.excomp.completion import (
    Completion,
    ExCategory,
    ExMorphism,
    ExObject,
    replay_witness,
)
from algset.fincat.base import Subobject
from algset.fincat.finset import set_partitions


@dataclass
class EmbeddingReport:
    max_size: int
    fully_faithful: bool = True
    subobject_bijective: bool = True
    heyting_preserved: bool = True
    sums_preserved: bool = True
    smallness_preserved_and_reflected: bool = True
    essentially_surjective: bool = True
    counts: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.fully_faithful and self.subobject_bijective and self.heyting_preserved
                and self.sums_preserved and self.smallness_preserved_and_reflected
                and self.essentially_surjective)

    def to_json(self) -> dict:
        return {"max_size": self.max_size, "ok": self.ok, "fully_faithful": self.fully_faithful,
                "subobject_bijective": self.subobject_bijective,
                "heyting_preserved": self.heyting_preserved,
                "sums_preserved": self.sums_preserved,
                "smallness_preserved_and_reflected": self.smallness_preserved_and_reflected,
                "essentially_surjective": self.essentially_surjective,
                "counts": dict(self.counts), "failures": list(self.failures)}


def _fail(report: EmbeddingReport, flag: str, message: str) -> None:
    setattr(report, flag, False)
    if len(report.failures) < 20:
        report.failures.append(message)


def check_fully_faithful(ex: ExCategory, X: int, Y: int) -> bool:
    """y is a bijection hom(X, Y) -> hom(yX, yY); the right side by brute force."""
    images = {ex.y_arrow(f) for f in ex.base.hom(X, Y)}
    n_base = sum(1 for _ in ex.base.hom(X, Y))
    brute = set(ex.functional_relations(ex.y(X), ex.y(Y)))
    return len(images) == n_base and images == brute


def check_subobjects(ex: ExCategory, X: int) -> bool:
    """Monos into yX from every setoid up to |X|, grouped by image, match Sub(X).

    Monos with the same image must be isomorphic over yX.
    """
    yX = ex.y(X)
    by_image: dict[Subobject, ExMorphism] = {}
    for B in ex.objects(X):
        for m in ex.hom(B, yX):
            if not ex.is_mono(m):
                continue
            S = ex.image(m)
            first = by_image.setdefault(S, m)
            if first is m:
                continue
            if not any(ex.is_iso(h) and ex.compose(first, h) == m for h in ex.hom(B, first.dom)):
                return False
    return set(by_image) == set(ex.base.subobjects(X))


def check_heyting(ex: ExCategory, X: int) -> bool:
    yX = ex.y(X)
    base = ex.base
    subs = list(base.subobjects(X))
    if set(ex.subobjects(yX)) != set(subs):
        return False
    return all(ex.sub_meet(S, T) == base.sub_meet(S, T)
               and ex.sub_join(S, T) == base.sub_join(S, T)
               and ex.sub_implies(yX, S, T) == base.sub_implies(S, T)
               for S in subs for T in subs)


def check_sums(ex: ExCategory, X: int, Y: int) -> bool:
    S, i1, i2 = ex.coproduct(ex.y(X), ex.y(Y))
    C, j1, j2 = ex.base.coproduct(X, Y)
    return S == ex.y(C) and i1 == ex.y_arrow(j1) and i2 == ex.y_arrow(j2)


def verify_embedding(completion: Completion, max_size: int = 4,
                     smallness_size: int | None = None) -> EmbeddingReport:
    """Check y on every object of the base up to ``max_size``."""
    ex, cls = completion.ex, completion.cls
    base = ex.base
    rep = EmbeddingReport(max_size)
    sizes = range(max_size + 1)
    n = 0
    for X in sizes:
        for Y in sizes:
            n += 1
            if not check_fully_faithful(ex, X, Y):
                _fail(rep, "fully_faithful", f"hom({X}, {Y})")
            if X + Y <= max_size and not check_sums(ex, X, Y):
                _fail(rep, "sums_preserved", f"{X} + {Y}")
        if not check_subobjects(ex, X):
            _fail(rep, "subobject_bijective", f"Sub({X})")
        if not check_heyting(ex, X):
            _fail(rep, "heyting_preserved", f"Sub({X})")
    rep.counts["hom_pairs"] = n
    arrows = 0
    small_sizes = range((max_size if smallness_size is None else smallness_size) + 1)
    for X in small_sizes:
        for Y in small_sizes:
            for f in base.hom(X, Y):
                arrows += 1
                F = ex.y_arrow(f)
                w = cls.witness(F)
                if (w is not None) != cls.base.contains(f):
                    _fail(rep, "smallness_preserved_and_reflected", f"{f!r}")
                elif w is not None and not all(replay_witness(ex, cls, F, w).values()):
                    _fail(rep, "smallness_preserved_and_reflected", f"replay of {f!r}")
    rep.counts["arrows"] = arrows
    objs = 0
    for A in ex.objects(max_size):
        objs += 1
        if ex.find_iso(ex.y(A.n_classes), A) is None:
            _fail(rep, "essentially_surjective", repr(A))
    rep.counts["objects"] = objs
    return rep


# -- quotients -------------------------------------------------------------------------

@dataclass
class QuotientReport:
    source: ExObject
    relation: Subobject
    quotient: ExObject
    projection: ExMorphism
    exact: bool
    stable: list[bool]

    @property
    def ok(self) -> bool:
        return self.exact and all(self.stable)

    def to_json(self) -> dict:
        return {"source": repr(self.source), "quotient": repr(self.quotient),
                "classes": self.quotient.n_classes, "exact": self.exact,
                "stable": list(self.stable)}


def sample_arrows_into(ex: ExCategory, Q: ExObject, k: int, rng: random.Random, max_size: int = 3):
    pool = [F for B in ex.objects(max_size) for F in ex.hom(B, Q)]
    return rng.sample(pool, min(k, len(pool)))


def quotient_in_completion(completion: Completion, A: ExObject, S: Subobject,
                           samples: int = 5, seed: int = 0) -> QuotientReport:
    """Quotient A by the bounded equivalence relation S and test stability.

    Stability: pulling the projection back along sampled arrows into the
    quotient gives an effective cover (it is the quotient of its kernel pair).
    """
    ex, cls = completion.ex, completion.cls
    if not ex.is_equivalence_on(A, S):
        raise PreconditionError("not an equivalence relation on the object")
    P, _, _ = ex.product(A, A)
    if not cls.is_bounded(P, Subobject(P.X, S.data)):
        raise PreconditionError("the equivalence relation is not bounded")
    q = ex.quotient(A, S)
    exact = ex.is_exact(A, S, q)
    rng = random.Random(seed)
    stable = []
    for G in sample_arrows_into(ex, q.cod, samples, rng):
        _, _, p2 = ex.pullback(q, G)
        stable.append(ex.is_effective_cover(p2))
    return QuotientReport(A, S, q.cod, q, exact, stable)


def coarser_relations(ex: ExCategory, A: ExObject):
    """Equivalence relations on A's carrier that contain A's relation."""
    for labels in set_partitions(A.n_classes):
        yield Subobject(A.X * A.X, frozenset(
            x * A.X + y for x in range(A.X) for y in range(A.X)
            if labels[A.labels[x]] == labels[A.labels[y]]))


def check_bounded_quotients(completion: Completion, max_size: int = 3, samples: int = 5,
                            seed: int = 0) -> dict:
    """Every bounded equivalence relation on every setoid up to max_size."""
    ex, cls = completion.ex, completion.cls
    tried = ok = skipped = 0
    failures = []
    for A in ex.objects(max_size):
        P, _, _ = ex.product(A, A)
        for S in coarser_relations(ex, A):
            if not cls.is_bounded(P, Subobject(P.X, S.data)):
                skipped += 1
                continue
            tried += 1
            r = quotient_in_completion(completion, A, S, samples, seed)
            if r.ok:
                ok += 1
            else:
                failures.append(r.to_json())
    return {"relations": tried, "stable": ok, "unbounded": skipped, "failures": failures[:10],
            "ok": ok == tried}


def census(completion: Completion, max_size: int = 3) -> list[dict]:
    """Objects and morphisms of the completion by carrier size bound."""
    ex = completion.ex
    out = []
    for n in range(max_size + 1):
        objs = list(ex.objects(n))
        out.append({"bound": n, "objects": len(objs),
                    "morphisms": sum(1 for A in objs for B in objs for _ in ex.hom(A, B))})
    return out
