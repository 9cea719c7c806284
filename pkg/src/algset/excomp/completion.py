"""Exact completion of finite sets with a class of maps.

Objects are setoids (X, R) with R an equivalence relation on the finite set
X; morphisms are functional relations, stored saturated so that equal
morphisms have equal data.  Pairs (x, y) of X x Y are indexed x * |Y| + y,
matching products of skeletal finite sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from algset.errors import (
    CompositionError,
    InconclusiveError,
    MalformedInput,
    PreconditionError,
    UnsupportedStructure,
)
from algset.fincat.base import AmbientCategory, Arrow, Subobject
from algset.fincat.finset import SkeletalFinSet, set_partitions
from algset.smallmaps.classes import MapClass

Pair = tuple[int, int]


@dataclass(frozen=True)
class ExObject:
    """A finite set with an equivalence relation, given as a subobject of X x X."""

    X: int
    R: Subobject

    @cached_property
    def labels(self) -> tuple[int, ...]:
        """Class of each element, numbered in order of first appearance."""
        first: dict[int, int] = {}
        out = []
        for x in range(self.X):
            rep = next(y for y in range(self.X) if self.related(x, y))
            out.append(first.setdefault(rep, len(first)))
        return tuple(out)

    @cached_property
    def classes(self) -> tuple[frozenset, ...]:
        n = max(self.labels, default=-1) + 1
        return tuple(frozenset(x for x in range(self.X) if self.labels[x] == c) for c in range(n))

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def related(self, x: int, y: int) -> bool:
        return x * self.X + y in self.R.data

    def __repr__(self) -> str:
        blocks = " ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in self.classes)
        return f"ExObject({self.X}: {blocks})"


@dataclass(frozen=True)
class ExMorphism:
    """A saturated functional relation F between the carriers."""

    dom: ExObject
    cod: ExObject
    pairs: frozenset

    @cached_property
    def table(self) -> tuple[int, ...]:
        """For each element of the domain, the class of its images."""
        out = [-1] * self.dom.X
        for x, y in self.pairs:
            out[x] = self.cod.labels[y]
        return tuple(out)

    def relation(self) -> Subobject:
        n = self.cod.X
        return Subobject(self.dom.X * n, frozenset(x * n + y for x, y in self.pairs))

    def __repr__(self) -> str:
        return f"ExMorphism({self.dom!r} -> {self.cod!r}: {self.table})"


def relation_of(X: int, pairs) -> Subobject:
    return Subobject(X * X, frozenset(x * X + y for x, y in pairs))


def relation_from_labels(labels) -> Subobject:
    n = len(labels)
    return relation_of(n, ((x, y) for x in range(n) for y in range(n) if labels[x] == labels[y]))


class ExCategory:
    """Finite setoids and functional relations over skeletal finite sets."""

    def __init__(self, base: AmbientCategory, name: str = "ex"):
        if not isinstance(base, SkeletalFinSet):
            raise UnsupportedStructure("the completion is implemented over finite sets only")
        self.base = base
        self.name = f"{name}[{base.name}]"

    # -- objects
    def obj(self, X: int, R: Subobject | None = None) -> ExObject:
        if R is None:
            return self.y(X)
        if not self.base.is_equivalence_relation(X, R):
            raise MalformedInput("not an equivalence relation")
        return ExObject(X, R)

    def from_labels(self, labels) -> ExObject:
        return ExObject(len(labels), relation_from_labels(labels))

    def y(self, X: int) -> ExObject:
        return ExObject(X, relation_of(X, ((x, x) for x in range(X))))

    def objects(self, max_size: int):
        """Every setoid with carrier of size at most max_size."""
        for n in range(max_size + 1):
            for labels in set_partitions(n):
                yield self.from_labels(labels)

    # -- morphisms
    def saturate(self, A: ExObject, B: ExObject, pairs) -> frozenset:
        out = set()
        for x, y in pairs:
            for x2 in A.classes[A.labels[x]]:
                for y2 in B.classes[B.labels[y]]:
                    out.add((x2, y2))
        return frozenset(out)

    def is_functional(self, A: ExObject, B: ExObject, pairs) -> bool:
        """Total, single-valued up to B's relation, and compatible with A's."""
        pairs = frozenset(pairs)
        if self.saturate(A, B, pairs) != pairs:
            return False
        images = [set() for _ in range(A.X)]
        for x, y in pairs:
            images[x].add(B.labels[y])
        return all(len(s) == 1 for s in images)

    def morphism(self, A: ExObject, B: ExObject, pairs) -> ExMorphism:
        sat = self.saturate(A, B, pairs)
        if not self.is_functional(A, B, sat):
            raise MalformedInput("relation is not functional")
        return ExMorphism(A, B, sat)

    def from_table(self, A: ExObject, B: ExObject, table) -> ExMorphism:
        """The morphism induced by a map of carriers (which must respect the relations)."""
        return self.morphism(A, B, ((x, table[x]) for x in range(A.X)))

    def y_arrow(self, f: Arrow) -> ExMorphism:
        return self.from_table(self.y(f.dom), self.y(f.cod), f.data)

    def identity(self, A: ExObject) -> ExMorphism:
        return ExMorphism(A, A, frozenset((x, y) for x in range(A.X) for y in range(A.X)
                                          if A.related(x, y)))

    def compose(self, G: ExMorphism, F: ExMorphism, *rest: ExMorphism) -> ExMorphism:
        if rest:
            return self.compose(self.compose(G, F), *rest)
        if F.cod != G.dom:
            raise CompositionError(f"cannot compose {G!r} after {F!r}")
        by_mid: dict[int, set] = {}
        for y, z in G.pairs:
            by_mid.setdefault(y, set()).add(z)
        return ExMorphism(F.dom, G.cod,
                          frozenset((x, z) for x, y in F.pairs for z in by_mid.get(y, ())))

    def hom(self, A: ExObject, B: ExObject):
        """One morphism per map from the classes of A to the classes of B."""
        for choice in product(range(B.n_classes), repeat=A.n_classes):
            yield ExMorphism(A, B, frozenset((x, y) for x in range(A.X)
                                             for y in B.classes[choice[A.labels[x]]]))

    def functional_relations(self, A: ExObject, B: ExObject, limit: int = 1 << 16):
        """Brute force: every subset of A x B that is a saturated functional relation."""
        cells = [(x, y) for x in range(A.X) for y in range(B.X)]
        if 2 ** len(cells) > limit:
            raise InconclusiveError(f"{2 ** len(cells)} candidate relations exceed the limit")
        for mask in range(2 ** len(cells)):
            pairs = frozenset(c for i, c in enumerate(cells) if mask >> i & 1)
            if self.is_functional(A, B, pairs):
                yield ExMorphism(A, B, pairs)

    def is_mono(self, F: ExMorphism) -> bool:
        """Distinct classes of the domain land in distinct classes."""
        return len({F.table[min(c)] for c in F.dom.classes}) == F.dom.n_classes

    def is_cover(self, F: ExMorphism) -> bool:
        return set(F.table) == set(range(F.cod.n_classes))

    def is_iso(self, F: ExMorphism) -> bool:
        return self.is_mono(F) and self.is_cover(F)

    def find_iso(self, A: ExObject, B: ExObject) -> ExMorphism | None:
        if A.n_classes != B.n_classes:
            return None
        return next((F for F in self.hom(A, B) if self.is_iso(F)), None)

    def mediators(self, apex: ExObject, legs, cone):
        """Morphisms m out of apex with legs[i] m == cone[i] for all i."""
        target = legs[0].dom
        return [m for m in self.hom(apex, target)
                if all(self.compose(l, m) == c for l, c in zip(legs, cone))]

    # -- limits and sums
    def product(self, A: ExObject, B: ExObject):
        n = A.X * B.X
        P = ExObject(n, relation_of(n, ((a1 * B.X + b1, a2 * B.X + b2)
                                        for a1 in range(A.X) for b1 in range(B.X)
                                        for a2 in range(A.X) for b2 in range(B.X)
                                        if A.related(a1, a2) and B.related(b1, b2))))
        p1 = self.from_table(P, A, [i // B.X for i in range(n)])
        p2 = self.from_table(P, B, [i % B.X for i in range(n)])
        return P, p1, p2

    def pullback(self, F: ExMorphism, G: ExMorphism):
        """Pairs (a, b) with F a and G b in the same class, up to R_A x R_B."""
        if F.cod != G.cod:
            raise CompositionError("pullback of morphisms with different codomains")
        A, B = F.dom, G.dom
        cells = [(a, b) for a in range(A.X) for b in range(B.X) if F.table[a] == G.table[b]]
        n = len(cells)
        P = ExObject(n, relation_of(n, ((i, j) for i, (a1, b1) in enumerate(cells)
                                        for j, (a2, b2) in enumerate(cells)
                                        if A.related(a1, a2) and B.related(b1, b2))))
        p1 = self.from_table(P, A, [a for a, _ in cells])
        p2 = self.from_table(P, B, [b for _, b in cells])
        return P, p1, p2

    def coproduct(self, A: ExObject, B: ExObject):
        n = A.X + B.X
        pairs = [(x, y) for x in range(A.X) for y in range(A.X) if A.related(x, y)]
        pairs += [(A.X + x, A.X + y) for x in range(B.X) for y in range(B.X) if B.related(x, y)]
        S = ExObject(n, relation_of(n, pairs))
        i1 = self.from_table(A, S, list(range(A.X)))
        i2 = self.from_table(B, S, [A.X + x for x in range(B.X)])
        return S, i1, i2

    def kernel_pair(self, F: ExMorphism) -> Subobject:
        A = F.dom
        return relation_of(A.X, ((x, y) for x in range(A.X) for y in range(A.X)
                                 if F.table[x] == F.table[y]))

    # -- subobjects (saturated subsets of the carrier)
    def is_saturated(self, A: ExObject, S: Subobject) -> bool:
        return all(y in S.data for x in S.data for y in A.classes[A.labels[x]])

    def subobjects(self, A: ExObject):
        for k in range(A.n_classes + 1):
            for cs in combinations(range(A.n_classes), k):
                yield Subobject(A.X, frozenset().union(*(A.classes[c] for c in cs)))

    def image(self, F: ExMorphism) -> Subobject:
        return Subobject(F.cod.X, frozenset(y for _, y in F.pairs))

    def sub_meet(self, S, T):
        return Subobject(S.base, S.data & T.data)

    def sub_join(self, S, T):
        return Subobject(S.base, S.data | T.data)

    def sub_implies(self, A: ExObject, S, T):
        """Union of the classes on which S implies T."""
        keep = [c for c in A.classes if all(x not in S.data or x in T.data for x in c)]
        return Subobject(A.X, frozenset().union(*keep))

    def sub_mono(self, A: ExObject, S: Subobject):
        """The subsetoid on S with its inclusion into A."""
        elems = sorted(S.data)
        n = len(elems)
        B = ExObject(n, relation_of(n, ((i, j) for i in range(n) for j in range(n)
                                        if A.related(elems[i], elems[j]))))
        return B, self.from_table(B, A, elems)

    # -- quotients
    def is_equivalence_on(self, A: ExObject, S: Subobject) -> bool:
        return S.data >= A.R.data and self.base.is_equivalence_relation(A.X, S)

    def quotient(self, A: ExObject, S: Subobject) -> ExMorphism:
        """The projection A -> (X, S) for an equivalence relation S containing R_A."""
        if not self.is_equivalence_on(A, S):
            raise PreconditionError("not an equivalence relation on the object")
        Q = ExObject(A.X, S)
        return ExMorphism(A, Q, frozenset((x, y) for x in range(A.X) for y in range(A.X)
                                          if Q.related(x, y)))

    def is_exact(self, A: ExObject, S: Subobject, q: ExMorphism) -> bool:
        return self.is_cover(q) and self.kernel_pair(q) == S

    def is_effective_cover(self, p: ExMorphism) -> bool:
        """p is a cover and the quotient by its kernel pair is iso to the codomain."""
        if not self.is_cover(p):
            return False
        K = ExObject(p.dom.X, self.kernel_pair(p))
        try:
            induced = self.morphism(K, p.cod, p.pairs)
        except MalformedInput:
            return False
        return self.is_iso(induced)

    def describe(self, A: ExObject) -> str:
        return repr(A)


# -- small maps in the completion ----------------------------------------------------------

@dataclass(frozen=True)
class QuasiPullbackWitness:
    """A square  yX' -d-> A,  yY' -e-> B  over  f: X' -> Y'  in the base class.

    Y' lists elements of B's carrier, X' lists pairs (index into Y', element of A).
    """

    f: Arrow
    Y: tuple[int, ...]
    Xp: tuple[Pair, ...]

    def to_json(self) -> dict:
        return {"f": list(self.f.data), "Y": list(self.Y), "X": [list(p) for p in self.Xp]}


class CompletedClass:
    """Arrows of the completion that fit a quasi-pullback square over a base small map."""

    def __init__(self, ex: ExCategory, base: MapClass, ceiling: int = 50_000):
        self.ex = ex
        self.base = base
        self.ceiling = ceiling
        self.label = f"completed[{base.label}]"

    def _square(self, F: ExMorphism, Y: tuple, Xp: tuple) -> QuasiPullbackWitness:
        f = Arrow(len(Xp), len(Y), tuple(i for i, _ in Xp))
        return QuasiPullbackWitness(f, Y, Xp)

    def _covers(self, F: ExMorphism, Y, Xp) -> bool:
        A, B = F.dom, F.cod
        if {B.labels[y] for y in Y} != set(range(B.n_classes)):
            return False
        have = {(i, A.labels[a]) for i, a in Xp}
        need = {(i, A.labels[a]) for i, y in enumerate(Y) for a in range(A.X)
                if F.table[a] == B.labels[y]}
        return have == need

    def candidates(self, F: ExMorphism):
        A, B = F.dom, F.cod
        if self.base.down_closed:
            # one element per class of B and per class of A over it
            Y = tuple(min(c) for c in B.classes)
            Xp = tuple((i, min(c)) for i, y in enumerate(Y) for c in A.classes
                       if F.table[min(c)] == B.labels[y])
            yield Y, Xp
            return
        count = 0
        for k in range(B.n_classes, B.X + 1):
            for Y in combinations(range(B.X), k):
                cells = [(i, a) for i, y in enumerate(Y) for a in range(A.X)
                         if F.table[a] == B.labels[y]]
                for m in range(len(cells) + 1):
                    for Xp in combinations(cells, m):
                        count += 1
                        if count > self.ceiling:
                            raise InconclusiveError("quasi-pullback search exceeded its ceiling")
                        yield Y, Xp

    def witness(self, F: ExMorphism) -> QuasiPullbackWitness | None:
        for Y, Xp in self.candidates(F):
            if not self._covers(F, Y, Xp):
                continue
            w = self._square(F, Y, Xp)
            if self.base.contains(w.f):
                return w
        return None

    def contains(self, F: ExMorphism) -> bool:
        return self.witness(F) is not None

    __contains__ = contains

    def is_bounded(self, A: ExObject, S: Subobject) -> bool:
        return self.contains(self.ex.sub_mono(A, S)[1])


def replay_witness(ex: ExCategory, cls: CompletedClass, F: ExMorphism,
                   w: QuasiPullbackWitness) -> dict[str, bool]:
    """Recheck a witness with the completion's own operations."""
    A, B = F.dom, F.cod
    yX, yY = ex.y(w.f.dom), ex.y(w.f.cod)
    out = {"in_base_class": cls.base.contains(w.f)}
    try:
        e = ex.from_table(yY, B, w.Y)
        d = ex.from_table(yX, A, [a for _, a in w.Xp])
    except MalformedInput:
        return {**out, "well_formed": False}
    fy = ex.y_arrow(w.f)
    out["commutes"] = ex.compose(F, d) == ex.compose(e, fy)
    out["cover"] = ex.is_cover(e)
    P, p1, p2 = ex.pullback(e, F)
    meds = ex.mediators(yX, (p1, p2), (fy, d))
    out["quasi_pullback"] = len(meds) == 1 and ex.is_cover(meds[0])
    return out


def fibre_class_census(F: ExMorphism) -> list[int]:
    """Oracle: number of classes of the domain over each class of the codomain."""
    A, B = F.dom, F.cod
    return [sum(1 for c in A.classes if F.table[min(c)] == b) for b in range(B.n_classes)]


# -- the construction and its checks ---------------------------------------------------------

@dataclass
class Completion:
    ex: ExCategory
    cls: CompletedClass
    base_checks: dict[str, str] = field(default_factory=dict)


def ex_complete(base: AmbientCategory, cls: MapClass, *, check_base: bool = True,
                strict: bool = False, budget=None, ceiling: int = 50_000) -> Completion:
    """The exact completion with the class of arrows covered by base small maps.

    With ``check_base`` the base class is first run through the axioms other
    than (BE) and the outcomes are recorded; with ``strict`` a refutation
    raises PreconditionError.  Classes failing some axioms (display maps)
    can still be completed when ``strict`` is off.
    """
    ex = ExCategory(base)
    checks = {}
    if check_base:
        from algset.smallmaps.axioms import check_axiom
        from algset.smallmaps.verdict import Budget, Outcome

        budget = budget or Budget(max_size=3)
        for ax in ("A1", "A2", "A3", "A4", "A5", "A6", "C", "HB", "US"):
            v = check_axiom(cls, ax, budget)
            checks[ax] = v.outcome.value
            if strict and v.outcome is Outcome.REFUTED:
                raise PreconditionError(f"base class fails {ax}: {v.note}")
    return Completion(ex, CompletedClass(ex, cls, ceiling), checks)
