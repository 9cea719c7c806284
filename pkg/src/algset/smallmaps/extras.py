"""Witness objects and the more elaborate axiom checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as iproduct

from algset.errors import PreconditionError, ResourceBoundError, UnsupportedStructure
from algset.fincat.base import AmbientCategory, Arrow
from algset.fincat.finset import SkeletalFinSet
from algset.smallmaps.classes import MapClass
from algset.smallmaps.verdict import AxiomVerdict, Outcome


# -- universal small maps ---------------------------------------------------------

@dataclass(frozen=True)
class UniversalMapWitness:
    """A candidate universal small map together with its representing procedure."""

    pi: Arrow
    strong: bool = False

    def represent(self, cat: SkeletalFinSet, f: Arrow) -> dict | None:
        from algset.smallmaps.axioms import representation_diagram

        return representation_diagram(cat, self.pi, f, self.strong)

    def verify(self, cls: MapClass, f: Arrow) -> bool:
        """Re-check the diagram for f in the kernel."""
        cat = cls.category
        d = self.represent(cat, f)
        if d is None or not cls.contains(self.pi) or not cls.contains(f):
            return False
        square = cat.is_pullback_square if self.strong else cat.quasi_pullback_check
        return (square(d["A->X"], d["A->B"], f, d["p"])
                and cat.is_pullback_square(d["A->B"], d["A->E"], d["B->U"], self.pi)
                and cat.is_cover(d["p"]))


# -- multi-valued functions ---------------------------------------------------------

@dataclass(frozen=True)
class MultiValuedSpan:
    """A span A <<- P -> B over X with P -> X small and the left leg a cover."""

    a: Arrow        # A -> X
    b: Arrow        # B -> X
    left: Arrow     # P -> A
    right: Arrow    # P -> B

    def apex_map(self, cat: AmbientCategory) -> Arrow:
        return cat.compose(self.a, self.left)

    def validate(self, cls: MapClass) -> bool:
        cat = cls.category
        if cat.compose(self.a, self.left) != cat.compose(self.b, self.right):
            return False
        # jointly monic: the induced map into A x_X B is monic
        into = cat.pullback_mediator(self.a, self.b, self.left, self.right)
        return (cat.is_mono(into) and cat.is_cover(self.left)
                and cls.contains(self.apex_map(cat)))


def _graphs(As, Bs):
    """Function graphs from the list As to the list Bs, as frozensets of pairs."""
    for values in iproduct(Bs, repeat=len(As)):
        yield frozenset(zip(As, values))


def _total_relations(As, Bs):
    pairs = [(x, y) for x in As for y in Bs]
    for k in range(len(pairs) + 1):
        for rel in combinations(pairs, k):
            rel = frozenset(rel)
            if all(any((x, y) in rel for y in Bs) for x in As):
                yield rel


def check_fullness_instance(cls: MapClass, a: Arrow, b: Arrow, *, test_size: int = 1,
                            relation_bound: int = 6) -> AxiomVerdict:
    """(F) for the small maps a: A -> X and b: B -> X in finite sets.

    The witness takes p = id, C = the family of all function graphs A_x -> B_x
    and P the tautological span over C.  It is tested against every
    g: D -> X with |D| <= test_size and every multi-valued Q whose fibres are
    relations on at most ``relation_bound`` pairs.  When the class bounds
    fibres from above and the number of function graphs over some x is too
    large, no witness can exist: every function graph is a minimal
    multi-valued function, so each one must occur separately in C.
    """
    cat = cls.category
    if not isinstance(cat, SkeletalFinSet):
        raise UnsupportedStructure("fullness witnesses are built for finite sets only")
    if not (cls.contains(a) and cls.contains(b)) or a.cod != b.cod:
        raise PreconditionError("fullness needs two small maps into one object")
    X = a.cod
    Af, Bf = cat.fibres(a), cat.fibres(b)
    C_elems = [(x, h) for x in range(X) for h in _graphs(Af[x], Bf[x])]
    f = Arrow(len(C_elems), X, tuple(x for x, _ in C_elems))
    diagram = {"A->X": a, "B->X": b}
    if not cls.contains(f):
        bad = next(x for x, n in enumerate(cat.fibre_census(f)) if not cls.fibre_ok or not cls.fibre_ok(n))
        n = len(Bf[bad]) ** len(Af[bad])
        if cls.fibre_ok is not None and cls.down_closed:
            return AxiomVerdict("F", Outcome.REFUTED, {"x": bad, "minimal_multivalued": n}, 1,
                                diagram, f"{n} minimal multi-valued functions over {bad} are not a small family")
        return AxiomVerdict("F", Outcome.INCONCLUSIVE, {"x": bad}, 1, diagram,
                            "graph family is not small and the class is not fibre-bounded")
    # P over C is the graph itself: apex elements (c, pair)
    P_elems = [(c, pair) for c, (x, h) in enumerate(C_elems) for pair in sorted(h)]
    P_to_C = Arrow(len(P_elems), len(C_elems), tuple(c for c, _ in P_elems))
    if not cls.contains(P_to_C):
        return AxiomVerdict("F", Outcome.INCONCLUSIVE, {}, 1, diagram, "graph span is not small")
    n = 0
    for D in range(test_size + 1):
        for g in cat.hom(D, X):
            fam = []
            for d in range(D):
                x = g.data[d]
                if len(Af[x]) * len(Bf[x]) > relation_bound:
                    fam = None
                    break
                fam.append(list(_total_relations(Af[x], Bf[x])))
            if fam is None:
                continue
            for Q in iproduct(*fam):
                Q_apex = Arrow(sum(len(q) for q in Q), D, tuple(d for d, q in enumerate(Q) for _ in q))
                if not cls.contains(Q_apex):
                    continue
                n += 1
                E = [(d, c) for d in range(D) for c, (x, h) in enumerate(C_elems)
                     if x == g.data[d] and h <= Q[d]]
                xmap = Arrow(len(E), D, tuple(d for d, _ in E))
                ymap = Arrow(len(E), len(C_elems), tuple(c for _, c in E))
                ok = (cat.compose(g, xmap) == cat.compose(f, ymap) and cat.is_cover(xmap)
                      and all(C_elems[c][1] <= Q[d] for d, c in E))
                if not ok:
                    return AxiomVerdict("F", Outcome.REFUTED, {"g": g, "Q": [sorted(q) for q in Q]}, n,
                                        {**diagram, "g": g}, "witness family misses a multi-valued function")
    return AxiomVerdict("F", Outcome.PASSED_SAMPLED, {"tests": n, "C": f}, n, {})


# -- natural numbers objects ---------------------------------------------------------

@dataclass
class NnoResult:
    candidate: tuple | None
    candidates: int = 0
    refuters: dict = field(default_factory=dict)


def _mediators(cat, N, z, s, X, x0, f):
    out = []
    for h in cat.hom(N, X):
        if cat.compose(h, z) == x0 and cat.compose(h, s) == cat.compose(f, h):
            out.append(h)
            if len(out) > 1:
                break
    return out


def nno_detect(cat: AmbientCategory, max_size: int, ceiling: int = 200_000) -> NnoResult:
    """Look for (N, 0, s) with N of size <= max_size that is initial among
    algebras 1 -> X -> X with X of size <= max_size + 1.

    A finite survivor would only be a candidate, never a proof, so a
    survivor is reported without being declared a natural numbers object.
    """
    one = cat.terminal()
    tests = list(cat.objects(max_size + 1))
    res = NnoResult(None)
    work = 0
    for N in cat.objects(max_size):
        for z in cat.hom(one, N):
            for s in cat.hom(N, N):
                res.candidates += 1
                refuted = False
                for X in tests:
                    for x0 in cat.hom(one, X):
                        for f in cat.hom(X, X):
                            work += 1
                            if work > ceiling:
                                raise ResourceBoundError("nno search hit the ceiling", res.candidates)
                            if len(_mediators(cat, N, z, s, X, x0, f)) != 1:
                                res.refuters[repr((z, s))] = (x0, f)
                                refuted = True
                                break
                        if refuted:
                            break
                    if refuted:
                        break
                if not refuted and res.candidate is None:
                    res.candidate = (N, z, s)
    return res


# -- small objects ------------------------------------------------------------------

class SmallObjects(AmbientCategory):
    """Full subcategory of small objects; constructions are those of the host."""

    def __init__(self, cls: MapClass):
        self.cls = cls
        self.host = cls.category
        self.name = f"small[{cls.label}]({self.host.name})"
        self.capabilities = self.host.capabilities

    def objects(self, max_size):
        return (X for X in self.host.objects(max_size) if self.cls.is_small_object(X))

    def contains_object(self, X):
        return self.host.contains_object(X) and self.cls.is_small_object(X)


def _delegate(name):
    def method(self, *args, **kwargs):
        return getattr(self.host, name)(*args, **kwargs)
    method.__name__ = name
    return method


for _name in ("size", "hom", "identity", "_compose", "terminal", "initial", "product",
              "tuple_arrow", "pullback", "pullback_mediator", "equalizer", "coproduct",
              "copair", "image_factorization", "is_mono", "is_cover", "subobjects", "sub_top",
              "sub_bottom", "sub_meet", "sub_join", "sub_implies", "sub_leq", "sub_pullback",
              "sub_image", "sub_forall", "sub_mono", "sub_of_mono", "quotient", "fibre_census",
              "terminal_arrow", "initial_arrow", "equivalence_relations", "pi_along", "describe"):
    setattr(SmallObjects, _name, _delegate(_name))
del _name


def small_object_subcategory(cls: MapClass, max_size: int = 3) -> tuple[SmallObjects, dict[str, bool]]:
    """The category of small objects with closure checks of its pretopos structure."""
    S = SmallObjects(cls)
    cat = cls.category
    small = cls.is_small_object
    objs = list(S.objects(max_size))
    checks = {"terminal": small(cat.terminal()), "initial": small(cat.initial())}
    checks["pullbacks"] = all(
        small(cat.pullback(f, g)[0])
        for A in objs for B in objs for C in objs
        for f in cat.hom(A, C) for g in cat.hom(B, C))
    checks["sums"] = all(small(cat.coproduct(A, B)[0]) for A in objs for B in objs)
    checks["images"] = all(
        small(cat.image_factorization(f)[0].cod) for A in objs for B in objs for f in cat.hom(A, B))
    checks["subobjects"] = all(small(cat.sub_mono(T).dom) for A in objs for T in cat.subobjects(A))
    try:
        checks["quotients"] = all(
            small(cat.quotient(A, R).cod) and cat.is_exact(A, R, cat.quotient(A, R))
            for A in objs for R in cat.equivalence_relations(A))
    except UnsupportedStructure:
        checks["quotients"] = False
    checks["heyting"] = all(
        cat.subobject_lattice(A).is_heyting() for A in objs)
    return S, checks
