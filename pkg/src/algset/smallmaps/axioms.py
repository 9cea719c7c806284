"""Bounded checks of the small-map axioms.

Every check enumerates all diagrams whose given objects have size at most
``budget.max_size`` (see :class:`~algset.smallmaps.catalog.Catalog`).
Universal statements that survive the enumeration are PASSED-SAMPLED;
existential statements backed by a kernel-verified construction are
WITNESSED; a violation is REFUTED and carries a diagram of live arrows that
:func:`replay` can re-check; a search that runs out of budget is
INCONCLUSIVE.
"""

from __future__ import annotations

from collections import Counter
from math import comb
from itertools import combinations_with_replacement, product as iproduct
from typing import Callable

from algset.errors import (
    AlgSetError,
    InconclusiveError,
    MalformedInput,
    PreconditionError,
    ResourceBoundError,
    UnsupportedStructure,
)
from algset.fincat.base import AmbientCategory, Arrow
from algset.fincat.finset import SkeletalFinSet
from algset.smallmaps.catalog import Catalog
from algset.smallmaps.classes import MapClass
from algset.smallmaps.verdict import AXIOMS, AxiomVerdict, Budget, Outcome, normalize_axiom

PASS, WIT, REF, INC = Outcome.PASSED_SAMPLED, Outcome.WITNESSED, Outcome.REFUTED, Outcome.INCONCLUSIVE


class _Ctx:
    def __init__(self, cls: MapClass, budget: Budget, catalog: Catalog | None):
        self.cls = cls
        self.cat: AmbientCategory = cls.category
        self.budget = budget
        self.catalog = catalog if catalog is not None and catalog.cat is cls.category \
            and catalog.max_size == budget.max_size else Catalog(cls.category, budget.max_size)
        self._memo: dict = {}

    def small(self, f: Arrow) -> bool:
        hit = self._memo.get(f)
        if hit is None:
            hit = self._memo[f] = bool(self.cls.contains(f))
        return hit

    @property
    def is_finset(self) -> bool:
        return isinstance(self.cat, SkeletalFinSet)


def _universal(axiom: str, instances, violates: Callable, severity=None) -> AxiomVerdict:
    """Fold over ``instances``; ``violates(inst)`` returns a diagram or None."""
    n = 0
    worst = None
    count = 0
    for inst in instances:
        n += 1
        diagram = violates(inst)
        if diagram is None:
            continue
        count += 1
        if severity is None:
            return AxiomVerdict(axiom, REF, {"counterexamples_seen": 1}, n, diagram)
        s = severity(diagram)
        if worst is None or s > worst[0]:
            worst = (s, diagram)
    if worst is not None:
        return AxiomVerdict(axiom, REF, {"counterexamples_seen": count}, n, worst[1])
    return AxiomVerdict(axiom, PASS, {"instances": n}, n)


# -- (A1)-(A6) ---------------------------------------------------------------

def _common_cod_pairs(ctx: _Ctx, second_filter=None):
    cat_ = ctx.catalog
    for A in cat_.objects:
        into = list(cat_.arrows_into(A))
        second = into if second_filter is None else [p for p in into if second_filter(p)]
        for f in into:
            for p in second:
                yield f, p


def check_a1(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat

    def violates(inst):
        f, p = inst
        if not ctx.small(f):
            return None
        _, g, _ = cat.pullback(p, f)
        return None if ctx.small(g) else {"f": f, "p": p, "g": g}

    return _universal("A1", _common_cod_pairs(ctx), violates)


def check_a2(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat

    def violates(inst):
        f, p = inst
        if ctx.small(f):
            return None
        _, g, _ = cat.pullback(p, f)
        return {"f": f, "p": p, "g": g} if ctx.small(g) else None

    return _universal("A2", _common_cod_pairs(ctx, cat.is_cover), violates)


def check_a3(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat
    smalls = [f for f in ctx.catalog.arrows() if ctx.small(f)]

    def violates(inst):
        f1, f2 = inst
        s = cat.sum_arrows(f1, f2)
        return None if ctx.small(s) else {"f1": f1, "f2": f2, "sum": s}

    return _universal("A3", iproduct(smalls, smalls), violates)


def check_a4(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat
    one = cat.terminal()
    two, _, _ = cat.coproduct(one, one)
    maps = [cat.initial_arrow(one), cat.identity(one), cat.terminal_arrow(two)]

    def violates(m):
        return None if ctx.small(m) else {"map": m}

    return _universal("A4", maps, violates)


def check_a5(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat
    cat_ = ctx.catalog

    def instances():
        for B in cat_.objects:
            firsts = [f for f in cat_.arrows_into(B) if ctx.small(f)]
            seconds = [g for g in cat_.arrows_from(B) if ctx.small(g)]
            for f in firsts:
                for g in seconds:
                    yield f, g

    def violates(inst):
        f, g = inst
        gf = cat.compose(g, f)
        return None if ctx.small(gf) else {"f": f, "g": g, "composite": gf}

    def severity(d):
        try:
            return max(cat.fibre_census(d["composite"]), default=0)
        except UnsupportedStructure:
            return 0

    return _universal("A5", instances(), violates, severity)


def check_a6(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat
    cat_ = ctx.catalog

    def instances():
        for Y in cat_.objects:
            covers = cat_.covers_into(Y)
            for f in cat_.arrows_from(Y):
                if ctx.small(f):
                    continue
                for p in covers:
                    yield p, f

    def violates(inst):
        p, f = inst
        g = cat.compose(f, p)
        return {"p": p, "f": f, "g": g} if ctx.small(g) else None

    return _universal("A6", instances(), violates)


# -- (C) -----------------------------------------------------------------------

def _collection_witness(ctx: _Ctx, p: Arrow, f: Arrow):
    """A quasi-pullback square ``f p k = h g`` with h a cover and g small."""
    cat = ctx.cat
    A = f.cod
    idA = cat.identity(A)
    X = p.cod

    def verify(k, g, h):
        return (cat.is_cover(h) and ctx.small(g)
                and cat.quasi_pullback_check(cat.compose(p, k), g, f, h))

    # sections of p: Z = X, B = A, h = id
    for s in ctx.catalog.hom(X, p.dom) if cat.size(X) <= ctx.budget.max_size else cat.hom(X, p.dom):
        if cat.compose(p, s) == cat.identity(X):
            if verify(s, f, idA):
                return {"Z": X, "k": s, "g": f, "h": idA}
            break
    # Z = Y, k = id
    k = cat.identity(p.dom)
    g = cat.compose(f, p)
    if verify(k, g, idA):
        return {"Z": p.dom, "k": k, "g": g, "h": idA}
    # bounded search over Z, k with B = A
    for Z in cat.objects(ctx.budget.witness_size):
        for k in cat.hom(Z, p.dom):
            g = cat.compose(f, p, k)
            if verify(k, g, idA):
                return {"Z": Z, "k": k, "g": g, "h": idA}
    return None


def check_c(ctx: _Ctx) -> AxiomVerdict:
    cat_ = ctx.catalog
    n = 0
    for X in cat_.objects:
        covers = cat_.covers_into(X)
        smalls = [f for f in cat_.arrows_from(X) if ctx.small(f)]
        for p in covers:
            for f in smalls:
                n += 1
                w = _collection_witness(ctx, p, f)
                if w is None:
                    return AxiomVerdict("C", INC, {"instances": n}, n, {"p": p, "f": f},
                                        "no collection square found within the witness budget")
    return AxiomVerdict("C", PASS, {"instances": n, "witness": "verified quasi-pullback per instance"}, n)


# -- (R) -----------------------------------------------------------------------

def _fibre_multiset_candidates(bound: int):
    """Universal-map candidates pi: E -> U up to iso, as sorted fibre-size tuples."""
    for U in range(1, bound + 1):
        for fibres in combinations_with_replacement(range(bound + 1), U):
            if sum(fibres) <= bound:
                yield fibres


def _pi_from_fibres(fibres) -> Arrow:
    table = tuple(u for u, n in enumerate(fibres) for _ in range(n))
    return Arrow(len(table), len(fibres), table)


def _fibre_ok(nx: int, ne: int, strong: bool) -> bool:
    if strong:
        return nx == ne
    return ne >= nx and (nx > 0 or ne == 0)


def representation_diagram(cat: SkeletalFinSet, pi: Arrow, f: Arrow, strong: bool):
    """Build and kernel-verify the (R) diagram for f with B = Y and p = id."""
    efib = cat.fibres(pi)
    xfib = cat.fibres(f)
    choice = []
    for xs in xfib:
        us = [u for u, es in enumerate(efib) if _fibre_ok(len(xs), len(es), strong)]
        if not us:
            return None
        choice.append(us[0])
    Y = f.cod
    b = Arrow(Y, pi.cod, tuple(choice))
    A, a_pi, a_b = cat.pullback(pi, b)
    # A -> X: on the fibre over y, send the i-th element of E_u to the (i mod |X_y|)-th of X_y
    pos_in_fibre = {}
    for es in efib:
        for i, e in enumerate(es):
            pos_in_fibre[e] = i
    table = []
    for e, y in zip(a_pi.data, a_b.data):
        xs = xfib[y]
        table.append(xs[pos_in_fibre[e] % len(xs)])
    a_x = Arrow(A, f.dom, tuple(table))
    p = cat.identity(Y)
    left_ok = (cat.is_pullback_square if strong else cat.quasi_pullback_check)(a_x, a_b, f, p)
    right_ok = cat.is_pullback_square(a_b, a_pi, b, pi)
    if not (left_ok and right_ok and cat.is_cover(p) and cat.is_cover(a_x)):
        return None
    return {"f": f, "A": A, "A->X": a_x, "A->B": a_b, "B->U": b, "p": p, "A->E": a_pi}


def check_r(ctx: _Ctx, strong: bool = False) -> AxiomVerdict:
    axiom = "R-strong" if strong else "R"
    if not ctx.is_finset:
        return AxiomVerdict(axiom, INC, {}, 0, {},
                            "universal-map search is implemented for finite sets only")
    cat: SkeletalFinSet = ctx.cat
    bound = ctx.budget.r_bound
    tests = [f for f in ctx.catalog.arrows() if ctx.small(f)]
    seen = set(tests)
    for n in range(bound + 2):
        t = cat.terminal_arrow(n)
        if t not in seen and ctx.small(t):
            tests.append(t)
            seen.add(t)
    refuted = {}
    n_cands = 0
    for fibres in _fibre_multiset_candidates(bound):
        pi = _pi_from_fibres(fibres)
        if not ctx.small(pi):
            continue
        n_cands += 1
        bad = None
        for f in tests:
            need = Counter(cat.fibre_census(f))
            if not all(any(_fibre_ok(nx, ne, strong) for ne in fibres) for nx in need):
                bad = f
                break
        if bad is not None:
            refuted[str(fibres)] = bad
            continue
        diagrams = []
        for f in tests:
            d = representation_diagram(cat, pi, f, strong)
            if d is None:
                break
            diagrams.append(d)
        else:
            return AxiomVerdict(axiom, WIT, {"pi": pi, "fibres": list(fibres),
                                             "diagrams_verified": len(diagrams)},
                                len(tests), {"pi": pi, "example": diagrams[-1] if diagrams else {}})
    return AxiomVerdict(axiom, INC, {"candidates": n_cands, "refuters": refuted},
                        len(tests), {}, f"no universal small map with |E|, |U| <= {bound}")


# -- (PiE) / (PiS) -------------------------------------------------------------

def _sorted_maps(dom: int, cod: int):
    """Nondecreasing tables: one representative per iso class over the codomain."""
    for t in combinations_with_replacement(range(cod), dom):
        yield Arrow(dom, cod, t)


def _pi_instances(ctx: _Ctx):
    """Pairs (f: X -> Y small, p: P -> X).

    For finite sets one representative per isomorphism class of diagram is
    enough, since every checked property is invariant under isomorphism.
    """
    cat = ctx.cat
    n = ctx.budget.max_size
    if ctx.is_finset:
        for Y in range(n + 1):
            for X in range(n + 1):
                for f in _sorted_maps(X, Y):
                    census = list(cat.fibre_census(f))
                    if census != sorted(census, reverse=True) or not ctx.small(f):
                        continue
                    for P in range(n + 1):
                        for p in _sorted_maps(P, X):
                            yield f, p
        return
    for f in ctx.catalog.arrows():
        if not ctx.small(f):
            continue
        for p in ctx.catalog.arrows_into(f.dom):
            yield f, p


def check_pie(ctx: _Ctx) -> AxiomVerdict:
    from algset.smallmaps.power import verify_pi

    cat = ctx.cat
    tests = list(cat.objects(ctx.budget.test_size))
    n = 0
    try:
        for f, p in _pi_instances(ctx):
            n += 1
            res = cat.pi_along(f, p)
            if not verify_pi(cat, f, p, res, tests, ctx.budget.ceiling):
                return AxiomVerdict("PiE", REF, {"instances": n}, n,
                                    {"f": f, "p": p, "pi": res.arrow, "counit": res.counit})
    except UnsupportedStructure as exc:
        return AxiomVerdict("PiE", INC, {"instances": n}, n, {}, str(exc))
    except (ResourceBoundError, InconclusiveError) as exc:
        return AxiomVerdict("PiE", INC, {"instances": n}, n, {}, str(exc))
    return AxiomVerdict("PiE", PASS, {"instances": n, "test_size": ctx.budget.test_size}, n)


def check_pis(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat
    n = 0
    try:
        for f, p in _pi_instances(ctx):
            if not ctx.small(p):
                continue
            n += 1
            res = cat.pi_along(f, p)
            if not ctx.small(res.arrow):
                return AxiomVerdict("PiS", REF, {"instances": n}, n,
                                    {"f": f, "p": p, "pi": res.arrow})
    except (UnsupportedStructure, ResourceBoundError, InconclusiveError) as exc:
        return AxiomVerdict("PiS", INC, {"instances": n}, n, {}, str(exc))
    return AxiomVerdict("PiS", PASS, {"instances": n}, n)


# -- (WE) ----------------------------------------------------------------------

def check_we(ctx: _Ctx) -> AxiomVerdict:
    from algset.wzf.polynomial import PolynomialSignature
    from algset.wzf.wtype import wtype

    if not ctx.is_finset:
        return AxiomVerdict("WE", INC, {}, 0, {}, "W-type iteration is implemented for finite sets")
    depth = ctx.budget.max_size + 2
    converged, open_ = 0, []
    n = 0
    for Y in range(ctx.budget.max_size + 1):
        for X in range(ctx.budget.max_size + 1):
            for f in _sorted_maps(X, Y):
                if not ctx.small(f):
                    continue
                n += 1
                try:
                    res = wtype(PolynomialSignature(ctx.cat, f), depth, limit=ctx.budget.ceiling)
                except ResourceBoundError:
                    open_.append(f)
                    continue
                if res.converged and res.initial_algebra_ok:
                    converged += 1
                else:
                    open_.append(f)
    ev = {"instances": n, "converged": converged, "not_converged": len(open_)}
    if not open_:
        return AxiomVerdict("WE", WIT, ev, n)
    return AxiomVerdict("WE", INC, ev, n, {"example": open_[0]},
                        "some W-types have unbounded depth and are not finite objects")


# -- (HB), (US), (M) -------------------------------------------------------------

def check_hb(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat
    cls = ctx.cls

    def instances():
        bounded = {}
        for f in ctx.catalog.arrows():
            if not ctx.small(f):
                continue
            Y = f.dom
            if Y not in bounded:
                bounded[Y] = [S for S in cat.subobjects(Y) if ctx.small(cat.sub_mono(S))]
            for S in bounded[Y]:
                yield f, S

    def violates(inst):
        f, S = inst
        T = cat.sub_forall(f, S)
        return None if cls.is_bounded(T) else {"f": f, "S": S, "forall": T}

    return _universal("HB", instances(), violates)


def check_us(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat

    def violates(X):
        d = cat.diagonal(X)
        return None if ctx.small(d) else {"X": X, "diagonal": d}

    return _universal("US", ctx.catalog.objects, violates)


def check_m(ctx: _Ctx) -> AxiomVerdict:
    def violates(m):
        return None if ctx.small(m) else {"m": m}

    return _universal("M", ctx.catalog.monos(), violates)


# -- (BE) ----------------------------------------------------------------------

def pulled_relation(cat, X, R, q: Arrow, p: Arrow):
    """Pull the diagram R => X -> Q back along p: P -> Q."""
    Xp, a, qp = cat.pullback(q, p)
    XX, p1, p2 = cat.binary_product(X, X)
    XpXp, r1, r2 = cat.binary_product(Xp, Xp)
    axa = cat.tuple_arrow((cat.compose(a, r1), cat.compose(a, r2)))
    Rp = cat.sub_meet(cat.sub_pullback(axa, R), cat.kernel_pair(qp))
    return Xp, Rp, qp


def check_be(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat
    cls = ctx.cls
    n = 0
    try:
        for X in ctx.catalog.objects:
            for R in cat.equivalence_relations(X):
                if not cls.is_bounded(R):
                    continue
                q = cat.quotient(X, R)
                n += 1
                if not cat.is_exact(X, R, q):
                    return AxiomVerdict("BE", REF, {"instances": n}, n, {"X": X, "R": R, "q": q},
                                        "quotient diagram is not exact")
                for p in ctx.catalog.arrows_into(q.cod):
                    n += 1
                    Xp, Rp, qp = pulled_relation(cat, X, R, q, p)
                    if not cat.is_exact(Xp, Rp, qp):
                        return AxiomVerdict("BE", REF, {"instances": n}, n,
                                            {"X": X, "R": R, "q": q, "p": p},
                                            "quotient is not stable under pullback")
    except UnsupportedStructure as exc:
        return AxiomVerdict("BE", INC, {"instances": n}, n, {}, str(exc))
    return AxiomVerdict("BE", PASS, {"instances": n}, n)


# -- (PE), (PS) ----------------------------------------------------------------

def check_pe(ctx: _Ctx) -> AxiomVerdict:
    from algset.smallmaps.power import (
        classifying_maps, is_small_relation, power_class, power_map)

    cat = ctx.cat
    cls = ctx.cls
    n = 0
    datas = {}
    try:
        sizes = [C for C in ctx.catalog.objects]
        for C in sizes:
            data = datas[C] = power_class(cls, C)
            _, _, pP = cat.binary_product(C, data.power)
            if not cls.contains(cat.compose(pP, cat.sub_mono(data.member))):
                return AxiomVerdict("PE", REF, {"instances": n}, n, {"C": C, "member": data.member},
                                    "membership relation is not small")
            for D in cat.objects(ctx.budget.test_size):
                CD = cat.binary_product(C, D)[0]
                for R in cat.subobjects(CD):
                    if not is_small_relation(cls, C, D, R):
                        continue
                    n += 1
                    found = classifying_maps(cls, data, D, R, ctx.budget.ceiling)
                    if len(found) != 1:
                        return AxiomVerdict("PE", REF, {"instances": n, "classifying_maps": len(found)},
                                            n, {"C": C, "D": D, "R": R},
                                            "classifying map is not unique")
        # functoriality on catalogued arrows between small enough objects
        small_objs = [C for C in sizes if cat.size(C) <= min(3, ctx.budget.max_size)]
        for A in small_objs:
            if power_map(cls, datas[A], datas[A], cat.identity(A)) != cat.identity(datas[A].power):
                return AxiomVerdict("PE", REF, {"instances": n}, n, {"C": A}, "P_s(id) is not id")
            for B in small_objs:
                for f in ctx.catalog.hom(A, B):
                    for Cc in small_objs:
                        for g in ctx.catalog.hom(B, Cc):
                            n += 1
                            lhs = power_map(cls, datas[A], datas[Cc], cat.compose(g, f))
                            rhs = cat.compose(power_map(cls, datas[B], datas[Cc], g),
                                              power_map(cls, datas[A], datas[B], f))
                            if lhs != rhs:
                                return AxiomVerdict("PE", REF, {"instances": n}, n,
                                                    {"f": f, "g": g}, "P_s is not functorial")
    except (InconclusiveError, UnsupportedStructure, PreconditionError, ResourceBoundError) as exc:
        return AxiomVerdict("PE", INC, {"instances": n}, n, {}, str(exc))
    return AxiomVerdict("PE", WIT, {"instances": n, "witness": "power classes of sampled objects"}, n)


def power_over(cat: SkeletalFinSet, cls: MapClass, p: Arrow) -> Arrow:
    """Fibrewise power class of p: C -> X in E/X (finite sets)."""
    table = []
    for x, cs in enumerate(cat.fibres(p)):
        count = sum(comb(len(cs), k) for k in range(len(cs) + 1)
                    if cls.contains(cat.terminal_arrow(k)))
        table.extend([x] * count)
    return Arrow(len(table), p.cod, tuple(table))


def check_ps(ctx: _Ctx) -> AxiomVerdict:
    cat = ctx.cat
    if ctx.is_finset:
        def violates(p):
            if not ctx.small(p):
                return None
            P = power_over(cat, ctx.cls, p)
            return None if ctx.small(P) else {"p": p, "power": P}

        return _universal("PS", ctx.catalog.arrows(), violates)
    from algset.smallmaps.power import power_class

    n = 0
    try:
        for C in ctx.catalog.objects:
            if not ctx.cls.is_small_object(C):
                continue
            n += 1
            data = power_class(ctx.cls, C)
            if not ctx.cls.is_small_object(data.power):
                return AxiomVerdict("PS", REF, {"instances": n}, n, {"C": C, "power": data.power})
    except (InconclusiveError, UnsupportedStructure) as exc:
        return AxiomVerdict("PS", INC, {"instances": n}, n, {}, str(exc))
    return AxiomVerdict("PS", PASS, {"instances": n, "over": "terminal object only"}, n)


# -- (NE), (NS) ----------------------------------------------------------------

def check_ne(ctx: _Ctx, small: bool = False) -> AxiomVerdict:
    from algset.smallmaps.extras import nno_detect

    axiom = "NS" if small else "NE"
    res = nno_detect(ctx.cat, ctx.budget.max_size, ctx.budget.ceiling)
    ev = {"candidates": res.candidates, "refuted_candidates": len(res.refuters)}
    if res.candidate is None:
        return AxiomVerdict(axiom, INC, ev, res.candidates, {},
                            "no natural numbers object among bounded objects")
    return AxiomVerdict(axiom, INC, {**ev, "survivor": res.candidate}, res.candidates, {},
                        "a candidate survived the bounded tests; initiality is not decided")


# -- (F) -----------------------------------------------------------------------

def check_f(ctx: _Ctx) -> AxiomVerdict:
    from algset.smallmaps.extras import check_fullness_instance

    if not ctx.is_finset:
        return AxiomVerdict("F", INC, {}, 0, {}, "fullness witnesses are built for finite sets only")
    n = 0
    x_bound = min(2, ctx.budget.max_size)
    for X in range(x_bound + 1):
        smalls = [a for A in ctx.catalog.objects for a in ctx.catalog.hom(A, X) if ctx.small(a)]
        for a, b in iproduct(smalls, smalls):
            n += 1
            res = check_fullness_instance(ctx.cls, a, b, test_size=ctx.budget.test_size)
            if res.outcome is REF:
                return AxiomVerdict("F", REF, {"instances": n, **res.evidence}, n, res.diagram, res.note)
            if res.outcome is INC:
                return AxiomVerdict("F", INC, {"instances": n, **res.evidence}, n, res.diagram, res.note)
    return AxiomVerdict("F", PASS, {"instances": n}, n)


# -- dispatch ------------------------------------------------------------------

_CHECKS: dict[str, Callable[[_Ctx], AxiomVerdict]] = {
    "A1": check_a1, "A2": check_a2, "A3": check_a3, "A4": check_a4, "A5": check_a5,
    "A6": check_a6, "C": check_c, "R": check_r, "R-strong": lambda c: check_r(c, True),
    "PiE": check_pie, "WE": check_we, "HB": check_hb, "US": check_us, "BE": check_be,
    "NE": check_ne, "NS": lambda c: check_ne(c, True), "PE": check_pe, "PS": check_ps,
    "M": check_m, "F": check_f, "PiS": check_pis,
}


def check_axiom(cls: MapClass, axiom: str, budget: Budget | None = None, *,
                catalog: Catalog | None = None) -> AxiomVerdict:
    """Check one axiom on all catalogued instances within ``budget``."""
    name = normalize_axiom(axiom)
    if name not in _CHECKS:
        raise MalformedInput(f"unknown axiom {axiom!r}; expected one of {', '.join(AXIOMS)}")
    if not isinstance(cls, MapClass):
        raise MalformedInput("check_axiom needs a MapClass")
    budget = budget or Budget()
    if budget.max_size <= 0 and name not in ("A4",):
        raise MalformedInput("budget.max_size must be positive")
    ctx = _Ctx(cls, budget, catalog)
    try:
        return _CHECKS[name](ctx)
    except (ResourceBoundError, InconclusiveError) as exc:
        return AxiomVerdict(name, INC, {"error": str(exc)}, 0, {}, "budget exhausted")


def check_suite(cls: MapClass, axioms=AXIOMS, budget: Budget | None = None) -> dict[str, AxiomVerdict]:
    budget = budget or Budget()
    catalog = Catalog(cls.category, budget.max_size)
    return {normalize_axiom(a): check_axiom(cls, a, budget, catalog=catalog) for a in axioms}


def check_descent_counterexample_suite(cls: MapClass, budget: Budget | None = None) -> AxiomVerdict:
    """(A2) over maps between objects of size at most 3 (or the given budget)."""
    return check_axiom(cls, "A2", budget or Budget(max_size=3))


# -- replay ----------------------------------------------------------------------

def replay(cls: MapClass, verdict: AxiomVerdict) -> bool:
    """Re-run the violation recorded in a REFUTED verdict; True iff it reproduces."""
    if verdict.outcome is not REF:
        raise PreconditionError("only refuted verdicts can be replayed")
    cat = cls.category
    d = verdict.diagram
    small = cls.contains
    ax = verdict.axiom
    try:
        if ax == "A1":
            _, g, _ = cat.pullback(d["p"], d["f"])
            return small(d["f"]) and g == d["g"] and not small(g)
        if ax == "A2":
            _, g, _ = cat.pullback(d["p"], d["f"])
            return cat.is_cover(d["p"]) and small(g) and not small(d["f"])
        if ax == "A3":
            s = cat.sum_arrows(d["f1"], d["f2"])
            return small(d["f1"]) and small(d["f2"]) and not small(s)
        if ax == "A4":
            return not small(d["map"])
        if ax == "A5":
            gf = cat.compose(d["g"], d["f"])
            return small(d["f"]) and small(d["g"]) and gf == d["composite"] and not small(gf)
        if ax == "A6":
            g = cat.compose(d["f"], d["p"])
            return cat.is_cover(d["p"]) and small(g) and not small(d["f"])
        if ax == "HB":
            T = cat.sub_forall(d["f"], d["S"])
            return small(d["f"]) and cls.is_bounded(d["S"]) and not cls.is_bounded(T)
        if ax == "US":
            return not small(cat.diagonal(d["X"]))
        if ax == "M":
            return cat.is_mono(d["m"]) and not small(d["m"])
        if ax == "BE":
            X, R, q = d["X"], d["R"], d["q"]
            if "p" not in d:
                return not cat.is_exact(X, R, q)
            Xp, Rp, qp = pulled_relation(cat, X, R, q, d["p"])
            return not cat.is_exact(Xp, Rp, qp)
        if ax == "PiS":
            res = cat.pi_along(d["f"], d["p"])
            return small(d["f"]) and small(d["p"]) and not small(res.arrow)
        if ax == "PiE":
            from algset.smallmaps.power import verify_pi

            res = cat.pi_along(d["f"], d["p"])
            return not verify_pi(cat, d["f"], d["p"], res, list(cat.objects(2)))
        if ax == "PS":
            if "p" in d:
                P = power_over(cat, cls, d["p"])
                return small(d["p"]) and not small(P)
            from algset.smallmaps.power import power_class

            return not cls.is_small_object(power_class(cls, d["C"]).power)
        if ax == "PE":
            from algset.smallmaps.power import classifying_maps, power_class

            if "R" in d:
                data = power_class(cls, d["C"])
                return len(classifying_maps(cls, data, d["D"], d["R"], 10**6)) != 1
            return True
        if ax == "F":
            from algset.smallmaps.extras import check_fullness_instance

            return check_fullness_instance(cls, d["A->X"], d["B->X"]).outcome is REF
    except AlgSetError:
        return False
    raise PreconditionError(f"no replay rule for {ax}")
