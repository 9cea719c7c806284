"""Rank-truncated initial ZF-algebras V_n and instance-wise set-axiom checks.

Elements are hereditarily finite sets, indexed by their Ackermann code
(x = sum of 2**y over y in x).  V_n is exactly the codes below |V_n|, so
V_n sits inside V_{n+1} as an initial segment and indices never change.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from algset.errors import ResourceBoundError
from algset.fincat.base import Subobject
from algset.fincat.finset import FINSET
from algset.logic.schemas import HEADROOM, AxiomSchemaId, SchemaInstance, schema_instance
from algset.logic.semantics import Environment, Evaluator, kripke_joyal_eval
from algset.logic.syntax import Formula, relativize
from algset.wzf.polynomial import PolynomialSignature
from algset.wzf.wtype import WTree, bisim_quotient


def code_of(s: frozenset) -> int:
    return sum(1 << code_of(x) for x in s)


def set_of(code: int) -> frozenset:
    return frozenset(set_of(i) for i in range(code.bit_length()) if code >> i & 1)


def show_set(code: int) -> str:
    return "{" + ", ".join(show_set(i) for i in range(code.bit_length()) if code >> i & 1) + "}"


def hf_rank(code: int) -> int:
    """Least n with the element in V_n."""
    return 1 + max((hf_rank(i) for i in range(code.bit_length()) if code >> i & 1), default=0)


def v_size(n: int) -> int:
    size = 0
    for _ in range(n):
        size = 2 ** size
    return size


@dataclass(frozen=True)
class VApprox:
    """V_n with inclusion order, successor s(x) = {x} and unions as sups."""

    rank: int
    size: int
    stages: tuple[int, ...] = field(default=())   # |V_k| for k <= rank

    def elements(self) -> range:
        return range(self.size)

    def leq(self, x: int, y: int) -> bool:
        return x & ~y == 0

    def succ(self, x: int) -> int | None:
        """s(x), or None when {x} lies outside the truncation."""
        s = 1 << x
        return s if s < self.size else None

    def sup(self, xs) -> int:
        out = 0
        for x in xs:
            out |= x
        return out

    def member(self, x: int, y: int) -> bool:
        """x in y, read off the order: {x} <= y."""
        return self.leq(1 << x, y)

    def member_direct(self, x: int, y: int) -> bool:
        return x in {code_of(e) for e in set_of(y)}

    def show(self, x: int) -> str:
        return show_set(x)

    @cached_property
    def membership(self) -> Subobject:
        """The relation in inside V x V (pairs indexed x * |V| + y)."""
        N = self.size
        return Subobject(N * N, frozenset(x * N + y for x in range(N) for y in range(N)
                                          if self.member(x, y)))

    def below(self, k: int) -> Subobject:
        """V_k as a subobject of V_n."""
        return Subobject(self.size, frozenset(range(min(v_size(k), self.size))))

    def environment(self, low: int | None = None) -> Environment:
        rels = {"in": (("V", "V"), self.membership)}
        if low is not None:
            rels["low"] = (("V",), self.below(low))
        return Environment(FINSET, {"V": self.size}, rels, "in")


def build_V(n: int, *, limit: int = 50_000) -> VApprox:
    """V_n as the bisimulation quotient of iterated W-type stages.

    Stage k+1 applies the polynomial functor with one constructor of each
    arity up to |V_k| (a finite stand-in for the universal small map) to
    the trees of stage k and collapses the result extensionally.  Child
    tuples with repeats or in a different order collapse onto an increasing
    injective tuple, so only those are enumerated: one tree per subset.
    """
    if n < 0:
        raise ValueError("rank must be non-negative")
    level: list[WTree] = []
    stages = [0]
    for k in range(n):
        m = len(level)
        sig = PolynomialSignature.from_arities(FINSET, range(m + 1))
        if 2 ** m > limit:
            raise ResourceBoundError(f"stage {k + 1} has {2 ** m} elements", {"stages": stages})
        trees = [WTree(a, kids) for a in sig.arities for kids in combinations(level, a)]
        level = sorted(bisim_quotient(trees), key=lambda t: code_of(t.collapse()))
        stages.append(len(level))
    codes = [code_of(t.collapse()) for t in level]
    if codes != list(range(len(codes))):
        raise AssertionError("stage codes are not an initial segment")  # pragma: no cover
    return VApprox(n, len(level), tuple(stages))


# -- axiom checks ------------------------------------------------------------------------

HOLDS, FAILS, OUT_OF_HEADROOM = "holds", "fails", "out-of-headroom"


@dataclass
class SetAxiomVerdict:
    axiom: str
    status: str
    rank: int
    headroom: int
    witnesses: list[dict[str, str]] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "status": self.status, "rank": self.rank,
                "headroom": self.headroom, "witnesses": self.witnesses, "note": self.note}


def relativized(inst: SchemaInstance, body: bool = False) -> Formula:
    phi = inst.body if body else inst.closure
    return relativize(phi, "low", exempt=inst.exempt)


def check_set_axiom(id: AxiomSchemaId | str, V: VApprox, headroom: int,
                    param: Formula | None = None, max_witnesses: int = 5,
                    enforce_headroom: bool = True) -> SetAxiomVerdict:
    """Evaluate a schema in V_n with unbounded quantifiers restricted to V_{n-h}.

    The constructed set of the schema (its witness) ranges over all of V_n.
    With ``enforce_headroom=False`` too little headroom is evaluated anyway,
    which exposes failures caused only by the truncation.
    """
    inst = schema_instance(id, param)
    name = inst.id.name
    need = HEADROOM[name]
    if enforce_headroom and headroom < need or (V.rank - headroom < 1 and name != "Infinity"):
        return SetAxiomVerdict(name, OUT_OF_HEADROOM, V.rank, headroom,
                               note=f"needs headroom {need} and rank above it")
    env = V.environment(V.rank - headroom)
    ev = Evaluator(env)
    top = kripke_joyal_eval(relativized(inst), env, (), ev)
    if top.data:
        return SetAxiomVerdict(name, HOLDS, V.rank, headroom)
    witnesses = []
    if inst.params:
        ctx = tuple((p, "V") for p in inst.params)
        truth = kripke_joyal_eval(relativized(inst, body=True), env, ctx, ev)
        low = set(V.below(V.rank - headroom).data)
        N = V.size
        for i in range(N ** len(ctx)):
            if i in truth.data:
                continue
            vals, j = [], i
            for _ in ctx:
                j, r = divmod(j, N)
                vals.append(r)
            vals.reverse()
            if all(v in low for v in vals):
                witnesses.append({p: V.show(v) for p, v in zip(inst.params, vals)})
                if len(witnesses) >= max_witnesses:
                    break
    return SetAxiomVerdict(name, FAILS, V.rank, headroom, witnesses)


def check_zf_laws(V: VApprox, samples: int = 300, seed: int = 0) -> dict[str, bool]:
    """Order, successor, sups and the two readings of membership on V."""
    els = list(V.elements())
    rng = random.Random(seed)
    out = {}
    out["partial_order"] = all(V.leq(x, x) for x in els) and all(
        not (V.leq(x, y) and V.leq(y, x)) or x == y for x in els for y in els) and all(
        not (V.leq(x, y) and V.leq(y, z)) or V.leq(x, z)
        for x in els for y in els for z in rng.sample(els, min(len(els), 8)))
    ok = True
    for _ in range(samples):
        A = [x for x in els if rng.random() < 0.3]
        s = V.sup(A)
        ok &= 0 <= s < V.size
        ok &= all(V.leq(a, s) for a in A)
        ok &= all(V.leq(s, y) for y in els if all(V.leq(a, y) for a in A))
    out["sups"] = ok
    out["successor_monotone"] = all(
        V.leq(1 << x, 1 << y) == (x == y) for x in els for y in els)
    out["membership_agrees"] = all(V.member(x, y) == V.member_direct(x, y) for x in els for y in els)
    return out


def embedding_coherent(V: VApprox, W: VApprox) -> bool:
    """V_n inside V_{n+1}: same order, successor, sups and membership on shared indices."""
    if V.size > W.size:
        return False
    els = range(V.size)
    return all(V.leq(x, y) == W.leq(x, y) and V.member(x, y) == W.member(x, y)
               for x in els for y in els) and all(
        V.succ(x) in (None, W.succ(x)) for x in els)
