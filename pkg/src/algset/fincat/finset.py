"""The skeletal category of finite sets.

The object ``n`` stands for ``{0, ..., n-1}`` and an arrow ``n -> m`` is a
tuple of length ``n`` with entries below ``m``.  Limits and colimits are laid
out in lexicographic order so every construction has a canonical result.
"""

from __future__ import annotations

from itertools import product as iproduct

from algset.errors import MalformedInput, PreconditionError
from algset.fincat.base import (
    FIBRE_CENSUS,
    FINITE_LIMITS,
    HEYTING,
    PI,
    QUOTIENTS,
    REGULAR,
    SUMS,
    AmbientCategory,
    Arrow,
    PiResult,
    Subobject,
)


def _radix_index(values, sizes) -> int:
    idx = 0
    for v, n in zip(values, sizes):
        idx = idx * n + v
    return idx


class SkeletalFinSet(AmbientCategory):
    name = "finset"
    capabilities = frozenset({FINITE_LIMITS, REGULAR, SUMS, HEYTING, PI, QUOTIENTS, FIBRE_CENSUS})

    def arrow(self, dom: int, cod: int, table) -> Arrow:
        table = tuple(table)
        if len(table) != dom or any(not 0 <= v < cod for v in table):
            raise MalformedInput(f"table {table} is not a function {dom} -> {cod}")
        return Arrow(dom, cod, table)

    def objects(self, max_size):
        return iter(range(max_size + 1))

    def size(self, X):
        return X

    def contains_object(self, X):
        return isinstance(X, int) and X >= 0

    def hom(self, A, B):
        for t in iproduct(range(B), repeat=A):
            yield Arrow(A, B, t)

    def identity(self, A):
        return Arrow(A, A, tuple(range(A)))

    def _compose(self, g, f):
        gd = g.data
        return Arrow(f.dom, g.cod, tuple(gd[i] for i in f.data))

    def terminal(self):
        return 1

    def initial(self):
        return 0

    def terminal_arrow(self, X):
        return Arrow(X, 1, (0,) * X)

    def initial_arrow(self, X):
        return Arrow(0, X, ())

    def product(self, objs):
        objs = tuple(objs)
        total = 1
        for n in objs:
            total *= n
        elems = list(iproduct(*(range(n) for n in objs)))
        projs = tuple(
            Arrow(total, n, tuple(e[i] for e in elems)) for i, n in enumerate(objs)
        )
        return total, projs

    def tuple_arrow(self, arrows):
        arrows = tuple(arrows)
        dom = arrows[0].dom
        sizes = [a.cod for a in arrows]
        cod = 1
        for n in sizes:
            cod *= n
        return Arrow(dom, cod, tuple(
            _radix_index([a.data[i] for a in arrows], sizes) for i in range(dom)
        ))

    def _pairs(self, f, g):
        by_value: dict[int, list[int]] = {}
        for c, v in enumerate(g.data):
            by_value.setdefault(v, []).append(c)
        return [(b, c) for b, v in enumerate(f.data) for c in by_value.get(v, ())]

    def pullback(self, f, g):
        if f.cod != g.cod:
            raise PreconditionError("pullback needs a common codomain")
        pairs = self._pairs(f, g)
        P = len(pairs)
        return (P, Arrow(P, f.dom, tuple(b for b, _ in pairs)),
                Arrow(P, g.dom, tuple(c for _, c in pairs)))

    def pullback_mediator(self, f, g, a, b):
        index = {pair: i for i, pair in enumerate(self._pairs(f, g))}
        return Arrow(a.dom, len(index), tuple(index[(a.data[i], b.data[i])] for i in range(a.dom)))

    def equalizer(self, f, g):
        keep = tuple(i for i in range(f.dom) if f.data[i] == g.data[i])
        return Arrow(len(keep), f.dom, keep)

    def coproduct(self, A, B):
        return A + B, Arrow(A, A + B, tuple(range(A))), Arrow(B, A + B, tuple(range(A, A + B)))

    def copair(self, f, g):
        if f.cod != g.cod:
            raise PreconditionError("copair needs a common codomain")
        return Arrow(f.dom + g.dom, f.cod, f.data + g.data)

    def image_factorization(self, f):
        img = sorted(set(f.data))
        pos = {v: i for i, v in enumerate(img)}
        return (Arrow(f.dom, len(img), tuple(pos[v] for v in f.data)),
                Arrow(len(img), f.cod, tuple(img)))

    def is_mono(self, f):
        return len(set(f.data)) == f.dom

    def is_cover(self, f):
        return len(set(f.data)) == f.cod

    def fibre_census(self, f):
        counts = [0] * f.cod
        for v in f.data:
            counts[v] += 1
        return iter(counts)

    def fibres(self, f) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(f.cod)]
        for x, v in enumerate(f.data):
            out[v].append(x)
        return out

    # -- subobjects ---------------------------------------------------------
    def sub(self, X, elements) -> Subobject:
        elements = frozenset(elements)
        if any(not 0 <= e < X for e in elements):
            raise MalformedInput(f"{sorted(elements)} is not a subset of {X}")
        return Subobject(X, elements)

    def subobjects(self, X):
        for mask in range(1 << X):
            yield Subobject(X, frozenset(i for i in range(X) if mask >> i & 1))

    def sub_top(self, X):
        return Subobject(X, frozenset(range(X)))

    def sub_bottom(self, X):
        return Subobject(X, frozenset())

    def sub_meet(self, S, T):
        return Subobject(S.base, S.data & T.data)

    def sub_join(self, S, T):
        return Subobject(S.base, S.data | T.data)

    def sub_implies(self, S, T):
        return Subobject(S.base, frozenset(i for i in range(S.base) if i not in S.data or i in T.data))

    def sub_leq(self, S, T):
        return S.data <= T.data

    def sub_pullback(self, f, S):
        d = S.data
        return Subobject(f.dom, frozenset(i for i, v in enumerate(f.data) if v in d))

    def sub_image(self, f, S):
        return Subobject(f.cod, frozenset(f.data[i] for i in S.data))

    def sub_forall(self, f, S):
        bad = {v for i, v in enumerate(f.data) if i not in S.data}
        return Subobject(f.cod, frozenset(y for y in range(f.cod) if y not in bad))

    def sub_mono(self, S):
        elems = tuple(sorted(S.data))
        return Arrow(len(elems), S.base, elems)

    def sub_of_mono(self, m):
        if not self.is_mono(m):
            raise PreconditionError(f"{m!r} is not monic")
        return Subobject(m.cod, frozenset(m.data))

    # -- relations and quotients -------------------------------------------
    def relation_pairs(self, X, R: Subobject) -> set[tuple[int, int]]:
        return {(e // X, e % X) for e in R.data}

    def relation_from_pairs(self, X, pairs) -> Subobject:
        return Subobject(X * X, frozenset(a * X + b for a, b in pairs))

    def equivalence_relations(self, X):
        for labels in set_partitions(X):
            yield self.relation_from_pairs(
                X, [(a, b) for a in range(X) for b in range(X) if labels[a] == labels[b]])

    def is_equivalence_relation(self, X, R):
        if R.base != X * X:
            return False
        pairs = self.relation_pairs(X, R)
        if any((a, a) not in pairs for a in range(X)):
            return False
        if any((b, a) not in pairs for a, b in pairs):
            return False
        succ: dict[int, set[int]] = {}
        for a, b in pairs:
            succ.setdefault(a, set()).add(b)
        return all(c in succ[a] for a, b in pairs for c in succ.get(b, ()))

    def quotient(self, X, R):
        if not self.is_equivalence_relation(X, R):
            raise PreconditionError("quotient needs an equivalence relation")
        pairs = self.relation_pairs(X, R)
        labels: list[int] = []
        reps: list[int] = []
        for x in range(X):
            for k, r in enumerate(reps):
                if (x, r) in pairs:
                    labels.append(k)
                    break
            else:
                labels.append(len(reps))
                reps.append(x)
        return Arrow(X, len(reps), tuple(labels))

    # -- dependent products -------------------------------------------------
    def pi_elements(self, f: Arrow, p: Arrow) -> list[tuple[int, dict[int, int]]]:
        """Elements of ``Pi_f(p)`` as (y, section over the fibre of y), in index order."""
        if p.cod != f.dom:
            raise PreconditionError("p must be an object over the domain of f")
        pfib = self.fibres(p)
        elems = []
        for y, xs in enumerate(self.fibres(f)):
            for choice in iproduct(*(pfib[x] for x in xs)):
                elems.append((y, dict(zip(xs, choice))))
        return elems

    def pi_along(self, f, p):
        elems = self.pi_elements(f, p)
        arrow = Arrow(len(elems), f.cod, tuple(y for y, _ in elems))
        _, pulled, to_pi = self.pullback(f, arrow)
        counit = Arrow(pulled.dom, p.dom, tuple(
            elems[e][1][x] for x, e in zip(pulled.data, to_pi.data)))
        return PiResult(arrow, pulled, to_pi, counit)

    def describe(self, X):
        return str(X)


def set_partitions(n: int):
    """Restricted growth strings of length n: one per partition of range(n)."""
    if n == 0:
        yield ()
        return

    def grow(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for label in range(top + 2):
            yield from grow(prefix + [label], max(top, label))

    yield from grow([0], 0)



FINSET = SkeletalFinSet()
