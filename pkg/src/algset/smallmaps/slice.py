"""Slice categories E/X and the induced class of small maps."""

from __future__ import annotations

from algset.errors import PreconditionError, UnsupportedStructure
from algset.fincat.base import (
    FIBRE_CENSUS,
    FINITE_LIMITS,
    HEYTING,
    REGULAR,
    SUMS,
    AmbientCategory,
    Arrow,
    Subobject,
)
from algset.smallmaps.classes import MapClass


class SliceCategory(AmbientCategory):
    """Objects are arrows into ``X``; an arrow ``p -> q`` is a base arrow ``u`` with ``q u = p``.

    Subobjects of ``p`` are subobjects of ``p.dom`` in the base, so the
    lattice operations are inherited unchanged.
    """

    def __init__(self, base: AmbientCategory, X):
        self.base = base
        self.X = X
        self.name = f"{base.name}/{base.describe(X)}"
        caps = {FINITE_LIMITS, REGULAR, SUMS, HEYTING} & set(base.capabilities)
        if FIBRE_CENSUS in base.capabilities:
            caps.add(FIBRE_CENSUS)
        self.capabilities = frozenset(caps)

    def underlying(self, a: Arrow) -> Arrow:
        return a.data

    def over(self, p: Arrow) -> Arrow:
        if p.cod != self.X:
            raise PreconditionError(f"{p!r} is not an object over {self.X!r}")
        return p

    def objects(self, max_size):
        for A in self.base.objects(max_size):
            yield from self.base.hom(A, self.X)

    def size(self, p):
        return self.base.size(p.dom)

    def contains_object(self, p):
        return isinstance(p, Arrow) and p.cod == self.X and self.base.contains_object(p.dom)

    def hom(self, p, q):
        for u in self.base.hom(p.dom, q.dom):
            if self.base.compose(q, u) == p:
                yield Arrow(p, q, u)

    def identity(self, p):
        return Arrow(p, p, self.base.identity(p.dom))

    def _compose(self, g, f):
        return Arrow(f.dom, g.cod, self.base.compose(g.data, f.data))

    def terminal(self):
        return self.base.identity(self.X)

    def initial(self):
        return self.base.initial_arrow(self.X)

    def terminal_arrow(self, p):
        return Arrow(p, self.terminal(), p)

    def initial_arrow(self, p):
        return Arrow(self.initial(), p, self.base.initial_arrow(p.dom))

    def product(self, objs):
        objs = tuple(objs)
        if not objs:
            return self.terminal(), ()
        if len(objs) == 1:
            return objs[0], (self.identity(objs[0]),)
        first, rest = objs[0], objs[1:]
        R, rprojs = self.product(rest)
        P, a, b = self.base.pullback(first, R)
        apex = self.base.compose(first, a)
        projs = (Arrow(apex, first, a),) + tuple(
            Arrow(apex, r.cod, self.base.compose(r.data, b)) for r in rprojs)
        return apex, projs

    def tuple_arrow(self, arrows):
        arrows = tuple(arrows)
        if len(arrows) == 1:
            return arrows[0]
        first, rest = arrows[0], arrows[1:]
        inner = self.tuple_arrow(rest)
        cods = [a.cod for a in arrows]
        target, _ = self.product(cods)
        R = self.product(cods[1:])[0]
        u = self.base.pullback_mediator(first.cod, R, first.data, inner.data)
        return Arrow(arrows[0].dom, target, u)

    def pullback(self, f, g):
        P, a, b = self.base.pullback(f.data, g.data)
        apex = self.base.compose(f.dom, a)
        return apex, Arrow(apex, f.dom, a), Arrow(apex, g.dom, b)

    def pullback_mediator(self, f, g, a, b):
        return Arrow(a.dom, self.pullback(f, g)[0],
                     self.base.pullback_mediator(f.data, g.data, a.data, b.data))

    def equalizer(self, f, g):
        m = self.base.equalizer(f.data, g.data)
        return Arrow(self.base.compose(f.dom, m), f.dom, m)

    def coproduct(self, p, q):
        S, i1, i2 = self.base.coproduct(p.dom, q.dom)
        s = self.base.copair(p, q)
        return s, Arrow(p, s, i1), Arrow(q, s, i2)

    def copair(self, f, g):
        s = self.coproduct(f.dom, g.dom)[0]
        return Arrow(s, f.cod, self.base.copair(f.data, g.data))

    def image_factorization(self, f):
        e, m = self.base.image_factorization(f.data)
        mid = self.base.compose(f.cod, m)
        return Arrow(f.dom, mid, e), Arrow(mid, f.cod, m)

    def is_mono(self, f):
        return self.base.is_mono(f.data)

    def is_cover(self, f):
        return self.base.is_cover(f.data)

    def fibre_census(self, f):
        return self.base.fibre_census(f.data)

    def subobjects(self, p):
        for S in self.base.subobjects(p.dom):
            yield Subobject(p, S)

    def sub_top(self, p):
        return Subobject(p, self.base.sub_top(p.dom))

    def sub_bottom(self, p):
        return Subobject(p, self.base.sub_bottom(p.dom))

    def sub_meet(self, S, T):
        return Subobject(S.base, self.base.sub_meet(S.data, T.data))

    def sub_join(self, S, T):
        return Subobject(S.base, self.base.sub_join(S.data, T.data))

    def sub_implies(self, S, T):
        return Subobject(S.base, self.base.sub_implies(S.data, T.data))

    def sub_leq(self, S, T):
        return self.base.sub_leq(S.data, T.data)

    def sub_pullback(self, f, S):
        return Subobject(f.dom, self.base.sub_pullback(f.data, S.data))

    def sub_image(self, f, S):
        return Subobject(f.cod, self.base.sub_image(f.data, S.data))

    def sub_forall(self, f, S):
        return Subobject(f.cod, self.base.sub_forall(f.data, S.data))

    def sub_mono(self, S):
        m = self.base.sub_mono(S.data)
        return Arrow(self.base.compose(S.base, m), S.base, m)

    def sub_of_mono(self, m):
        return Subobject(m.cod, self.base.sub_of_mono(m.data))

    def pi_along(self, f, p):
        raise UnsupportedStructure("dependent products in a slice are not implemented")

    def describe(self, p):
        return f"{self.base.describe(p.dom)} over {self.base.describe(self.X)}"


def slice_class(cls: MapClass, X) -> MapClass:
    """An arrow of E/X is small when its underlying arrow is small in E."""
    S = SliceCategory(cls.category, X)
    return MapClass(S, f"{cls.label}/{cls.category.describe(X)}",
                    lambda u: cls.contains(u.data), cls.fibre_ok, cls.down_closed)
