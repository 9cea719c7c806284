"""The category of sheaves on a finite site and the pointwise-small class."""

from __future__ import annotations

from algset.errors import PreconditionError, UnsupportedStructure
from algset.fincat.base import (
    FIBRE_CENSUS,
    FINITE_LIMITS,
    HEYTING,
    QUOTIENTS,
    REGULAR,
    SUMS,
    AmbientCategory,
    Arrow,
    Subobject,
)
from algset.fincat.finset import FINSET
from algset.fincat.presheaf import Presheaf, PresheafCategory
from algset.sheaves.sheafify import is_sheaf, sheafify
from algset.sheaves.site import Site
from algset.smallmaps.classes import MapClass
from algset.smallmaps.verdict import Outcome


class SheafCategory(AmbientCategory):
    """Sheaves as a full subcategory of presheaves.

    Limits are computed as for presheaves; colimits and images are
    sheafified; subobjects are the closed subpresheaves.
    """

    capabilities = frozenset({FINITE_LIMITS, REGULAR, SUMS, HEYTING, QUOTIENTS, FIBRE_CENSUS})

    def __init__(self, site: Site):
        self.site = site
        self.P = PresheafCategory(site.C, f"presheaves[{site.name}]")
        self.name = f"sheaves[{site.name}]"
        self._sheaf_memo: dict = {}

    def __repr__(self):
        return f"SheafCategory({self.site.name})"

    # -- objects
    def is_sheaf(self, X: Presheaf) -> bool:
        if X not in self._sheaf_memo:
            self._sheaf_memo[X] = is_sheaf(self.site, X)
        return self._sheaf_memo[X]

    def objects(self, max_size):
        return (X for X in self.P.objects(max_size) if self.is_sheaf(X))

    def contains_object(self, X):
        return self.P.contains_object(X) and self.is_sheaf(X)

    def associated(self, X: Presheaf) -> tuple[Presheaf, Arrow]:
        return sheafify(self.site, X, self.P)

    def size(self, X):
        return self.P.size(X)

    def hom(self, A, B):
        return self.P.hom(A, B)

    def identity(self, A):
        return self.P.identity(A)

    def _compose(self, g, f):
        return self.P._compose(g, f)

    # -- limits (as presheaves)
    def terminal(self):
        return self.P.terminal()

    def terminal_arrow(self, X):
        return self.P.terminal_arrow(X)

    def product(self, objs):
        return self.P.product(objs)

    def tuple_arrow(self, arrows):
        return self.P.tuple_arrow(arrows)

    def pullback(self, f, g):
        return self.P.pullback(f, g)

    def pullback_mediator(self, f, g, a, b):
        return self.P.pullback_mediator(f, g, a, b)

    def equalizer(self, f, g):
        return self.P.equalizer(f, g)

    # -- colimits (sheafified)
    def initial(self):
        return self.associated(self.P.initial())[0]

    def initial_arrow(self, X):
        I, unit = self.associated(self.P.initial())
        return self._extend(unit, self.P.initial_arrow(X))

    def _extend(self, unit: Arrow, f: Arrow) -> Arrow:
        """The unique g: aX -> Y with g unit = f, for a sheaf Y."""
        found = [g for g in self.P.hom(unit.cod, f.cod) if self.P.compose(g, unit) == f]
        if len(found) != 1:
            raise PreconditionError("map does not extend uniquely along the unit")
        return found[0]

    def coproduct(self, A, B):
        S, i1, i2 = self.P.coproduct(A, B)
        aS, unit = self.associated(S)
        return aS, self.P.compose(unit, i1), self.P.compose(unit, i2)

    def copair(self, f, g):
        S, _, _ = self.P.coproduct(f.dom, g.dom)
        _, unit = self.associated(S)
        return self._extend(unit, self.P.copair(f, g))

    def quotient(self, X, R):
        q = self.P.quotient(X, R)
        aQ, unit = self.associated(q.cod)
        return self.P.compose(unit, q)

    def equivalence_relations(self, X):
        for R in self.P.equivalence_relations(X):
            if self.is_closed(R):
                yield R

    # -- subobjects: closed subpresheaves
    def closure(self, S: Subobject) -> Subobject:
        """x is in the closure when the sieve of arrows restricting x into S covers."""
        X = S.base
        C = self.site.C
        out = []
        for c in range(C.n_objects):
            keep = set()
            for x in range(X.sizes[c]):
                sieve = frozenset(h for h in C.arrows_into(c) if X.restrict[h][x] in S.data[C.dom[h]])
                if sieve in self.site.covers(c):
                    keep.add(x)
            out.append(frozenset(keep))
        return Subobject(X, tuple(out))

    def is_closed(self, S: Subobject) -> bool:
        return self.closure(S) == S

    def subobjects(self, X):
        return (S for S in self.P.subobjects(X) if self.is_closed(S))

    def sub_top(self, X):
        return self.P.sub_top(X)

    def sub_bottom(self, X):
        return self.closure(self.P.sub_bottom(X))

    def sub_meet(self, S, T):
        return self.P.sub_meet(S, T)

    def sub_join(self, S, T):
        return self.closure(self.P.sub_join(S, T))

    def sub_implies(self, S, T):
        return self.P.sub_implies(S, T)

    def sub_leq(self, S, T):
        return self.P.sub_leq(S, T)

    def sub_pullback(self, f, S):
        return self.P.sub_pullback(f, S)

    def sub_image(self, f, S):
        return self.closure(self.P.sub_image(f, S))

    def sub_forall(self, f, S):
        return self.P.sub_forall(f, S)

    def sub_mono(self, S):
        return self.P.sub_mono(S)

    def sub_of_mono(self, m):
        return self.P.sub_of_mono(m)

    def image_factorization(self, f):
        I = self.closure(self.P.sub_of_mono(self.P.image_factorization(f)[1]))
        m = self.P.sub_mono(I)
        pos = [{v: i for i, v in enumerate(comp)} for comp in m.data]
        e = Arrow(f.dom, m.dom, tuple(tuple(p[v] for v in comp) for p, comp in zip(pos, f.data)))
        return e, m

    def is_mono(self, f):
        return self.P.is_mono(f)

    def is_cover(self, f):
        """Locally surjective: the closure of the image is everything."""
        return self.closure(self.P.sub_of_mono(self.P.image_factorization(f)[1])) == self.P.sub_top(f.cod)

    def fibre_census(self, f):
        return self.P.fibre_census(f)

    def pi_along(self, f, p):
        raise UnsupportedStructure("dependent products of sheaves are not implemented")

    def describe(self, X):
        return self.P.describe(X)


def components(f: Arrow) -> list[Arrow]:
    """The underlying maps of finite sets, one per object of the site."""
    return [Arrow(len(comp), n, tuple(comp)) for comp, n in zip(f.data, f.cod.sizes)]


def pointwise_small(cat: SheafCategory | PresheafCategory, base: MapClass) -> MapClass:
    """f is small when every component is in ``base`` (a class on finite sets)."""
    return MapClass(cat, f"pointwise[{base.label}]",
                    lambda f: all(base.contains(c) for c in components(f)),
                    base.fibre_ok, base.down_closed)


def sheaf_category(site: Site, base: MapClass, *, check_pis: bool = True, budget=None):
    """Sheaves on ``site`` with the pointwise-small class induced by ``base``.

    ``base`` must live on finite sets and satisfy (PiS), which is checked.
    """
    if base.category is not FINSET and type(base.category) is not type(FINSET):
        raise PreconditionError("the base class must be a class of maps of finite sets")
    if site.basis is None:
        raise PreconditionError("the site needs a basis")
    if check_pis:
        from algset.smallmaps.axioms import check_axiom
        from algset.smallmaps.verdict import Budget

        v = check_axiom(base, "PiS", budget or Budget(max_size=4))
        if v.outcome is Outcome.REFUTED:
            raise PreconditionError(f"base class fails (PiS): {v.note}")
    S = SheafCategory(site)
    return S, pointwise_small(S, base)
