"""Matching families, the plus construction and the associated sheaf."""

from __future__ import annotations

from dataclasses import dataclass

from algset.errors import ResourceBoundError
from algset.fincat.base import Arrow
from algset.fincat.presheaf import Presheaf, PresheafCategory
from algset.sheaves.site import Site, pullback_sieve


def matching_families(site: Site, X: Presheaf, a: int, S, limit: int = 100_000) -> list[dict]:
    """All families (x_f) over the sieve S with X(g) x_f = x_{fg}."""
    C = site.C
    arrows = sorted(S)
    out: list[dict] = []
    fam: dict[int, int] = {}

    def consistent(f):
        # compare f with every already chosen arrow through composites landing in S
        x = fam[f]
        for g in C.arrows_into(C.dom[f]):
            fg = C.compose(f, g)
            if fg in fam and X.restrict[g][x] != fam[fg]:
                return False
        for h in fam:
            for g in C.arrows_into(C.dom[h]):
                if C.compose(h, g) == f and X.restrict[g][fam[h]] != x:
                    return False
        return True

    def rec(i):
        if i == len(arrows):
            out.append(dict(fam))
            if len(out) > limit:
                raise ResourceBoundError("too many matching families", len(out))
            return
        f = arrows[i]
        for x in range(X.sizes[C.dom[f]]):
            fam[f] = x
            if consistent(f):
                rec(i + 1)
            del fam[f]

    rec(0)
    return out


def restrict_family(site: Site, fam: dict, h: int, target) -> tuple:
    """Restrict a family on a sieve on a along h: b -> a, read off on the sieve ``target`` on b."""
    C = site.C
    return tuple(fam[C.compose(h, g)] for g in sorted(target))


def amalgamations(site: Site, X: Presheaf, a: int, S, fam: dict) -> list[int]:
    return [x for x in range(X.sizes[a]) if all(X.restrict[f][x] == fam[f] for f in S)]


@dataclass
class PlusResult:
    presheaf: Presheaf
    unit: Arrow


def plus(P: PresheafCategory, site: Site, X: Presheaf, limit: int = 100_000) -> PlusResult:
    """X+(a): matching families over covers of a, two being equal when they agree on a
    common covering refinement.

    On a finite site the covers of a are closed under intersection, so two
    families agree on some common cover exactly when they agree on the
    least cover; families are therefore keyed by that restriction.
    """
    C = site.C
    mins = [site.minimal_cover(a) for a in range(C.n_objects)]
    stage = []
    for a in range(C.n_objects):
        keys = set()
        for R in site.basis_covers(a):
            for fam in matching_families(site, X, a, R, limit):
                keys.add(tuple(fam[f] for f in sorted(mins[a])))
        stage.append(sorted(keys))

    def act(h, key):
        a, b = C.cod[h], C.dom[h]
        fam = dict(zip(sorted(mins[a]), key))
        pulled = pullback_sieve(C, h, mins[a])
        assert mins[b] <= pulled
        return restrict_family(site, fam, h, mins[b])

    Xp, pos = P._from_elements(stage, act)
    unit = Arrow(X, Xp, tuple(
        tuple(pos[a][tuple(X.restrict[f][x] for f in sorted(mins[a]))] for x in range(X.sizes[a]))
        for a in range(C.n_objects)))
    return PlusResult(Xp, unit)


def sheafify(site: Site, X: Presheaf, P: PresheafCategory | None = None,
             limit: int = 100_000) -> tuple[Presheaf, Arrow]:
    """The associated sheaf (plus construction applied twice) and the unit X -> aX."""
    P = P or PresheafCategory(site.C)
    first = plus(P, site, X, limit)
    second = plus(P, site, first.presheaf, limit)
    return second.presheaf, P.compose(second.unit, first.unit)


def sheaf_condition(site: Site, X: Presheaf, *, separated_only: bool = False,
                    limit: int = 100_000) -> dict | None:
    """None when every matching family on every cover has exactly one amalgamation
    (at most one if ``separated_only``); otherwise a witness."""
    C = site.C
    for a in range(C.n_objects):
        for S in site.covers(a):
            for fam in matching_families(site, X, a, S, limit):
                n = len(amalgamations(site, X, a, S, fam))
                if n > 1 or (n == 0 and not separated_only):
                    return {"object": C.objects[a], "sieve": site.show_sieve(S),
                            "family": {C.names[f]: v for f, v in fam.items()}, "amalgamations": n}
    return None


def is_sheaf(site: Site, X: Presheaf) -> bool:
    return sheaf_condition(site, X) is None


def is_separated(site: Site, X: Presheaf) -> bool:
    return sheaf_condition(site, X, separated_only=True) is None


def family_census(site: Site, X: Presheaf) -> dict[str, int]:
    """Number of matching families per (object, cover)."""
    C = site.C
    return {f"{C.objects[a]}:{site.show_sieve(S)}": len(matching_families(site, X, a, S))
            for a in range(C.n_objects) for S in sorted(site.covers(a), key=sorted)}
