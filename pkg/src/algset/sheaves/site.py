"""Finite sites: sieves, coverage axioms and bases.

Site files extend the category format with::

    cover a: {u} {id_a}        # covering sieves on a, as sets of arrow names
    basis a: {u}               # optional basis covers

Every object must list its covers; ``{}`` is the empty sieve.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from algset.errors import MalformedInput, ParseError
from algset.fincat.presheaf import FiniteCategory
from algset.fincat.textformat import dump_category, parse_category_lines

Sieve = frozenset  # of arrow indices, all with the same codomain


def is_sieve(C: FiniteCategory, a: int, S) -> bool:
    if any(C.cod[f] != a for f in S):
        return False
    return all(C.compose(f, g) in S for f in S for g in C.arrows_into(C.dom[f]))


def maximal_sieve(C: FiniteCategory, a: int) -> Sieve:
    return frozenset(C.arrows_into(a))


def generated_sieve(C: FiniteCategory, a: int, arrows) -> Sieve:
    return frozenset(C.compose(f, g) for f in arrows for g in C.arrows_into(C.dom[f]))


def pullback_sieve(C: FiniteCategory, f: int, S) -> Sieve:
    """f*S = {g : f g in S} on the domain of f."""
    return frozenset(g for g in C.arrows_into(C.dom[f]) if C.compose(f, g) in S)


def all_sieves(C: FiniteCategory, a: int) -> list[Sieve]:
    into = C.arrows_into(a)
    out = []
    for k in range(len(into) + 1):
        for sub in combinations(into, k):
            S = frozenset(sub)
            if is_sieve(C, a, S):
                out.append(S)
    return out


@dataclass(frozen=True)
class Site:
    C: FiniteCategory
    cov: tuple[frozenset, ...]               # per object: a set of sieves
    basis: tuple[frozenset, ...] | None = None
    name: str = "site"

    def covers(self, a: int) -> frozenset:
        return self.cov[a]

    def basis_covers(self, a: int) -> frozenset:
        return self.basis[a] if self.basis is not None else self.cov[a]

    def minimal_cover(self, a: int) -> Sieve:
        """Intersection of all covers of a (itself a cover on a valid site)."""
        out = maximal_sieve(self.C, a)
        for S in self.cov[a]:
            out &= S
        return out

    def show_sieve(self, S) -> str:
        return "{" + " ".join(sorted(self.C.names[f] for f in S)) + "}"


@dataclass
class SiteVerdict:
    axiom: str
    passed: bool
    instances: int
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "passed": self.passed, "instances": self.instances,
                "witness": self.witness}


def check_sieves(site: Site) -> None:
    C = site.C
    for families in (site.cov, site.basis or ()):
        for a, Ss in enumerate(families):
            for S in Ss:
                if not is_sieve(C, a, S):
                    raise MalformedInput(
                        f"{site.show_sieve(S)} is not a sieve on {C.objects[a]}")


def validate_site(site: Site) -> dict[str, SiteVerdict]:
    """Exhaustive check of (M) maximal sieves cover, (L) stability under
    pullback and (T) local character."""
    C = site.C
    check_sieves(site)
    out = {}
    n, wit = 0, None
    for a in range(C.n_objects):
        n += 1
        if maximal_sieve(C, a) not in site.cov[a]:
            wit = {"object": C.objects[a]}
            break
    out["M"] = SiteVerdict("M", wit is None, n, wit)
    n, wit = 0, None
    for a in range(C.n_objects):
        for S in site.cov[a]:
            for f in C.arrows_into(a):
                n += 1
                if pullback_sieve(C, f, S) not in site.cov[C.dom[f]]:
                    wit = {"object": C.objects[a], "sieve": site.show_sieve(S), "arrow": C.names[f],
                           "pulled": site.show_sieve(pullback_sieve(C, f, S))}
                    break
            if wit:
                break
        if wit:
            break
    out["L"] = SiteVerdict("L", wit is None, n, wit)
    n, wit = 0, None
    for a in range(C.n_objects):
        sieves = all_sieves(C, a)
        for T in sieves:
            if T in site.cov[a]:
                continue
            for S in site.cov[a]:
                n += 1
                if all(pullback_sieve(C, f, T) in site.cov[C.dom[f]] for f in S):
                    wit = {"object": C.objects[a], "sieve": site.show_sieve(T),
                           "locally_covered_by": site.show_sieve(S)}
                    break
            if wit:
                break
        if wit:
            break
    out["T"] = SiteVerdict("T", wit is None, n, wit)
    return out


@dataclass
class CovCheck:
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def bounded_cov_check(site: Site) -> CovCheck:
    """Does the basis generate exactly the declared covers (S covers iff it contains a basis cover)?"""
    if site.basis is None:
        return CovCheck(False, {"reason": "no basis"})
    C = site.C
    for a in range(C.n_objects):
        for S in all_sieves(C, a):
            generated = any(R <= S for R in site.basis[a])
            declared = S in site.cov[a]
            if generated != declared:
                return CovCheck(False, {"object": C.objects[a], "sieve": site.show_sieve(S),
                                        "declared": declared, "generated": generated})
    return CovCheck(True)


# -- constructions and fixtures ------------------------------------------------------

def site_from_basis(C: FiniteCategory, basis, name: str = "site") -> Site:
    """Covers = sieves containing a basis cover (basis given as arrow-index sets)."""
    basis = tuple(frozenset(frozenset(R) for R in Rs) for Rs in basis)
    cov = tuple(frozenset(S for S in all_sieves(C, a) if any(R <= S for R in basis[a]))
                for a in range(C.n_objects))
    return Site(C, cov, basis, name)


def trivial_site(C: FiniteCategory) -> Site:
    return site_from_basis(C, [[maximal_sieve(C, a)] for a in range(C.n_objects)], "trivial")


def dense_site(C: FiniteCategory) -> Site:
    """S covers a iff every arrow into a factors further into S."""
    cov = []
    for a in range(C.n_objects):
        keep = []
        for S in all_sieves(C, a):
            if all(any(C.compose(f, g) in S for g in C.arrows_into(C.dom[f])) for f in C.arrows_into(a)):
                keep.append(S)
        cov.append(frozenset(keep))
    cov = tuple(cov)
    basis = tuple(frozenset(S for S in cs if not any(T < S for T in cs)) for cs in cov)
    return Site(C, cov, basis, "dense")


def v_poset() -> FiniteCategory:
    """Three elements: a top t above two incomparable elements l and r."""
    return FiniteCategory.poset(("t", "l", "r"), (("l", "t"), ("r", "t")))


def two_object_category() -> FiniteCategory:
    return FiniteCategory.build(("a", "b"), (("u", "b", "a"),))


def two_object_site() -> Site:
    """b -> a with the single arrow u covering a."""
    C = two_object_category()
    u = C.arrow_index("u")
    return site_from_basis(C, [[{u}], [maximal_sieve(C, 1)]], "two-object")


def broken_stability_site() -> Site:
    """The empty sieve covers a, but its pullback to b does not cover b: (L) fails."""
    C = two_object_category()
    cov = (frozenset({maximal_sieve(C, 0), frozenset()}), frozenset({maximal_sieve(C, 1)}))
    return Site(C, cov, None, "broken-L")


def fixture_sites() -> dict[str, Site]:
    from algset.fincat.presheaf import sierpinski_category

    return {
        "trivial-sierpinski": trivial_site(sierpinski_category()),
        "trivial-v": trivial_site(v_poset()),
        "dense-v": dense_site(v_poset()),
        "two-object": two_object_site(),
        "broken-L": broken_stability_site(),
    }


# -- text format ---------------------------------------------------------------------

_SIEVE = re.compile(r"\{([^}]*)\}")


def load_site(text: str, name: str = "site") -> Site:
    lines = text.splitlines()
    cover_lines: list[tuple[int, str, str]] = []

    def grab(kind):
        def handler(lineno, line):
            cover_lines.append((lineno, kind, line))
        return handler

    C = parse_category_lines(lines, extra={"cover": grab("cover"), "basis": grab("basis")})
    cov = [set() for _ in range(C.n_objects)]
    basis = [set() for _ in range(C.n_objects)]
    saw_basis = False
    for lineno, kind, line in cover_lines:
        body = line.split(None, 1)[1] if " " in line else ""
        if ":" not in body:
            raise ParseError(f"{kind} line needs 'object: sieves'", lineno, 1)
        obj, rest = body.split(":", 1)
        obj = obj.strip()
        if obj not in C.objects:
            raise ParseError(f"unknown object {obj!r}", lineno, 1)
        a = C.object_index(obj)
        sieves = []
        for m in _SIEVE.finditer(rest):
            names = m.group(1).replace(",", " ").split()
            try:
                sieves.append(frozenset(C.arrow_index(n) for n in names))
            except ValueError:
                raise ParseError(f"unknown arrow in {m.group(0)}", lineno, m.start() + 1) from None
        if kind == "cover":
            cov[a].update(sieves)
        else:
            saw_basis = True
            basis[a].update(sieves)
    if not cover_lines:
        raise MalformedInput("site declares no covers")
    if all(not c for c in cov) and saw_basis:
        return site_from_basis(C, basis, name)
    return Site(C, tuple(frozenset(c) for c in cov),
                tuple(frozenset(b) for b in basis) if saw_basis else None, name)


def dump_site(site: Site) -> str:
    out = [dump_category(site.C).rstrip("\n")]
    C = site.C
    for a in range(C.n_objects):
        sieves = sorted(site.show_sieve(S) for S in site.cov[a])
        out.append(f"cover {C.objects[a]}: " + " ".join(sieves))
    if site.basis is not None:
        for a in range(C.n_objects):
            out.append(f"basis {C.objects[a]}: " + " ".join(sorted(site.show_sieve(S) for S in site.basis[a])))
    return "\n".join(out) + "\n"
