"""Finite index categories and the category of finite presheaves on them.

A presheaf assigns to every object ``c`` a set ``{0, ..., n_c - 1}`` and to
every arrow ``f: c -> d`` a restriction table ``X(d) -> X(c)``.  Morphisms are
tuples of component tables.  All constructions are componentwise, except the
Heyting implication and universal quantification, which look at every arrow
into the stage (that is where the non-Boolean behaviour comes from).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product as iproduct
from typing import Iterable, Sequence

from algset.errors import MalformedInput, PreconditionError, ResourceBoundError
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
from algset.fincat.finset import set_partitions


@dataclass(frozen=True)
class FiniteCategory:
    objects: tuple[str, ...]
    names: tuple[str, ...]
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    comp: tuple[tuple[int, ...], ...]  # comp[g][f] = g.f, or -1 when not composable
    capabilities: tuple[str, ...] = ()
    _into: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def build(cls, objects: Sequence[str], arrows: Iterable[tuple[str, str, str]],
              compose: dict[tuple[str, str], str] | None = None,
              capabilities: Iterable[str] = ()) -> "FiniteCategory":
        """Identities ``id_<obj>`` are added automatically.

        ``compose`` maps ``(g, f)`` to the name of ``g.f``.  Missing entries are
        inferred when the target hom-set has exactly one arrow.
        """
        objects = tuple(objects)
        obj_index = {o: i for i, o in enumerate(objects)}
        if len(obj_index) != len(objects):
            raise MalformedInput("duplicate object names")
        names = [f"id_{o}" for o in objects]
        dom = list(range(len(objects)))
        cod = list(range(len(objects)))
        for name, d, c in arrows:
            if name in names:
                raise MalformedInput(f"duplicate arrow {name!r}")
            if d not in obj_index or c not in obj_index:
                raise MalformedInput(f"arrow {name!r} has unknown endpoint")
            names.append(name)
            dom.append(obj_index[d])
            cod.append(obj_index[c])
        index = {n: i for i, n in enumerate(names)}
        n = len(names)
        comp = [[-1] * n for _ in range(n)]
        compose = dict(compose or {})
        for g in range(n):
            for f in range(n):
                if cod[f] != dom[g]:
                    continue
                if g < len(objects):
                    comp[g][f] = f
                elif f < len(objects):
                    comp[g][f] = g
                elif (names[g], names[f]) in compose:
                    h = compose[(names[g], names[f])]
                    if h not in index:
                        raise MalformedInput(f"composite {h!r} is not an arrow")
                    comp[g][f] = index[h]
                else:
                    cands = [h for h in range(n) if dom[h] == dom[f] and cod[h] == cod[g]]
                    if len(cands) != 1:
                        raise MalformedInput(
                            f"composite {names[g]}.{names[f]} is not determined")
                    comp[g][f] = cands[0]
        cat = cls(objects, tuple(names), tuple(dom), tuple(cod),
                  tuple(tuple(r) for r in comp), tuple(capabilities))
        cat.validate()
        return cat

    @classmethod
    def poset(cls, elements: Sequence[str], less: Iterable[tuple[str, str]]) -> "FiniteCategory":
        """The poset generated by ``less`` (pairs ``(a, b)`` meaning ``a <= b``)."""
        elements = tuple(elements)
        rel = {(a, a) for a in elements} | set(less)
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        arrows = [(f"{a}<{b}", a, b) for a, b in sorted(rel) if a != b]
        return cls.build(elements, arrows)

    def __post_init__(self):
        into = tuple(tuple(h for h in range(len(self.names)) if self.cod[h] == c)
                     for c in range(len(self.objects)))
        object.__setattr__(self, "_into", into)

    def validate(self) -> None:
        n = len(self.names)
        for h in range(n):
            for g in range(n):
                for f in range(n):
                    gf = self.comp[g][f]
                    if gf < 0 or self.comp[h][g] < 0:
                        continue
                    if self.comp[h][gf] != self.comp[self.comp[h][g]][f]:
                        raise MalformedInput(
                            f"composition not associative at {self.names[h]}, "
                            f"{self.names[g]}, {self.names[f]}")
        for g in range(n):
            for f in range(n):
                gf = self.comp[g][f]
                if gf >= 0 and (self.dom[gf] != self.dom[f] or self.cod[gf] != self.cod[g]):
                    raise MalformedInput(f"composite {self.names[g]}.{self.names[f]} has wrong ends")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.names)

    def identity(self, c: int) -> int:
        return c

    def arrows_into(self, c: int) -> tuple[int, ...]:
        return self._into[c]

    def hom(self, a: int, b: int) -> list[int]:
        return [h for h in range(self.n_arrows) if self.dom[h] == a and self.cod[h] == b]

    def compose(self, g: int, f: int) -> int:
        h = self.comp[g][f]
        if h < 0:
            raise PreconditionError("arrows not composable")
        return h

    def object_index(self, name: str) -> int:
        return self.objects.index(name)

    def arrow_index(self, name: str) -> int:
        return self.names.index(name)

    def non_identity(self) -> list[int]:
        return list(range(self.n_objects, self.n_arrows))


def point_category() -> FiniteCategory:
    return FiniteCategory.build(("*",), ())


def sierpinski_category() -> FiniteCategory:
    """Two objects and one arrow ``u: 0 -> 1`` (the index category ``. -> .``)."""
    return FiniteCategory.build(("0", "1"), (("u", "0", "1"),))


@dataclass(frozen=True)
class Presheaf:
    sizes: tuple[int, ...]
    restrict: tuple[tuple[int, ...], ...]

    def act(self, f: int, z: int) -> int:
        return self.restrict[f][z]


def _check_presheaf(C: FiniteCategory, sizes, restrict) -> bool:
    for h in range(C.n_arrows):
        table = restrict[h]
        if len(table) != sizes[C.cod[h]] or any(not 0 <= v < sizes[C.dom[h]] for v in table):
            return False
    for c in range(C.n_objects):
        if restrict[c] != tuple(range(sizes[c])):
            return False
    for g in range(C.n_arrows):
        for f in range(C.n_arrows):
            gf = C.comp[g][f]
            if gf < 0:
                continue
            tf, tg = restrict[f], restrict[g]
            if restrict[gf] != tuple(tf[tg[z]] for z in range(sizes[C.cod[g]])):
                return False
    return True


def _reindex(elems: list) -> dict:
    return {e: i for i, e in enumerate(elems)}


class PresheafCategory(AmbientCategory):
    capabilities = frozenset({FINITE_LIMITS, REGULAR, SUMS, HEYTING, PI, QUOTIENTS, FIBRE_CENSUS})

    def __init__(self, index: FiniteCategory, name: str | None = None, pi_ceiling: int = 50_000):
        self.C = index
        self.name = name or f"presheaves[{','.join(index.objects)}]"
        self.pi_ceiling = pi_ceiling

    def __repr__(self):
        return f"PresheafCategory({self.name})"

    # -- objects ------------------------------------------------------------
    def presheaf(self, sizes, restrict: dict[str, Sequence[int]] | None = None) -> Presheaf:
        """Build a presheaf from per-object sizes and named restriction tables."""
        C = self.C
        sizes = tuple(sizes)
        restrict = dict(restrict or {})
        tables = []
        for h in range(C.n_arrows):
            if h < C.n_objects:
                tables.append(tuple(range(sizes[h])))
            elif C.names[h] in restrict:
                tables.append(tuple(restrict.pop(C.names[h])))
            else:
                tables.append(None)
        # fill composites of named generators
        changed = True
        while changed:
            changed = False
            for g in range(C.n_arrows):
                for f in range(C.n_arrows):
                    gf = C.comp[g][f]
                    if gf >= 0 and tables[gf] is None and tables[g] is not None and tables[f] is not None:
                        tf, tg = tables[f], tables[g]
                        tables[gf] = tuple(tf[tg[z]] for z in range(sizes[C.cod[g]]))
                        changed = True
        if restrict or any(t is None for t in tables):
            raise MalformedInput("restriction tables missing or unknown")
        X = Presheaf(sizes, tuple(tables))
        if not _check_presheaf(C, sizes, X.restrict):
            raise MalformedInput("restriction tables are not functorial")
        return X

    def contains_object(self, X):
        return isinstance(X, Presheaf) and _check_presheaf(self.C, X.sizes, X.restrict)

    def size(self, X):
        return sum(X.sizes)

    def canonical_form(self, X: Presheaf) -> Presheaf:
        """Least relabelling of X under per-object permutations (iso-class key)."""
        C = self.C
        best = None
        for perms in iproduct(*(permutations(range(n)) for n in X.sizes)):
            tables = []
            for h in range(C.n_arrows):
                src, tgt = C.cod[h], C.dom[h]
                inv = [0] * X.sizes[src]
                for z, pz in enumerate(perms[src]):
                    inv[pz] = z
                old = X.restrict[h]
                tables.append(tuple(perms[tgt][old[inv[w]]] for w in range(X.sizes[src])))
            key = tuple(tables)
            if best is None or key < best:
                best = key
        return Presheaf(X.sizes, best)

    def _all_presheaves(self, sizes):
        C = self.C
        free = C.non_identity()
        choices = [iproduct(range(sizes[C.dom[h]]), repeat=sizes[C.cod[h]]) for h in free]
        base = [tuple(range(n)) for n in sizes]
        for combo in iproduct(*choices):
            tables = list(base) + list(combo)
            if _check_presheaf(C, sizes, tables):
                yield Presheaf(tuple(sizes), tuple(tables))

    def objects(self, max_size, up_to_iso: bool = True):
        k = self.C.n_objects
        for total in range(max_size + 1):
            for sizes in _compositions(total, k):
                seen = set()
                for X in self._all_presheaves(sizes):
                    if not up_to_iso:
                        yield X
                        continue
                    key = self.canonical_form(X)
                    if key not in seen:
                        seen.add(key)
                        yield key

    def representable(self, c: int) -> Presheaf:
        C = self.C
        homs = [list(C.hom(d, c)) for d in range(C.n_objects)]
        pos = [_reindex(hs) for hs in homs]
        tables = []
        for g in range(C.n_arrows):
            d, e = C.dom[g], C.cod[g]
            tables.append(tuple(pos[d][C.compose(h, g)] for h in homs[e]))
        return Presheaf(tuple(len(hs) for hs in homs), tuple(tables))

    def elements(self, X: Presheaf):
        for c, n in enumerate(X.sizes):
            for z in range(n):
                yield c, z

    # -- arrows -------------------------------------------------------------
    def arrow(self, X: Presheaf, Y: Presheaf, components) -> Arrow:
        comps = tuple(tuple(t) for t in components)
        a = Arrow(X, Y, comps)
        if not self.is_natural(a):
            raise MalformedInput("components are not natural")
        return a

    def is_natural(self, a: Arrow) -> bool:
        X, Y, comps = a.dom, a.cod, a.data
        C = self.C
        if len(comps) != C.n_objects:
            return False
        for c in range(C.n_objects):
            if len(comps[c]) != X.sizes[c] or any(not 0 <= v < Y.sizes[c] for v in comps[c]):
                return False
        for h in C.non_identity():
            s, t = C.cod[h], C.dom[h]
            for z in range(X.sizes[s]):
                if comps[t][X.restrict[h][z]] != Y.restrict[h][comps[s][z]]:
                    return False
        return True

    def hom(self, A, B):
        C = self.C
        k = C.n_objects
        checks = [[] for _ in range(k)]
        for h in C.non_identity():
            later = max(C.dom[h], C.cod[h])
            checks[later].append(h)
        comps: list = [None] * k

        def rec(c):
            if c == k:
                yield Arrow(A, B, tuple(comps))
                return
            for t in iproduct(range(B.sizes[c]), repeat=A.sizes[c]):
                comps[c] = t
                ok = True
                for h in checks[c]:
                    s, u = C.cod[h], C.dom[h]
                    ts, tu = comps[s], comps[u]
                    ra, rb = A.restrict[h], B.restrict[h]
                    if any(tu[ra[z]] != rb[ts[z]] for z in range(A.sizes[s])):
                        ok = False
                        break
                if ok:
                    yield from rec(c + 1)
            comps[c] = None

        yield from rec(0)

    def identity(self, A):
        return Arrow(A, A, tuple(tuple(range(n)) for n in A.sizes))

    def _compose(self, g, f):
        return Arrow(f.dom, g.cod, tuple(
            tuple(gc[v] for v in fc) for gc, fc in zip(g.data, f.data)))

    def terminal(self):
        k = self.C.n_objects
        return Presheaf((1,) * k, tuple((0,) for _ in range(self.C.n_arrows)))

    def initial(self):
        return Presheaf((0,) * self.C.n_objects, tuple(() for _ in range(self.C.n_arrows)))

    def terminal_arrow(self, X):
        return Arrow(X, self.terminal(), tuple((0,) * n for n in X.sizes))

    def initial_arrow(self, X):
        return Arrow(self.initial(), X, tuple(() for _ in X.sizes))

    def _from_elements(self, stage_elems: list[list], act) -> tuple[Presheaf, list[dict]]:
        """Presheaf whose stage c lists ``stage_elems[c]``; ``act(h, e)`` restricts."""
        C = self.C
        pos = [_reindex(es) for es in stage_elems]
        tables = []
        for h in range(C.n_arrows):
            s, t = C.cod[h], C.dom[h]
            tables.append(tuple(pos[t][act(h, e)] for e in stage_elems[s]))
        return Presheaf(tuple(len(es) for es in stage_elems), tuple(tables)), pos

    def product(self, objs):
        objs = tuple(objs)
        k = self.C.n_objects
        stage = [list(iproduct(*(range(X.sizes[c]) for X in objs))) for c in range(k)]
        P, _ = self._from_elements(
            stage, lambda h, e: tuple(X.restrict[h][v] for X, v in zip(objs, e)))
        projs = tuple(
            Arrow(P, X, tuple(tuple(e[i] for e in stage[c]) for c in range(k)))
            for i, X in enumerate(objs))
        return P, projs

    def tuple_arrow(self, arrows):
        arrows = tuple(arrows)
        objs = tuple(a.cod for a in arrows)
        P, _ = self.product(objs)
        k = self.C.n_objects
        comps = []
        for c in range(k):
            sizes = [X.sizes[c] for X in objs]
            row = []
            for z in range(arrows[0].dom.sizes[c]):
                idx = 0
                for a, n in zip(arrows, sizes):
                    idx = idx * n + a.data[c][z]
                row.append(idx)
            comps.append(tuple(row))
        return Arrow(arrows[0].dom, P, tuple(comps))

    def _pb_stage(self, f, g):
        k = self.C.n_objects
        out = []
        for c in range(k):
            by_val: dict[int, list[int]] = {}
            for z, v in enumerate(g.data[c]):
                by_val.setdefault(v, []).append(z)
            out.append([(b, z) for b, v in enumerate(f.data[c]) for z in by_val.get(v, ())])
        return out

    def pullback(self, f, g):
        if f.cod != g.cod:
            raise PreconditionError("pullback needs a common codomain")
        B, D = f.dom, g.dom
        stage = self._pb_stage(f, g)
        P, _ = self._from_elements(stage, lambda h, e: (B.restrict[h][e[0]], D.restrict[h][e[1]]))
        k = self.C.n_objects
        p1 = Arrow(P, B, tuple(tuple(e[0] for e in stage[c]) for c in range(k)))
        p2 = Arrow(P, D, tuple(tuple(e[1] for e in stage[c]) for c in range(k)))
        return P, p1, p2

    def pullback_mediator(self, f, g, a, b):
        P, _, _ = self.pullback(f, g)
        stage = self._pb_stage(f, g)
        k = self.C.n_objects
        comps = []
        for c in range(k):
            pos = _reindex(stage[c])
            comps.append(tuple(pos[(a.data[c][z], b.data[c][z])] for z in range(a.dom.sizes[c])))
        return Arrow(a.dom, P, tuple(comps))

    def equalizer(self, f, g):
        k = self.C.n_objects
        S = Subobject(f.dom, tuple(
            frozenset(z for z in range(f.dom.sizes[c]) if f.data[c][z] == g.data[c][z])
            for c in range(k)))
        return self.sub_mono(S)

    def coproduct(self, A, B):
        C = self.C
        k = C.n_objects
        tables = []
        for h in range(C.n_arrows):
            t = C.dom[h]
            tables.append(A.restrict[h] + tuple(v + A.sizes[t] for v in B.restrict[h]))
        S = Presheaf(tuple(a + b for a, b in zip(A.sizes, B.sizes)), tuple(tables))
        i1 = Arrow(A, S, tuple(tuple(range(A.sizes[c])) for c in range(k)))
        i2 = Arrow(B, S, tuple(tuple(range(A.sizes[c], A.sizes[c] + B.sizes[c])) for c in range(k)))
        return S, i1, i2

    def copair(self, f, g):
        S, _, _ = self.coproduct(f.dom, g.dom)
        return Arrow(S, f.cod, tuple(a + b for a, b in zip(f.data, g.data)))

    def image_factorization(self, f):
        S = Subobject(f.cod, tuple(frozenset(comp) for comp in f.data))
        m = self.sub_mono(S)
        k = self.C.n_objects
        pos = [_reindex(m.data[c]) for c in range(k)]
        e = Arrow(f.dom, m.dom, tuple(tuple(pos[c][v] for v in f.data[c]) for c in range(k)))
        return e, m

    def is_mono(self, f):
        return all(len(set(comp)) == len(comp) for comp in f.data)

    def is_cover(self, f):
        return all(len(set(comp)) == n for comp, n in zip(f.data, f.cod.sizes))

    def fibre_census(self, f):
        for comp, n in zip(f.data, f.cod.sizes):
            counts = [0] * n
            for v in comp:
                counts[v] += 1
            yield from counts

    # -- subobjects ---------------------------------------------------------
    def sub(self, X, stages) -> Subobject:
        S = Subobject(X, tuple(frozenset(s) for s in stages))
        if not self.is_subpresheaf(S):
            raise MalformedInput("not closed under restriction")
        return S

    def is_subpresheaf(self, S: Subobject) -> bool:
        X = S.base
        C = self.C
        for h in C.non_identity():
            s, t = C.cod[h], C.dom[h]
            if any(X.restrict[h][z] not in S.data[t] for z in S.data[s]):
                return False
        return True

    def subobjects(self, X):
        per_stage = [
            [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
            for n in X.sizes
        ]
        for combo in iproduct(*per_stage):
            S = Subobject(X, tuple(combo))
            if self.is_subpresheaf(S):
                yield S

    def sub_top(self, X):
        return Subobject(X, tuple(frozenset(range(n)) for n in X.sizes))

    def sub_bottom(self, X):
        return Subobject(X, tuple(frozenset() for _ in X.sizes))

    def sub_meet(self, S, T):
        return Subobject(S.base, tuple(a & b for a, b in zip(S.data, T.data)))

    def sub_join(self, S, T):
        return Subobject(S.base, tuple(a | b for a, b in zip(S.data, T.data)))

    def sub_leq(self, S, T):
        return all(a <= b for a, b in zip(S.data, T.data))

    def sub_implies(self, S, T):
        X = S.base
        C = self.C
        out = []
        for c in range(C.n_objects):
            keep = set()
            for z in range(X.sizes[c]):
                if all(X.restrict[h][z] not in S.data[C.dom[h]] or X.restrict[h][z] in T.data[C.dom[h]]
                       for h in C.arrows_into(c)):
                    keep.add(z)
            out.append(frozenset(keep))
        return Subobject(X, tuple(out))

    def sub_pullback(self, f, S):
        return Subobject(f.dom, tuple(
            frozenset(z for z, v in enumerate(comp) if v in s) for comp, s in zip(f.data, S.data)))

    def sub_image(self, f, S):
        return Subobject(f.cod, tuple(
            frozenset(comp[z] for z in s) for comp, s in zip(f.data, S.data)))

    def sub_forall(self, f, S):
        X, Y = f.dom, f.cod
        C = self.C
        out = []
        for c in range(C.n_objects):
            keep = set()
            for y in range(Y.sizes[c]):
                ok = True
                for h in C.arrows_into(c):
                    d = C.dom[h]
                    yh = Y.restrict[h][y]
                    if any(f.data[d][x] == yh and x not in S.data[d] for x in range(X.sizes[d])):
                        ok = False
                        break
                if ok:
                    keep.add(y)
            out.append(frozenset(keep))
        return Subobject(Y, tuple(out))

    def sub_mono(self, S):
        X = S.base
        stage = [sorted(s) for s in S.data]
        P, _ = self._from_elements(stage, lambda h, z: X.restrict[h][z])
        return Arrow(P, X, tuple(tuple(s) for s in stage))

    def sub_of_mono(self, m):
        if not self.is_mono(m):
            raise PreconditionError(f"{m!r} is not monic")
        return Subobject(m.cod, tuple(frozenset(comp) for comp in m.data))

    # -- relations, quotients ----------------------------------------------
    def relation_pairs(self, X, R: Subobject) -> list[set[tuple[int, int]]]:
        return [{(e // n, e % n) for e in s} for s, n in zip(R.data, X.sizes)]

    def relation_from_pairs(self, X, stage_pairs) -> Subobject:
        XX, _, _ = self.binary_product(X, X)
        return Subobject(XX, tuple(
            frozenset(a * n + b for a, b in pairs) for pairs, n in zip(stage_pairs, X.sizes)))

    def equivalence_relations(self, X):
        C = self.C
        for labels in iproduct(*(set_partitions(n) for n in X.sizes)):
            ok = True
            for h in C.non_identity():
                s, t = C.cod[h], C.dom[h]
                r = X.restrict[h]
                for a in range(X.sizes[s]):
                    for b in range(a + 1, X.sizes[s]):
                        if labels[s][a] == labels[s][b] and labels[t][r[a]] != labels[t][r[b]]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                yield self.relation_from_pairs(X, [
                    [(a, b) for a in range(n) for b in range(n) if lab[a] == lab[b]]
                    for lab, n in zip(labels, X.sizes)])

    def is_equivalence_relation(self, X, R):
        XX, _, _ = self.binary_product(X, X)
        if R.base != XX or not self.is_subpresheaf(R):
            return False
        for pairs, n in zip(self.relation_pairs(X, R), X.sizes):
            if any((a, a) not in pairs for a in range(n)):
                return False
            if any((b, a) not in pairs for a, b in pairs):
                return False
            if any((a, d) not in pairs for a, b in pairs for c, d in pairs if b == c):
                return False
        return True

    def quotient(self, X, R):
        if not self.is_equivalence_relation(X, R):
            raise PreconditionError("quotient needs an equivalence relation")
        labels = []
        for pairs, n in zip(self.relation_pairs(X, R), X.sizes):
            lab: list[int] = []
            reps: list[int] = []
            for x in range(n):
                for i, r in enumerate(reps):
                    if (x, r) in pairs:
                        lab.append(i)
                        break
                else:
                    lab.append(len(reps))
                    reps.append(x)
            labels.append((lab, reps))
        C = self.C
        tables = []
        for h in range(C.n_arrows):
            s, t = C.cod[h], C.dom[h]
            lab_t = labels[t][0]
            tables.append(tuple(lab_t[X.restrict[h][r]] for r in labels[s][1]))
        Q = Presheaf(tuple(len(reps) for _, reps in labels), tuple(tables))
        return Arrow(X, Q, tuple(tuple(lab) for lab, _ in labels))

    # -- dependent products -------------------------------------------------
    def _sections(self, f: Arrow, p: Arrow, c: int, y: int):
        """Natural sections of p over the pullback of f along the element y of Y(c)."""
        C = self.C
        X, Y, P = f.dom, f.cod, p.dom
        keys = []
        for h in C.arrows_into(c):
            d = C.dom[h]
            yh = Y.restrict[h][y]
            for x in range(X.sizes[d]):
                if f.data[d][x] == yh:
                    keys.append((h, x))
        key_pos = _reindex(keys)
        options = []
        for h, x in keys:
            d = C.dom[h]
            options.append([s for s in range(P.sizes[d]) if p.data[d][s] == x])
        # constraints: restricting the (h, x) entry along g gives the (h.g, x.g) entry
        cons = []
        for i, (h, x) in enumerate(keys):
            d = C.dom[h]
            for g in C.arrows_into(d):
                if g == d:
                    continue
                j = key_pos[(C.compose(h, g), X.restrict[g][x])]
                cons.append((i, j, g))
        total = 1
        for o in options:
            total *= len(o)
        if total > self.pi_ceiling:
            raise ResourceBoundError(f"section search over {total} candidates", total)
        by_late: list[list] = [[] for _ in keys]
        for i, j, g in cons:
            by_late[max(i, j)].append((i, j, g))
        chosen = [0] * len(keys)
        out = []

        def rec(i):
            if i == len(keys):
                out.append(tuple(chosen))
                return
            for s in options[i]:
                chosen[i] = s
                if all(P.restrict[g][chosen[a]] == chosen[b] for a, b, g in by_late[i]):
                    rec(i + 1)

        rec(0)
        return keys, out

    def pi_along(self, f, p):
        if p.cod != f.dom:
            raise PreconditionError("p must be an object over the domain of f")
        C = self.C
        Y = f.cod
        stage = []
        key_tables = []
        for c in range(C.n_objects):
            elems = []
            keys_c = []
            for y in range(Y.sizes[c]):
                keys, secs = self._sections(f, p, c, y)
                keys_c.append(_reindex(keys))
                elems.extend((y, s) for s in secs)
            stage.append(elems)
            key_tables.append(keys_c)

        def act(k, e):
            y, s = e
            c = C.cod[k]
            c2 = C.dom[k]
            y2 = Y.restrict[k][y]
            src = key_tables[c][y]
            keys2 = sorted(key_tables[c2][y2], key=key_tables[c2][y2].get)
            return (y2, tuple(s[src[(C.compose(k, h), x)]] for h, x in keys2))

        Pi, _ = self._from_elements(stage, act)
        arrow = Arrow(Pi, Y, tuple(tuple(y for y, _ in stage[c]) for c in range(C.n_objects)))
        _, pulled, to_pi = self.pullback(f, arrow)
        counit = []
        for c in range(C.n_objects):
            row = []
            for x, e in zip(pulled.data[c], to_pi.data[c]):
                y, s = stage[c][e]
                row.append(s[key_tables[c][y][(c, x)]])
            counit.append(tuple(row))
        return PiResult(arrow, pulled, to_pi, Arrow(pulled.dom, p.dom, tuple(counit)))

    def describe(self, X):
        if isinstance(X, Presheaf):
            return f"Presheaf(sizes={X.sizes})"
        return repr(X)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
