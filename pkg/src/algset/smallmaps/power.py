"""Power classes, bounded truth values and dependent products along small maps."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as iproduct

from algset.errors import InconclusiveError, PreconditionError, UnsupportedStructure
from algset.fincat.base import Arrow, PiResult, Subobject
from algset.fincat.finset import SkeletalFinSet
from algset.fincat.presheaf import PresheafCategory
from algset.smallmaps.classes import MapClass


@dataclass(frozen=True)
class PowerClassData:
    C: object
    power: object
    member: Subobject          # the small relation  in_C  inside  C x P_s(C)
    subsets: tuple             # decoding of the elements of P_s(C)
    analytic: bool = True

    def index_of(self, subset) -> int:
        return self.subsets.index(subset)


def is_small_relation(cls: MapClass, C, D, R: Subobject) -> bool:
    """R inside C x D is small when R -> C x D -> D is in the class."""
    cat = cls.category
    _, _, pD = cat.binary_product(C, D)
    return cls.contains(cat.compose(pD, cat.sub_mono(R)))


def power_class(cls: MapClass, C) -> PowerClassData:
    cat = cls.category
    if isinstance(cat, SkeletalFinSet):
        return _finset_power(cls, C)
    if isinstance(cat, PresheafCategory) and cls.label == "all" and type(cat) is PresheafCategory:
        return _presheaf_power(cat, C)
    raise InconclusiveError(f"no power-class witness for {cls.label} on {cat.name}")


def _finset_power(cls: MapClass, C: int) -> PowerClassData:
    cat = cls.category
    subsets = []
    for k in range(C + 1):
        if not cls.contains(cat.terminal_arrow(k)):
            continue
        subsets.extend(frozenset(s) for s in combinations(range(C), k))
    P = len(subsets)
    member = Subobject(C * P, frozenset(c * P + i for i, s in enumerate(subsets) for c in s))
    return PowerClassData(C, P, member, tuple(subsets))


def classify(cls: MapClass, data: PowerClassData, D, R: Subobject) -> Arrow:
    """The map rho: D -> P_s(C) whose pullback of the membership relation is R."""
    cat = cls.category
    if not isinstance(cat, SkeletalFinSet):
        raise UnsupportedStructure("direct classification is implemented for finite sets")
    C = data.C
    table = []
    for d in range(D):
        fibre = frozenset(c for c in range(C) if c * D + d in R.data)
        if fibre not in data.subsets:
            raise PreconditionError(f"relation is not small over {d}")
        table.append(data.subsets.index(fibre))
    return Arrow(D, data.power, tuple(table))


def classifying_square(cat, data: PowerClassData, rho: Arrow) -> Subobject:
    """Pullback of the membership relation along 1 x rho."""
    C = data.C
    CD, pC, pD = cat.binary_product(C, rho.dom)
    one_rho = cat.tuple_arrow((pC, cat.compose(rho, pD)))
    return cat.sub_pullback(one_rho, data.member)


def classifying_maps(cls: MapClass, data: PowerClassData, D, R: Subobject, ceiling: int):
    cat = cls.category
    res = cat.search_hom(D, data.power, lambda rho: classifying_square(cat, data, rho) == R, ceiling)
    if not res.exhausted:
        raise InconclusiveError("classifying-map search hit the ceiling")
    return list(res.found)


def power_map(cls: MapClass, data_src: PowerClassData, data_tgt: PowerClassData, f: Arrow) -> Arrow:
    """P_s(f): direct image of small subsets."""
    cat = cls.category
    if isinstance(cat, SkeletalFinSet):
        table = []
        for s in data_src.subsets:
            img = frozenset(f.data[c] for c in s)
            if img not in data_tgt.subsets:
                raise PreconditionError("direct image of a small subset is not small")
            table.append(data_tgt.subsets.index(img))
        return Arrow(data_src.power, data_tgt.power, tuple(table))
    # generic: classify the image of the membership relation along f x 1
    P = data_src.power
    CP, pC, pP = cat.binary_product(data_src.C, P)
    m = cat.sub_mono(data_src.member)
    img = cat.relation(cat.compose(f, pC, m), cat.compose(pP, m))
    found = classifying_maps(cls, data_tgt, P, img, 10**6)
    if len(found) != 1:
        raise PreconditionError("image relation is not classified uniquely")
    return found[0]


def omega_b(cls: MapClass) -> PowerClassData:
    """Bounded truth values: the power class of the terminal object."""
    return power_class(cls, cls.category.terminal())


def _presheaf_power(cat: PresheafCategory, C) -> PowerClassData:
    """Power object of a presheaf: P(C)(c) = subpresheaves of y(c) x C."""
    I = cat.C
    stage = []
    for c in range(I.n_objects):
        yc = cat.representable(c)
        YC, _, _ = cat.binary_product(yc, C)
        stage.append((yc, YC, list(cat.subobjects(YC))))

    def restrict(h, S):
        # along h: d -> c, pull back S inside y(c) x C along y(h) x 1
        c, d = I.cod[h], I.dom[h]
        yc, YC, _ = stage[c]
        yd, YD, _ = stage[d]
        homs_c = [list(I.hom(e, c)) for e in range(I.n_objects)]
        homs_d = [list(I.hom(e, d)) for e in range(I.n_objects)]
        comps = tuple(
            tuple(homs_c[e].index(I.compose(h, g)) for g in homs_d[e]) for e in range(I.n_objects))
        yh = Arrow(yd, yc, comps)
        _, p1, p2 = cat.binary_product(yd, C)
        m = cat.tuple_arrow((cat.compose(yh, p1), p2))
        return cat.sub_pullback(m, S)

    elems = [[S for S in st[2]] for st in stage]
    P, _ = cat._from_elements(elems, restrict)
    # membership: at stage c, pairs (x, S) with (id_c, x) in S
    CP, _, _ = cat.binary_product(C, P)
    member = []
    for c in range(I.n_objects):
        yc, YC, subs = stage[c]
        idpos = list(I.hom(c, c)).index(c)
        keep = set()
        for x in range(C.sizes[c]):
            for i, S in enumerate(subs):
                if idpos * C.sizes[c] + x in S.data[c]:
                    keep.add(x * P.sizes[c] + i)
        member.append(frozenset(keep))
    return PowerClassData(C, P, Subobject(CP, tuple(member)), tuple(tuple(st[2]) for st in stage))


def pi_along(cls: MapClass, f: Arrow, p: Arrow, *, test_size: int = 1,
             ceiling: int = 200_000) -> PiResult:
    """Pi_f(p) for a small f, with the adjunction f* -| Pi_f checked on test objects."""
    cat = cls.category
    if not cls.contains(f):
        raise PreconditionError("pi_along needs a small map")
    res = cat.pi_along(f, p)
    if not verify_pi(cat, f, p, res, cat.objects(test_size), ceiling):
        raise InconclusiveError("adjunction check failed for the constructed Pi")
    return res


def verify_pi(cat, f: Arrow, p: Arrow, res: PiResult, test_objects, ceiling: int = 200_000) -> bool:
    """For every q: Q -> Y, maps Q -> Pi over Y correspond bijectively to maps f*Q -> P over X."""
    Y = f.cod
    piY = res.arrow
    for Q in test_objects:
        for q in cat.hom(Q, Y):
            FQ, a, b = cat.pullback(f, q)
            targets = set(maps_over(cat, a, p))
            seen = set()
            count = 0
            for v in maps_over(cat, q, piY):
                count += 1
                if count > ceiling:
                    raise InconclusiveError("Pi verification hit the ceiling")
                fv = cat.pullback_mediator(f, piY, a, cat.compose(v, b))
                u = cat.compose(res.counit, cat.compose(_pulled_iso(cat, res), fv))
                if u in seen or u not in targets:
                    return False
                seen.add(u)
            if seen != targets:
                return False
    return True


def maps_over(cat, a: Arrow, p: Arrow):
    """All u with p u = a."""
    if isinstance(cat, SkeletalFinSet):
        fib = cat.fibres(p)
        for t in iproduct(*(fib[v] for v in a.data)):
            yield Arrow(a.dom, p.dom, t)
        return
    for u in cat.hom(a.dom, p.dom):
        if cat.compose(p, u) == a:
            yield u


def _pulled_iso(cat, res: PiResult) -> Arrow:
    # res.pulled/to_pi is exactly pullback(f, res.arrow), so the comparison is the identity
    return cat.identity(res.pulled.dom)
