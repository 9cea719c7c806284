"""Seeded random formulas over a single-sorted signature."""

from __future__ import annotations

import random

from algset.logic.syntax import (
    And,
    Bi,
    BExists,
    BForall,
    Bottom,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Mem,
    Not,
    Or,
    Rel,
    Top,
)


def random_formula(rng: random.Random, variables, relations: dict[str, int], depth: int,
                   *, membership: bool = True, bounded_only: bool = False,
                   pool=("u", "v", "w")) -> Formula:
    """A formula whose free variables lie in ``variables``.

    ``relations`` maps relation names to arities.  Quantifiers bind names
    from ``pool`` (shadowing is allowed and exercised).
    """
    variables = list(variables)

    def atom(vs):
        choices = ["top", "bot"] if not vs else ["eq", "rel", "mem", "eq", "rel", "mem"]
        if not membership:
            choices = [c for c in choices if c != "mem"]
        if not relations:
            choices = [c for c in choices if c != "rel"]
        kind = rng.choice(choices or ["top"])
        if kind == "top":
            return Top()
        if kind == "bot":
            return Bottom()
        if kind == "eq":
            return Eq(rng.choice(vs), rng.choice(vs))
        if kind == "mem":
            return Mem(rng.choice(vs), rng.choice(vs))
        name = rng.choice(sorted(relations))
        return Rel(name, tuple(rng.choice(vs) for _ in range(relations[name])))

    def go(vs, d):
        if d == 0 or rng.random() < 0.2:
            return atom(vs)
        k = rng.randrange(10)
        if k == 0:
            return Not(go(vs, d - 1))
        if k <= 4:
            op = rng.choice((And, Or, Implies, Iff))
            return op(go(vs, d - 1), go(vs, d - 1))
        x = rng.choice(pool)
        inner = vs + [x] if x not in vs else vs
        if membership and vs and (bounded_only or k >= 8):
            if k == 9 and len(vs) >= 2:
                a, b = rng.choice(vs), rng.choice(vs)
                y = rng.choice([p for p in pool if p != x])
                ys = inner + [y] if y not in inner else inner
                return Bi(x, a, y, b, go(ys, d - 1))
            q = rng.choice((BForall, BExists))
            return q(x, rng.choice(vs), go(inner, d - 1))
        if bounded_only:
            return atom(vs)
        q = rng.choice((Forall, Exists))
        return q(x, None, go(inner, d - 1))

    return go(variables, depth)


def formula_corpus(seed: int, n: int, variables=("a", "b"), relations=None, depth: int = 4) -> list[Formula]:
    rng = random.Random(seed)
    relations = {"P": 1, "R": 2} if relations is None else relations
    return [random_formula(rng, variables, relations, depth) for _ in range(n)]
