"""Two-valued Tarskian evaluation over finite sets, used as an oracle."""

from __future__ import annotations

from itertools import product as iproduct

from algset.errors import UnsupportedStructure
from algset.fincat.base import Subobject
from algset.fincat.finset import SkeletalFinSet
from algset.logic.semantics import Environment
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


def _decode(index: int, sizes) -> tuple[int, ...]:
    out = []
    for n in reversed(sizes):
        index, r = divmod(index, n)
        out.append(r)
    return tuple(reversed(out))


class ClassicalModel:
    """Relations as Python sets of tuples; quantifiers by exhaustive iteration."""

    def __init__(self, env: Environment):
        if not isinstance(env.category, SkeletalFinSet):
            raise UnsupportedStructure("the classical oracle needs finite sets")
        self.env = env
        self.rels = {}
        for name, (sorts, R) in env.relations.items():
            sizes = [env.sorts[s] for s in sorts]
            self.rels[name] = {_decode(i, sizes) for i in R.data}

    def sort_size(self, phi) -> int:
        env = self.env
        if isinstance(phi, (BForall, BExists)):
            return env.sorts[env.relations[env.membership][0][0]]
        return env.sorts[phi.sort or env.default_sort]

    def _member(self, x: int, y: int) -> bool:
        return (x, y) in self.rels[self.env.membership]

    def truth(self, phi: Formula, a: dict[str, int]) -> bool:
        if isinstance(phi, Top):
            return True
        if isinstance(phi, Bottom):
            return False
        if isinstance(phi, Eq):
            return a[phi.left] == a[phi.right]
        if isinstance(phi, Mem):
            return self._member(a[phi.elem], a[phi.coll])
        if isinstance(phi, Rel):
            return tuple(a[v] for v in phi.args) in self.rels[phi.name]
        if isinstance(phi, Not):
            return not self.truth(phi.body, a)
        if isinstance(phi, And):
            return self.truth(phi.left, a) and self.truth(phi.right, a)
        if isinstance(phi, Or):
            return self.truth(phi.left, a) or self.truth(phi.right, a)
        if isinstance(phi, Implies):
            return (not self.truth(phi.left, a)) or self.truth(phi.right, a)
        if isinstance(phi, Iff):
            return self.truth(phi.left, a) == self.truth(phi.right, a)
        if isinstance(phi, Bi):
            return self.truth(phi.expand(), a)
        if isinstance(phi, (Forall, BForall)):
            for v in range(self.sort_size(phi)):
                if isinstance(phi, BForall) and not self._member(v, a[phi.bound]):
                    continue
                if not self.truth(phi.body, {**a, phi.var: v}):
                    return False
            return True
        if isinstance(phi, (Exists, BExists)):
            for v in range(self.sort_size(phi)):
                if isinstance(phi, BExists) and not self._member(v, a[phi.bound]):
                    continue
                if self.truth(phi.body, {**a, phi.var: v}):
                    return True
            return False
        raise TypeError(f"not a formula: {phi!r}")


def classical_truth_set(phi: Formula, env: Environment, context) -> Subobject:
    """The set of context tuples satisfying phi, indexed lexicographically."""
    model = ClassicalModel(env)
    context = tuple(context)
    sizes = [env.sorts[s] for _, s in context]
    total = 1
    for n in sizes:
        total *= n
    keep = set()
    for i, values in enumerate(iproduct(*(range(n) for n in sizes))):
        if model.truth(phi, {v: x for (v, _), x in zip(context, values)}):
            keep.add(i)
    return Subobject(total, frozenset(keep))
