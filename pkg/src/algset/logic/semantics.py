"""Kripke-Joyal evaluation of formulas to subobjects of context objects."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from algset.errors import MalformedInput, ResourceBoundError
from algset.fincat.base import AmbientCategory, Arrow, Subobject
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
    all_vars,
    free_vars,
    fresh,
    substitute,
)

Context = tuple[tuple[str, str], ...]


@dataclass
class Environment:
    """Interpretation of a signature in an ambient category.

    ``relations`` maps a name to its argument sorts and a subobject of the
    product of those sorts (the sort object itself for unary relations).
    ``membership`` names the relation read by ``x in y`` and by bounded
    quantifiers.  ``variables`` gives the sorts of free variables.
    """

    category: AmbientCategory
    sorts: dict[str, object]
    relations: dict[str, tuple[tuple[str, ...], Subobject]] = field(default_factory=dict)
    membership: str | None = None
    variables: dict[str, str] = field(default_factory=dict)
    default_sort: str | None = None

    def __post_init__(self):
        if self.default_sort is None and len(self.sorts) == 1:
            self.default_sort = next(iter(self.sorts))

    def element_sort(self) -> str:
        if self.membership is None:
            raise MalformedInput("bounded quantifier without a membership relation")
        return self.relations[self.membership][0][0]

    def with_relation(self, name: str, sorts: Sequence[str], sub: Subobject) -> "Environment":
        rels = dict(self.relations)
        rels[name] = (tuple(sorts), sub)
        return Environment(self.category, self.sorts, rels, self.membership, dict(self.variables),
                           self.default_sort)


class Evaluator:
    """Evaluates subformulas in the context of exactly their free variables.

    Results are memoized on (subformula, context); connectives pull their
    arguments back along context projections before combining them.
    """

    def __init__(self, env: Environment, max_context: int = 2_000_000):
        self.env = env
        self.cat = env.category
        self.max_context = max_context
        self._memo: dict = {}
        self._objects: dict = {}
        self._restrict: dict = {}

    # -- contexts
    def context_object(self, ctx: Context):
        if ctx in self._objects:
            return self._objects[ctx]
        cat = self.cat
        objs = [self.env.sorts[s] for _, s in ctx]
        if not ctx:
            out = (cat.terminal(), ())
        elif len(ctx) == 1:
            out = (objs[0], (cat.identity(objs[0]),))
        else:
            out = cat.product(objs)
        if cat.size(out[0]) > self.max_context:
            raise ResourceBoundError(f"context of size {cat.size(out[0])} exceeds the budget",
                                     {"context": ctx})
        self._objects[ctx] = out
        return out

    def restriction(self, big: Context, small: Context) -> Arrow:
        """Projection from the context object of ``big`` to that of ``small``."""
        key = (big, small)
        if key in self._restrict:
            return self._restrict[key]
        cat = self.cat
        B, projs = self.context_object(big)
        names = [v for v, _ in big]
        if not small:
            r = cat.terminal_arrow(B)
        elif small == big:
            r = cat.identity(B)
        elif len(small) == 1:
            r = projs[names.index(small[0][0])]
        else:
            r = cat.tuple_arrow([projs[names.index(v)] for v, _ in small])
        self._restrict[key] = r
        return r

    def pull(self, S: Subobject, small: Context, big: Context) -> Subobject:
        if small == big:
            return S
        return self.cat.sub_pullback(self.restriction(big, small), S)

    # -- sorts of bound variables
    def quant_sort(self, phi) -> str:
        if isinstance(phi, (BForall, BExists)):
            return self.env.element_sort()
        s = phi.sort or self.env.default_sort
        if s is None:
            raise MalformedInput(f"quantifier over {phi.var} has no sort")
        return s

    def canonical(self, phi: Formula, scope: dict[str, str]) -> Context:
        return tuple(sorted((v, scope[v]) for v in free_vars(phi)))

    # -- evaluation
    def evaluate(self, phi: Formula, scope: dict[str, str]) -> tuple[Subobject, Context]:
        ctx = self.canonical(phi, scope)
        key = (phi, ctx)
        if key not in self._memo:
            self._memo[key] = self._eval(phi, ctx, scope)
        return self._memo[key], ctx

    def at(self, phi: Formula, scope: dict[str, str], ctx: Context) -> Subobject:
        S, small = self.evaluate(phi, scope)
        return self.pull(S, small, ctx)

    def _eval(self, phi: Formula, ctx: Context, scope: dict[str, str]) -> Subobject:
        cat = self.cat
        X, projs = self.context_object(ctx)
        names = [v for v, _ in ctx]
        if isinstance(phi, Top):
            return cat.sub_top(X)
        if isinstance(phi, Bottom):
            return cat.sub_bottom(X)
        if isinstance(phi, Eq):
            if phi.left == phi.right:
                return cat.sub_top(X)
            A = self.env.sorts[scope[phi.left]]
            diag = cat.sub_of_mono(cat.diagonal(A))
            t = cat.tuple_arrow([projs[names.index(phi.left)], projs[names.index(phi.right)]])
            return cat.sub_pullback(t, diag)
        if isinstance(phi, (Mem, Rel)):
            name, args = (self.env.membership, (phi.elem, phi.coll)) if isinstance(phi, Mem) \
                else (phi.name, phi.args)
            if name not in self.env.relations:
                raise MalformedInput(f"relation {name!r} is not interpreted")
            sorts, R = self.env.relations[name]
            if len(sorts) != len(args):
                raise MalformedInput(f"{name} takes {len(sorts)} arguments")
            for a, s in zip(args, sorts):
                if scope[a] != s:
                    raise MalformedInput(f"{a} has sort {scope[a]}, {name} expects {s}")
            if not args:
                return cat.sub_pullback(cat.terminal_arrow(X), R)
            legs = [projs[names.index(a)] for a in args]
            t = legs[0] if len(legs) == 1 else cat.tuple_arrow(legs)
            return cat.sub_pullback(t, R)
        if isinstance(phi, Not):
            return cat.sub_implies(self.at(phi.body, scope, ctx), cat.sub_bottom(X))
        if isinstance(phi, (And, Or, Implies, Iff)):
            L = self.at(phi.left, scope, ctx)
            R = self.at(phi.right, scope, ctx)
            if isinstance(phi, And):
                return cat.sub_meet(L, R)
            if isinstance(phi, Or):
                return cat.sub_join(L, R)
            if isinstance(phi, Implies):
                return cat.sub_implies(L, R)
            return cat.sub_meet(cat.sub_implies(L, R), cat.sub_implies(R, L))
        if isinstance(phi, Bi):
            return self.at(phi.expand(), scope, ctx)
        if isinstance(phi, (BForall, BExists)):
            if phi.var == phi.bound:
                new = fresh(phi.var, all_vars(phi))
                return self.at(type(phi)(new, phi.bound, substitute(phi.body, {phi.var: new})), scope, ctx)
            guard = Mem(phi.var, phi.bound)
            body = Implies(guard, phi.body) if isinstance(phi, BForall) else And(guard, phi.body)
            q = Forall if isinstance(phi, BForall) else Exists
            inner = {**scope, phi.var: self.quant_sort(phi)}
            return self._quantify(q, phi.var, body, ctx, inner)
        if isinstance(phi, (Forall, Exists)):
            inner = {**scope, phi.var: self.quant_sort(phi)}
            return self._quantify(type(phi), phi.var, phi.body, ctx, inner)
        raise TypeError(f"not a formula: {phi!r}")

    def _quantify(self, q, var, body, ctx: Context, scope) -> Subobject:
        ext = tuple(sorted(ctx + ((var, scope[var]),)))
        B = self.at(body, scope, ext)
        proj = self.restriction(ext, ctx)
        if q is Exists:
            return self.cat.sub_image(proj, B)
        return self.cat.sub_forall(proj, B)


def kripke_joyal_eval(phi: Formula, env: Environment,
                      context: Sequence[tuple[str, str]] | None = None,
                      evaluator: Evaluator | None = None) -> Subobject:
    """Interpret ``phi`` as a subobject of the product of the context sorts.

    ``context`` lists (variable, sort) pairs in the desired order and must
    cover the free variables; by default it is the sorted free variables with
    sorts from ``env.variables``.
    """
    ev = evaluator or Evaluator(env)
    if context is None:
        missing = [v for v in free_vars(phi) if v not in env.variables]
        if missing:
            raise MalformedInput(f"free variables without sorts: {sorted(missing)}")
        context = tuple(sorted((v, env.variables[v]) for v in free_vars(phi)))
    context = tuple((v, s) for v, s in context)
    names = [v for v, _ in context]
    if len(set(names)) != len(names):
        raise MalformedInput("context repeats a variable")
    scope = dict(context)
    missing = free_vars(phi) - set(names)
    if missing:
        raise MalformedInput(f"context misses free variables {sorted(missing)}")
    S, small = ev.evaluate(phi, scope)
    if small == context:
        return S
    # reorder: restriction from the user context onto the canonical one
    return ev.pull(S, small, context)


evaluate = kripke_joyal_eval


def holds(phi: Formula, env: Environment) -> bool:
    """A closed formula holds when it denotes the top subobject of 1."""
    S = kripke_joyal_eval(phi, env, ())
    cat = env.category
    return S == cat.sub_top(cat.terminal())
