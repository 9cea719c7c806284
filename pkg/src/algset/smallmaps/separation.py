"""Bounded separation: comprehension over bounded formulas yields bounded subobjects."""

from __future__ import annotations

from algset.errors import PreconditionError
from algset.logic.semantics import Environment, kripke_joyal_eval
from algset.logic.syntax import (
    Bi,
    BExists,
    BForall,
    Eq,
    Exists,
    Forall,
    Formula,
    Mem,
    Rel,
    free_vars,
    subformulas,
)
from algset.smallmaps.classes import MapClass
from algset.smallmaps.power import is_small_relation


def separation_violations(cls: MapClass, phi: Formula, env: Environment) -> list[str]:
    """Syntactic reasons why ``phi`` is not bounded relative to ``cls``.

    Atoms must be bounded subobjects, unbounded quantifiers must range over
    small sorts (so the projection is small), and bounded quantifiers need
    the membership relation to be small over its second argument.
    """
    cat = cls.category
    out = []
    seen = set()
    for s in subformulas(phi):
        if isinstance(s, (Forall, Exists)):
            sort = s.sort or env.default_sort
            if sort not in seen and not cls.is_small_object(env.sorts[sort]):
                out.append(f"quantifier over {s.var} runs along the non-small sort {sort}")
            seen.add(sort)
        elif isinstance(s, Eq) and s.left != s.right:
            sort = env.variables.get(s.left, env.default_sort)
            if sort is not None and not cls.contains(cat.diagonal(env.sorts[sort])):
                out.append(f"equality on {sort} is not bounded")
        elif isinstance(s, (Mem, Rel, BForall, BExists, Bi)):
            name = s.name if isinstance(s, Rel) else env.membership
            if name is None or name not in env.relations:
                out.append(f"relation {name!r} is not interpreted")
                continue
            sorts, R = env.relations[name]
            if not cls.is_bounded(R):
                out.append(f"atom {name} is not a bounded subobject")
            if not isinstance(s, Rel):
                E, C = (env.sorts[x] for x in sorts)
                if not is_small_relation(cls, E, C, R):
                    out.append("membership is not small over its second argument")
    return list(dict.fromkeys(out))


def bounded_separation_check(cls: MapClass, formula: Formula, X, env: Environment | None = None,
                             var: str | None = None) -> bool:
    """Is {x in X | formula(x)} a bounded subobject of X?

    ``env`` interprets the relations of the formula; the free variable
    ``var`` (default: the unique free variable) ranges over X.
    """
    cat = cls.category
    if env is None:
        env = Environment(cat, {"X": X})
    fv = free_vars(formula)
    if var is None:
        if len(fv) > 1:
            raise PreconditionError(f"formula has several free variables {sorted(fv)}")
        var = next(iter(fv), "x")
    elif not fv <= {var}:
        raise PreconditionError(f"formula has free variables besides {var}")
    sort = next((k for k, v in env.sorts.items() if v == X), None)
    if sort is None:
        raise PreconditionError("X is not a sort of the environment")
    env = Environment(env.category, env.sorts, env.relations, env.membership,
                      {**env.variables, var: sort}, env.default_sort)
    problems = separation_violations(cls, formula, env)
    if problems:
        raise PreconditionError("; ".join(problems))
    S = kripke_joyal_eval(formula, env, ((var, sort),))
    return cls.is_bounded(S)
