"""Model checking for the team logics.

``eval_fopt`` covers the probabilistic logics over weighted teams and
``eval_fot`` the inclusion logic over plain teams.  Quantifiers ``E1``/``A1``
are evaluated by extending the team with every domain element in turn, so
cost is exponential in quantifier depth.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import DialectError, VarsNotInDomain
from .structures import PlainTeam, ProbTeam, all_assignments, extend
from .syntax.ast import (
    And,
    CondIndep,
    CondProbLeq,
    Const,
    DotNeg,
    Eq,
    Exists1,
    Forall1,
    Incl,
    Leq,
    Lit,
    Not,
    Rel,
    Var,
    WeakOr,
    is_delta,
)
from .syntax.ops import Dialect, classify, free_vars


def eval_term(structure, s, t) -> int:
    if isinstance(t, Var):
        try:
            return s[t.name]
        except KeyError:
            raise VarsNotInDomain([t.name], sorted(s)) from None
    if isinstance(t, Lit):
        if not 0 <= t.value < structure.domain_size:
            raise ValueError(f"literal #{t.value} is outside the domain")
        return t.value
    if isinstance(t, Const):
        return structure.constants[t.name]
    raise TypeError(f"not a first-order term: {t!r}")


def eval_delta(structure, s, delta) -> bool:
    """Classical satisfaction of a quantifier-free formula under one assignment."""
    if isinstance(delta, Eq):
        return eval_term(structure, s, delta.left) == eval_term(structure, s, delta.right)
    if isinstance(delta, Rel):
        args = tuple(eval_term(structure, s, a) for a in delta.args)
        if structure.arity(delta.name) != len(args):
            raise ValueError(f"{delta.name} has arity {structure.arity(delta.name)}")
        return structure.holds(delta.name, args)
    if isinstance(delta, Not):
        return not eval_delta(structure, s, delta.body)
    if isinstance(delta, And):
        return eval_delta(structure, s, delta.left) and eval_delta(structure, s, delta.right)
    raise TypeError(f"not a quantifier-free formula: {type(delta).__name__}")


def _check_vars(phi, variables):
    missing = free_vars(phi) - set(variables)
    if missing:
        raise VarsNotInDomain(missing, sorted(variables))


def event_weight(structure, team: ProbTeam, delta) -> Fraction:
    """Total weight of the assignments that satisfy ``delta``."""
    _check_vars(delta, team.variables)
    return _weight(structure, team, delta)


def _weight(structure, team, delta) -> Fraction:
    return sum(
        (w for s, w in team.items() if eval_delta(structure, s, delta)), Fraction(0)
    )


class _Evaluator:
    def __init__(self, structure):
        self.structure = structure
        # (id(team), delta) -> (team, weight); the team is held so ids stay unique
        self._weights = {}

    def weight(self, team, delta):
        key = (id(team), delta)
        hit = self._weights.get(key)
        if hit is None:
            hit = (team, _weight(self.structure, team, delta))
            self._weights[key] = hit
        return hit[1]

    def sat(self, team: ProbTeam, phi) -> bool:
        if team.is_empty():
            return True
        A = self.structure
        if is_delta(phi):
            return all(eval_delta(A, s, phi) for s in team.support())
        if isinstance(phi, Leq):
            return self.weight(team, phi.left) <= self.weight(team, phi.right)
        if isinstance(phi, CondIndep):
            d0, d1, d2 = phi.cond, phi.left, phi.right
            w = self.weight
            return w(team, And(d0, d1)) * w(team, And(d0, d2)) == w(team, d0) * w(
                team, And(And(d0, d1), d2)
            )
        if isinstance(phi, CondProbLeq):
            w = self.weight
            lhs = w(team, And(phi.event0, phi.given0)) * w(team, phi.given1)
            rhs = w(team, And(phi.event1, phi.given1)) * w(team, phi.given0)
            return lhs <= rhs
        if isinstance(phi, DotNeg):
            return not self.sat(team, phi.body)
        if isinstance(phi, And):
            return self.sat(team, phi.left) and self.sat(team, phi.right)
        if isinstance(phi, WeakOr):
            return self.sat(team, phi.left) or self.sat(team, phi.right)
        if isinstance(phi, Exists1):
            return any(self.sat(extend(team, a, phi.var), phi.body) for a in A.domain)
        if isinstance(phi, Forall1):
            return all(self.sat(extend(team, a, phi.var), phi.body) for a in A.domain)
        raise DialectError(f"{type(phi).__name__} has no probabilistic team semantics")


def eval_fopt(structure, team: ProbTeam, phi) -> bool:
    """Does ``team`` satisfy ``phi`` in ``structure``?  The empty team satisfies everything."""
    _check_vars(phi, team.variables)
    return _Evaluator(structure).sat(team, phi)


def eval_fot(structure, team: PlainTeam, phi) -> bool:
    """Satisfaction of an inclusion-logic formula by a plain team."""
    if classify(phi) not in (Dialect.FOT, Dialect.FOTdown):
        raise DialectError("eval_fot only handles FOT formulas")
    _check_vars(phi, team.variables)
    return _fot(structure, team, phi)


def _fot(A, X: PlainTeam, phi) -> bool:
    if not X:
        return True
    if is_delta(phi):
        return all(eval_delta(A, s, phi) for s in X.members)
    if isinstance(phi, Incl):
        left = {tuple(eval_term(A, s, v) for v in phi.left) for s in X.members}
        right = {tuple(eval_term(A, s, v) for v in phi.right) for s in X.members}
        return left <= right
    if isinstance(phi, DotNeg):
        return not _fot(A, X, phi.body)
    if isinstance(phi, And):
        return _fot(A, X, phi.left) and _fot(A, X, phi.right)
    if isinstance(phi, WeakOr):
        return _fot(A, X, phi.left) or _fot(A, X, phi.right)
    if isinstance(phi, Exists1):
        return any(_fot(A, X.extend(a, phi.var), phi.body) for a in A.domain)
    if isinstance(phi, Forall1):
        return all(_fot(A, X.extend(a, phi.var), phi.body) for a in A.domain)
    raise DialectError(f"{type(phi).__name__} is not an FOT construct")


def find_satisfying_team(structure, phi, grid):
    """First nonempty team over the free variables of ``phi`` with weights
    from ``grid`` that satisfies it, or None when the grid has no satisfier."""
    variables = sorted(free_vars(phi))
    rows = list(all_assignments(variables, structure.domain_size))
    grid = list(grid)
    for weights in product(grid, repeat=len(rows)):
        team = ProbTeam(variables, zip(rows, weights))
        if team.is_empty():
            continue
        if eval_fopt(structure, team, phi):
            return team
    return None


def weights_of(team: ProbTeam, domain_size: int) -> dict:
    """Weight of every assignment over the team's variables, zeros included."""
    return {s: team[s] for s in all_assignments(team.variables, domain_size)}


__all__ = [
    "eval_delta",
    "eval_fopt",
    "eval_fot",
    "eval_term",
    "event_weight",
    "find_satisfying_team",
    "weights_of",
]
