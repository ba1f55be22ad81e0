"""From team formulas to metafinite sentences about the team's weight function."""

from __future__ import annotations

from ..errors import DialectError
from ..syntax.ast import (
    TRUE_DELTA,
    And,
    CondIndep,
    CondProbLeq,
    DotNeg,
    Eq,
    Exists,
    Exists1,
    FnApp,
    Forall,
    Forall1,
    Leq,
    Not,
    NumLeq,
    Or,
    Sum,
    Times,
    Var,
    WeakOr,
    is_delta,
)
from ..syntax.ops import all_vars, free_vars, fresh_names, rename_bound, substitute


def team_variables(phi) -> tuple:
    """Argument order of the weight function: the free variables, sorted."""
    return tuple(sorted(free_vars(phi)))


def num_eq(i, j):
    """``i = j`` as the conjunction of two comparisons."""
    return And(NumLeq(i, j), NumLeq(j, i))


def is_zero(f, us):
    """``f(u) = 0`` written with two degenerate sums."""
    app = FnApp(f, tuple(Var(u) for u in us))
    top = Eq(Var(us[0]), Var(us[0])) if us else TRUE_DELTA
    return num_eq(Sum((), app, top), Sum((), app, Not(top)))


def fopt_to_metafinite(phi, f="f"):
    phi = rename_bound(phi)
    vs = team_variables(phi)
    us = fresh_names("u", len(vs), all_vars(phi))
    ren = {v: Var(u) for v, u in zip(vs, us)}
    app = FnApp(f, tuple(Var(u) for u in us))

    def total(delta):
        return Sum(us, app, substitute(delta, ren))

    def forall_u(body):
        for u in reversed(us):
            body = Forall(u, body)
        return body

    def go(p):
        if is_delta(p):
            return forall_u(Or(is_zero(f, us), substitute(p, ren)))
        if isinstance(p, Leq):
            return NumLeq(total(p.left), total(p.right))
        if isinstance(p, CondIndep):
            d0, d1, d2 = p.cond, p.left, p.right
            return num_eq(
                Times(total(And(d0, d1)), total(And(d0, d2))),
                Times(total(d0), total(And(And(d0, d1), d2))),
            )
        if isinstance(p, CondProbLeq):
            return NumLeq(
                Times(total(And(p.event0, p.given0)), total(p.given1)),
                Times(total(And(p.event1, p.given1)), total(p.given0)),
            )
        if isinstance(p, DotNeg):
            return Or(Not(go(p.body)), forall_u(is_zero(f, us)))
        if isinstance(p, And):
            return And(go(p.left), go(p.right))
        if isinstance(p, WeakOr):
            return Or(go(p.left), go(p.right))
        if isinstance(p, Exists1):
            return Exists(p.var, go(p.body))
        if isinstance(p, Forall1):
            return Forall(p.var, go(p.body))
        raise DialectError(f"{type(p).__name__} has no metafinite translation")

    return go(phi)
