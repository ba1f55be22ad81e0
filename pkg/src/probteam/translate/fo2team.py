"""From SUM* sentences back to team formulas with ``<=`` atoms."""

from __future__ import annotations

from typing import NamedTuple

from ..errors import DialectError
from ..metafinite import in_sum_star
from ..syntax.ast import (
    And,
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
    Rel,
    Sum,
    Var,
    WeakOr,
    conj,
)
from ..syntax.ops import all_vars, free_vars, fresh_name, fresh_names, substitute, walk


def eliminate_or(g):
    """Rewrite ``a \\/ b`` as ``!(!a & !b)`` throughout a guard."""
    if isinstance(g, Or):
        return Not(And(Not(eliminate_or(g.left)), Not(eliminate_or(g.right))))
    if isinstance(g, Not):
        return Not(eliminate_or(g.body))
    if isinstance(g, And):
        return And(eliminate_or(g.left), eliminate_or(g.right))
    return g


def normalize_sum(t, base="u", avoid=()):
    """Equivalent sum ``SUM_u(f(u), g)`` over distinct fresh variables, one per
    argument position, with a disjunction-free guard.

    Each bound variable is renamed to the position of its first occurrence;
    every other argument (free variable, literal, repeated bound variable)
    is pinned by an equation in the guard.
    """
    if not isinstance(t, Sum) or not isinstance(t.body, FnApp):
        raise DialectError("normalize_sum expects SUM_x(f(y), g)")
    args = t.body.args
    used = set(all_vars(t)) | set(avoid)
    us = fresh_names(base, len(args), used)
    bound = set(t.vars)
    first = {}
    pins = []
    for u, a in zip(us, args):
        if isinstance(a, Var) and a.name in bound and a.name not in first:
            first[a.name] = u
        else:
            pins.append((u, a))
    missing = bound - set(first)
    if missing:
        raise DialectError(f"summed variables {sorted(missing)} do not occur in {t.body.name}")
    ren = {x: Var(u) for x, u in first.items()}
    guard = eliminate_or(substitute(t.guard, ren))
    eqs = [Eq(Var(u), substitute(a, ren)) for u, a in pins]
    return Sum(tuple(us), FnApp(t.body.name, tuple(Var(u) for u in us)), conj([guard] + eqs))


def _rename_apart(phi, avoid):
    """Give every first-order quantifier its own name, distinct from ``avoid``."""
    used = set(all_vars(phi)) | set(avoid)
    seen = set(avoid)

    def go(p, ren):
        if isinstance(p, (Exists, Forall)):
            x = p.var
            if x in seen:
                nx = fresh_name(x, used)
                used.add(nx)
            else:
                nx = x
            seen.add(nx)
            inner = dict(ren)
            inner[x] = Var(nx)
            return type(p)(nx, go(p.body, inner))
        if isinstance(p, Not):
            return Not(go(p.body, ren))
        if isinstance(p, (And, Or)):
            return type(p)(go(p.left, ren), go(p.right, ren))
        return substitute(p, ren)

    return go(phi, {})


def prenex(phi):
    """Quantifier prefix ``[(Exists|Forall, var), ...]`` and quantifier-free matrix.

    The binders must already be pairwise distinct and distinct from the free
    variables, so pulling them outwards cannot capture anything.
    """
    if isinstance(phi, (Exists, Forall)):
        prefix, matrix = prenex(phi.body)
        return [(type(phi), phi.var)] + prefix, matrix
    if isinstance(phi, Not):
        prefix, matrix = prenex(phi.body)
        dual = {Exists: Forall, Forall: Exists}
        return [(dual[q], v) for q, v in prefix], Not(matrix)
    if isinstance(phi, (And, Or)):
        lp, lm = prenex(phi.left)
        rp, rm = prenex(phi.right)
        return lp + rp, type(phi)(lm, rm)
    return [], phi


class Fo2TeamResult(NamedTuple):
    formula: object
    team_vars: tuple


def metafinite_to_fopt(psi, arity=None, team_vars=None) -> Fo2TeamResult:
    if not in_sum_star(psi):
        raise DialectError("sentence is not in the SUM* fragment")
    if free_vars(psi):
        raise DialectError(f"free variables {sorted(free_vars(psi))}; a sentence is required")
    arities = {len(n.args) for n in walk(psi) if isinstance(n, FnApp)}
    if arities:
        k = arities.pop()
        if arity is not None and arity != k:
            raise DialectError(f"weight function has arity {k}, not {arity}")
    else:
        k = arity if arity is not None else (len(team_vars) if team_vars is not None else 0)
    if team_vars is None:
        team_vars = tuple(f"v{i}" for i in range(1, k + 1))
    team_vars = tuple(team_vars)
    if len(team_vars) != k or len(set(team_vars)) != k:
        raise DialectError(f"need {k} distinct team variables")

    phi = _rename_apart(psi, team_vars)
    prefix, matrix = prenex(phi)
    avoid = set(all_vars(phi)) | set(team_vars)

    def atom(t):
        n = normalize_sum(t, avoid=avoid)
        return substitute(n.guard, {u: Var(v) for u, v in zip(n.vars, team_vars)})

    def go(p):
        if isinstance(p, (Rel, Eq)):
            return p
        if isinstance(p, NumLeq):
            return Leq(atom(p.left), atom(p.right))
        if isinstance(p, Not):
            return DotNeg(go(p.body))
        if isinstance(p, And):
            return And(go(p.left), go(p.right))
        if isinstance(p, Or):
            return WeakOr(go(p.left), go(p.right))
        raise DialectError(f"{type(p).__name__} in a prenex matrix")

    out = go(matrix)
    for q, v in reversed(prefix):
        out = (Exists1 if q is Exists else Forall1)(v, out)
    return Fo2TeamResult(out, team_vars)
