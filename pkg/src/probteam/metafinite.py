"""Structures with one nonnegative weight function, and the logic with SUM and ×.

A first-order term always denotes an element of the finite sort; only ``f``
applications, products and aggregate sums are numeric.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import VarsNotInDomain
from .evaluate import eval_term
from .structures import Assignment, ProbTeam, Structure, as_weight, restrict
from .syntax.ast import (
    And,
    Const,
    Eq,
    Exists,
    FnApp,
    Forall,
    Lit,
    Not,
    NumLeq,
    Or,
    Rel,
    Sum,
    Times,
    Var,
    is_guard,
)
from .syntax.ops import free_vars


@dataclass(frozen=True)
class RStructure:
    base: Structure
    fname: str = "f"
    arity: int = 1
    weights: Mapping = field(default_factory=dict)

    def __post_init__(self):
        n = self.base.domain_size
        table = {}
        for key, w in dict(self.weights).items():
            key = tuple(key)
            if len(key) != self.arity:
                raise ValueError(f"{self.fname}{key} does not have arity {self.arity}")
            if any(not 0 <= a < n for a in key):
                raise ValueError(f"{self.fname}{key} leaves the domain")
            w = as_weight(w)
            if w:
                table[key] = w
        object.__setattr__(self, "weights", table)

    @property
    def domain_size(self) -> int:
        return self.base.domain_size

    def value(self, args) -> Fraction:
        return self.weights.get(tuple(args), Fraction(0))


def bridge(structure: Structure, team: ProbTeam, variables=None, fname="f") -> RStructure:
    """The weight function f with f(s(v1..vk)) equal to the team's weight of s.

    ``variables`` fixes the argument order; by default the team variables
    in sorted order.  The team is first restricted to those variables.
    """
    order = tuple(sorted(team.variables)) if variables is None else tuple(variables)
    marg = restrict(team, order)
    return RStructure(
        structure, fname, len(order), {s.values_for(order): w for s, w in marg.items()}
    )


def _assignment(s) -> Assignment:
    return s if isinstance(s, Assignment) else Assignment(s or {})


def eval_guard(A: Structure, s, g) -> bool:
    """Quantifier-free formulas with classical ``\\/``, over the finite sort."""
    if isinstance(g, Eq):
        return eval_term(A, s, g.left) == eval_term(A, s, g.right)
    if isinstance(g, Rel):
        return A.holds(g.name, tuple(eval_term(A, s, a) for a in g.args))
    if isinstance(g, Not):
        return not eval_guard(A, s, g.body)
    if isinstance(g, And):
        return eval_guard(A, s, g.left) and eval_guard(A, s, g.right)
    if isinstance(g, Or):
        return eval_guard(A, s, g.left) or eval_guard(A, s, g.right)
    raise TypeError(f"not a guard: {type(g).__name__}")


def eval_numterm(rs: RStructure, s, t) -> Fraction:
    s = _assignment(s)
    _check(t, s)
    return _num(rs, s, t)


def _num(rs, s, t) -> Fraction:
    if isinstance(t, FnApp):
        if t.name != rs.fname:
            raise KeyError(f"unknown weight function {t.name}")
        if len(t.args) != rs.arity:
            raise ValueError(f"{t.name} has arity {rs.arity}")
        return rs.value(eval_term(rs.base, s, a) for a in t.args)
    if isinstance(t, Times):
        left = _num(rs, s, t.left)
        # short-circuit keeps nested sums cheap when a factor vanishes
        return left * _num(rs, s, t.right) if left else left
    if isinstance(t, Sum):
        total = Fraction(0)
        for values in product(rs.base.domain, repeat=len(t.vars)):
            s2 = s
            for v, a in zip(t.vars, values):
                s2 = s2.extend(v, a)
            if eval_guard(rs.base, s2, t.guard):
                total += _num(rs, s2, t.body)
        return total
    raise TypeError(f"not a numeric term: {type(t).__name__}")


def eval_mf(rs: RStructure, s, phi) -> bool:
    s = _assignment(s)
    _check(phi, s)
    return _mf(rs, s, phi)


def _mf(rs, s, phi) -> bool:
    if isinstance(phi, NumLeq):
        return _num(rs, s, phi.left) <= _num(rs, s, phi.right)
    if isinstance(phi, (Rel, Eq)):
        return eval_guard(rs.base, s, phi)
    if isinstance(phi, Not):
        return not _mf(rs, s, phi.body)
    if isinstance(phi, And):
        return _mf(rs, s, phi.left) and _mf(rs, s, phi.right)
    if isinstance(phi, Or):
        return _mf(rs, s, phi.left) or _mf(rs, s, phi.right)
    if isinstance(phi, Exists):
        return any(_mf(rs, s.extend(phi.var, a), phi.body) for a in rs.base.domain)
    if isinstance(phi, Forall):
        return all(_mf(rs, s.extend(phi.var, a), phi.body) for a in rs.base.domain)
    raise TypeError(f"not a metafinite formula: {type(phi).__name__}")


def _check(node, s):
    missing = free_vars(node) - set(s)
    if missing:
        raise VarsNotInDomain(missing, sorted(s))


def sum_star_atom(t, fname=None) -> bool:
    """``SUM_x(f(y), g)`` with the bound x distinct and all among the arguments y."""
    if not isinstance(t, Sum) or not isinstance(t.body, FnApp) or not is_guard(t.guard):
        return False
    if fname is not None and t.body.name != fname:
        return False
    if len(set(t.vars)) != len(t.vars):
        return False
    if not all(isinstance(a, (Var, Lit, Const)) for a in t.body.args):
        return False
    arg_names = {a.name for a in t.body.args if isinstance(a, Var)}
    return set(t.vars) <= arg_names


def in_sum_star(phi) -> bool:
    """Every numeric atom compares two aggregate sums of the same single function."""
    fns = set()

    def ok(p) -> bool:
        if isinstance(p, NumLeq):
            if not (sum_star_atom(p.left) and sum_star_atom(p.right)):
                return False
            fns.add((p.left.body.name, len(p.left.body.args)))
            fns.add((p.right.body.name, len(p.right.body.args)))
            return True
        if isinstance(p, (Rel, Eq)):
            return True
        if isinstance(p, Not):
            return ok(p.body)
        if isinstance(p, (And, Or)):
            return ok(p.left) and ok(p.right)
        if isinstance(p, (Exists, Forall)):
            return ok(p.body)
        return False

    return ok(phi) and len(fns) <= 1


def scaling_witness(arity=1, fname="f"):
    """``i0 * i0 <= i1`` with ``i0 = SUM_y(f(y), y1=y1)`` and ``i1 = SUM_x(i0, x=x)``.

    On a nonempty team it holds iff the total weight is at most the domain
    size, so it separates a team from its normalisation.
    """
    if arity < 1:
        raise ValueError("the witness needs a weight function of arity at least 1")
    ys = tuple(f"y{i}" for i in range(1, arity + 1))
    i0 = Sum(ys, FnApp(fname, tuple(Var(y) for y in ys)), Eq(Var(ys[0]), Var(ys[0])))
    i1 = Sum(("x",), i0, Eq(Var("x"), Var("x")))
    return NumLeq(Times(i0, i0), i1)
