"""Compilation of metafinite formulas into fixed-point terms.

A formula becomes a term that evaluates to 1 where the formula holds and to
0 elsewhere.  Aggregate sums become prefix sums computed by a fixed point
that walks the summed tuples in rank order:

    SUM_x(i, g)  ~>  max_x fp[Z(y) <- [x=0]*i*[g] + max_u([x=u+1]*(Z(y[u/x]) + i*[g]))](y)

where ``y`` lists ``x`` followed by the other free variables.  Since every
summand is nonnegative, the largest prefix sum is the total.
"""

from __future__ import annotations

from ..errors import DialectError
from ..ffp import ONE, ZERO, RAlgebra, chi_eq, chi_le, rank_expr
from ..metafinite import RStructure, bridge
from ..structures import ProbTeam
from ..syntax.ast import (
    Add,
    And,
    Const,
    Eq,
    Exists,
    FnApp,
    Forall,
    Fp,
    Max,
    Not,
    NumLeq,
    Or,
    Rel,
    Sub,
    Sum,
    Times,
    Var,
)
from ..syntax.ops import all_vars, free_vars, fresh_names, substitute

EQ_FN = "eq"


def chi_name(relation: str) -> str:
    return f"chi_{relation}"


def mf_to_ffp(phi, ranking="E"):
    """Term of value 1 exactly where ``phi`` holds, else 0."""
    used = set(all_vars(phi)) | {"w"}
    counter = [0]

    def fresh_z():
        counter[0] += 1
        return f"Z{counter[0]}"

    def args_of(args):
        for a in args:
            if isinstance(a, Const):
                raise DialectError(f"named constant {a.name} has no counterpart in the algebra")
        return tuple(args)

    def num(t):
        if isinstance(t, FnApp):
            return FnApp(t.name, args_of(t.args))
        if isinstance(t, Times):
            return Times(num(t.left), num(t.right))
        if isinstance(t, Sum):
            body = Times(num(t.body), form(t.guard))
            xs = tuple(t.vars)
            if not xs:
                return body
            others = sorted((free_vars(t.body) | free_vars(t.guard)) - set(xs))
            ys = xs + tuple(others)
            us = fresh_names("u", len(xs), used | set(ys))
            used.update(us)
            z = fresh_z()
            shifted = substitute(FnApp(z, tuple(Var(y) for y in ys)), dict(zip(xs, us)))
            start = Times(chi_eq(rank_expr(xs, ranking), ZERO), body)
            step = Max(
                us,
                Times(chi_eq(rank_expr(xs, ranking), Add(rank_expr(us, ranking), ONE)), Add(shifted, body)),
            )
            fp = Fp(z, ys, Add(start, step), tuple(Var(y) for y in ys))
            return Max(xs, fp)
        raise DialectError(f"{type(t).__name__} is not a numeric term")

    def form(p):
        if isinstance(p, Rel):
            return FnApp(chi_name(p.name), args_of(p.args))
        if isinstance(p, Eq):
            return FnApp(EQ_FN, args_of((p.left, p.right)))
        if isinstance(p, NumLeq):
            return chi_le(num(p.left), num(p.right))
        if isinstance(p, Not):
            return Sub(ONE, form(p.body))
        if isinstance(p, And):
            return Times(form(p.left), form(p.right))
        if isinstance(p, Or):
            a, b = form(p.left), form(p.right)
            return Sub(Add(a, b), Times(a, b))
        if isinstance(p, Exists):
            return Max((p.var,), form(p.body))
        if isinstance(p, Forall):
            return Sub(ONE, Max((p.var,), Sub(ONE, form(p.body))))
        raise DialectError(f"{type(p).__name__} is not a metafinite formula")

    return form(phi)


def structure_to_algebra(structure, source=None, variables=None, fname="f", ranking="E") -> RAlgebra:
    """Algebra over the plain domain with characteristic functions, the weight
    function of a team or weighted structure, and the identity ranking."""
    if isinstance(source, ProbTeam):
        rs = bridge(structure, source, variables, fname)
    elif isinstance(source, RStructure):
        rs = source
    elif source is None:
        rs = None
    else:
        raise TypeError("source must be a ProbTeam or an RStructure")
    n = structure.domain_size
    fns = {}
    for name, (arity, tuples) in structure.relations.items():
        fns[chi_name(name)] = (arity, {t: 1 for t in tuples})
    fns[EQ_FN] = (2, {(a, a): 1 for a in range(n)})
    if rs is not None:
        if rs.fname in fns:
            raise ValueError(f"weight function name {rs.fname} clashes with {sorted(fns)}")
        fns[rs.fname] = (rs.arity, dict(rs.weights))
    fns[ranking] = (1, {(a,): a for a in range(n)})
    return RAlgebra(n, fns, ranking)
