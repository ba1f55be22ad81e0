"""Definable atoms: marginal identity, probabilistic independence, and the
reduction of ``<=`` and ``ci`` to conditional probability inequalities."""

from __future__ import annotations

from ..errors import ArityMismatch
from ..syntax.ast import (
    TRUE_DELTA,
    And,
    CondIndep,
    CondProbLeq,
    Eq,
    Forall1,
    Leq,
    Var,
    tuple_eq,
)
from ..syntax.ops import free_vars, fresh_names, map_children


def _names(vs):
    return tuple(v.name if isinstance(v, Var) else v for v in vs)


def _forall(names, body):
    for z in reversed(names):
        body = Forall1(z, body)
    return body


def marginal_identity(v0, v1):
    """``v0`` and ``v1`` have the same marginal distribution (one-sided form)."""
    v0, v1 = _names(v0), _names(v1)
    if len(v0) != len(v1):
        raise ArityMismatch(f"tuples of lengths {len(v0)} and {len(v1)}")
    zs = fresh_names("z", len(v0), set(v0) | set(v1))
    return _forall(zs, Leq(tuple_eq(v0, zs), tuple_eq(v1, zs)))


def marginal_identity_two_sided(v0, v1):
    v0, v1 = _names(v0), _names(v1)
    if len(v0) != len(v1):
        raise ArityMismatch(f"tuples of lengths {len(v0)} and {len(v1)}")
    zs = fresh_names("z", len(v0), set(v0) | set(v1))
    a, b = tuple_eq(v0, zs), tuple_eq(v1, zs)
    return _forall(zs, And(Leq(a, b), Leq(b, a)))


def prob_indep(v0, v1, v2):
    """``v1`` and ``v2`` independent given ``v0``."""
    v0, v1, v2 = _names(v0), _names(v1), _names(v2)
    used = set(v0) | set(v1) | set(v2)
    blocks = []
    for base, vs in (("a", v0), ("b", v1), ("c", v2)):
        names = fresh_names(base, len(vs), used)
        used |= set(names)
        blocks.append(names)
    a, b, c = blocks
    atom = CondIndep(tuple_eq(v0, a), tuple_eq(v1, b), tuple_eq(v2, c))
    return _forall(a + b + c, atom)


def _tautology(atom):
    fv = sorted(free_vars(atom))
    return Eq(Var(fv[0]), Var(fv[0])) if fv else TRUE_DELTA


def cpi_to_ci_and_leq(phi):
    """Rewrite every ``<=`` and ``ci`` atom as conditional probability inequalities.

    ``(d0) <= (d1)`` becomes ``cpi(d0 | T, d1 | T)`` for a tautology T, and
    ``ci(d0; d1; d2)`` the pair of inequalities whose conjunction is the
    product identity.
    """

    def go(node):
        if isinstance(node, Leq):
            t = _tautology(node)
            return CondProbLeq(node.left, t, node.right, t)
        if isinstance(node, CondIndep):
            d0, d1, d2 = node.cond, node.left, node.right
            both = And(d0, d2)
            return And(CondProbLeq(d1, d0, d1, both), CondProbLeq(d1, both, d1, d0))
        return map_children(node, go)

    return go(phi)
