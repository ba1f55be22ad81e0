"""Abstract syntax shared by all formula dialects.

One family of immutable nodes serves the team logics, the metafinite logic
and the fixed-point term language; each dialect is a subset of the node
types.  A quantifier-free kernel formula (``Rel``, ``Eq``, ``Not``, ``And``)
is itself a team-logic formula, so there is no separate wrapper node.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


# first-order terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lit:
    """A domain element used as a constant symbol (printed ``#k``)."""

    value: int


@dataclass(frozen=True)
class Const:
    """A named constant of the structure."""

    name: str


Term = Union[Var, Lit, Const]


# quantifier-free kernel (also used for metafinite guards)


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    """Classical disjunction: metafinite formulas and guards only."""

    left: object
    right: object


# probabilistic team atoms and connectives


@dataclass(frozen=True)
class Leq:
    """``(d0) <= (d1)``: weight of the d0-event is at most that of d1."""

    left: object
    right: object


@dataclass(frozen=True)
class CondIndep:
    """``ci(d0; d1; d2)``: d1 and d2 independent given d0."""

    cond: object
    left: object
    right: object


@dataclass(frozen=True)
class CondProbLeq:
    """``cpi(d0 | d1, d2 | d3)``: P(d0 | d1) <= P(d2 | d3), cross-multiplied."""

    event0: object
    given0: object
    event1: object
    given1: object


@dataclass(frozen=True)
class Incl:
    left: tuple
    right: tuple


@dataclass(frozen=True)
class DotNeg:
    body: object


@dataclass(frozen=True)
class WeakOr:
    left: object
    right: object


@dataclass(frozen=True)
class Exists1:
    var: str
    body: object


@dataclass(frozen=True)
class Forall1:
    var: str
    body: object


# metafinite formulas and numerical terms


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True)
class NumLeq:
    left: object
    right: object


@dataclass(frozen=True)
class FnApp:
    name: str
    args: tuple


@dataclass(frozen=True)
class Times:
    left: object
    right: object


@dataclass(frozen=True)
class Sum:
    vars: tuple
    body: object
    guard: object


# fixed-point terms (FnApp and Times are shared)


@dataclass(frozen=True)
class Num:
    """Numeric constant; only 0 and 1 are legal in the term language."""

    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError("numeric constants are restricted to 0 and 1")


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Sign:
    body: object


@dataclass(frozen=True)
class Max:
    vars: tuple
    body: object


@dataclass(frozen=True)
class Fp:
    """``fp[Z(z1..zk) <- body](y1..yk)``."""

    name: str
    zvars: tuple
    body: object
    args: tuple


# real-arithmetic sentences


@dataclass(frozen=True)
class RVar:
    name: str


@dataclass(frozen=True)
class RNum:
    value: Fraction


@dataclass(frozen=True)
class RAdd:
    """n-ary sum; the empty sum is 0."""

    terms: tuple


@dataclass(frozen=True)
class RMul:
    left: object
    right: object


@dataclass(frozen=True)
class RLeq:
    left: object
    right: object


@dataclass(frozen=True)
class REq:
    left: object
    right: object


@dataclass(frozen=True)
class RNot:
    body: object


@dataclass(frozen=True)
class RAnd:
    """n-ary conjunction; the empty conjunction is true."""

    items: tuple


@dataclass(frozen=True)
class ROr:
    """n-ary disjunction; the empty disjunction is false."""

    items: tuple


@dataclass(frozen=True)
class RExists:
    vars: tuple
    body: object


KERNEL_NODES = (Rel, Eq, Not, And)
QUANTIFIERS = (Exists1, Forall1, Exists, Forall)


def is_delta(node) -> bool:
    """True for quantifier-free kernel formulas built from atoms with ``!`` and ``&``."""
    if isinstance(node, (Rel, Eq)):
        return True
    if isinstance(node, Not):
        return is_delta(node.body)
    if isinstance(node, And):
        return is_delta(node.left) and is_delta(node.right)
    return False


def is_guard(node) -> bool:
    """Guards additionally allow classical ``\\/``."""
    if isinstance(node, (Rel, Eq)):
        return True
    if isinstance(node, Not):
        return is_guard(node.body)
    if isinstance(node, (And, Or)):
        return is_guard(node.left) and is_guard(node.right)
    return False


def conj(items, empty=None):
    """Left-nested conjunction of ``items``; ``empty`` is returned for no items."""
    items = list(items)
    if not items:
        if empty is None:
            raise ValueError("empty conjunction needs an explicit neutral formula")
        return empty
    out = items[0]
    for it in items[1:]:
        out = And(out, it)
    return out


TRUE_DELTA = Eq(Lit(0), Lit(0))


def tuple_eq(left, right):
    """``v1 = x1 & ... & vk = xk``; the empty tuple gives the tautology ``#0=#0``."""
    if len(left) != len(right):
        from ..errors import ArityMismatch

        raise ArityMismatch(f"tuples of lengths {len(left)} and {len(right)}")
    return conj((Eq(_term(a), _term(b)) for a, b in zip(left, right)), TRUE_DELTA)


def _term(t):
    return Var(t) if isinstance(t, str) else t
