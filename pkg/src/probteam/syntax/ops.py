"""Structural operations on formulas: free variables, substitution, renaming, dialects."""

from __future__ import annotations

import dataclasses
import enum
from collections.abc import Iterable, Mapping

from ..errors import ArityMismatch, DialectError
from .ast import (
    And,
    CondIndep,
    CondProbLeq,
    Const,
    DotNeg,
    Eq,
    Exists,
    Exists1,
    Forall,
    Forall1,
    Fp,
    Incl,
    Leq,
    Lit,
    Max,
    Not,
    Rel,
    RExists,
    RVar,
    Sum,
    Var,
    WeakOr,
    is_delta,
)

_SINGLE_BINDERS = (Exists1, Forall1, Exists, Forall)
_MULTI_BINDERS = (Sum, Max, RExists)


def _is_node(value) -> bool:
    return dataclasses.is_dataclass(value) and not isinstance(value, type)


def children(node):
    """Direct sub-nodes (formulas, terms) in field order."""
    for f in dataclasses.fields(node):
        value = getattr(node, f.name)
        if _is_node(value):
            yield value
        elif isinstance(value, tuple):
            for item in value:
                if _is_node(item):
                    yield item


def map_children(node, fn):
    """Copy ``node`` with ``fn`` applied to every direct sub-node."""
    changes = {}
    for f in dataclasses.fields(node):
        value = getattr(node, f.name)
        if _is_node(value):
            changes[f.name] = fn(value)
        elif isinstance(value, tuple) and any(_is_node(v) for v in value):
            changes[f.name] = tuple(fn(v) if _is_node(v) else v for v in value)
    return dataclasses.replace(node, **changes) if changes else node


def bound_here(node) -> tuple:
    """Variables bound by ``node`` itself (empty for non-binders)."""
    if isinstance(node, _SINGLE_BINDERS):
        return (node.var,)
    if isinstance(node, _MULTI_BINDERS):
        return tuple(node.vars)
    if isinstance(node, Fp):
        return tuple(node.zvars)
    return ()


def free_vars(node) -> frozenset:
    """Free first-order variables (real-arithmetic variables for ``R*`` nodes)."""
    if isinstance(node, (Var, RVar)):
        return frozenset([node.name])
    if isinstance(node, (Lit, Const)):
        return frozenset()
    if isinstance(node, Fp):
        inner = free_vars(node.body) - set(node.zvars)
        return inner.union(*(free_vars(a) for a in node.args))
    out = frozenset().union(*(free_vars(c) for c in children(node)))
    bound = bound_here(node)
    return out - set(bound) if bound else out


def all_vars(node) -> frozenset:
    """Every variable name that occurs anywhere, bound or free."""
    if isinstance(node, (Var, RVar)):
        return frozenset([node.name])
    out = set(bound_here(node))
    for c in children(node):
        out |= all_vars(c)
    return frozenset(out)


def fresh_name(base: str, used: Iterable[str]) -> str:
    used = set(used)
    if base not in used:
        return base
    i = 1
    while f"{base}{i}" in used:
        i += 1
    return f"{base}{i}"


def fresh_names(base: str, count: int, used: Iterable[str]) -> tuple:
    """``count`` distinct fresh names; a single name tries ``base`` itself first."""
    used = set(used)
    if count == 1:
        return (fresh_name(base, used),)
    out = []
    i = 1
    while len(out) < count:
        cand = f"{base}{i}"
        if cand not in used:
            out.append(cand)
            used.add(cand)
        i += 1
    return tuple(out)


def substitute(node, mapping: Mapping[str, object]):
    """Replace free occurrences of variables by terms, avoiding capture.

    Values may be terms or plain ints (taken as domain literals) or strings
    (taken as variable names).
    """
    norm = {}
    for k, v in mapping.items():
        if isinstance(v, bool):
            raise TypeError("booleans are not terms")
        if isinstance(v, int):
            v = Lit(v)
        elif isinstance(v, str):
            v = Var(v)
        norm[k] = v
    return _subst(node, norm)


def _subst(node, mapping):
    if not mapping:
        return node
    if isinstance(node, Var):
        return mapping.get(node.name, node)
    bound = bound_here(node)
    if not bound:
        return map_children(node, lambda c: _subst(c, mapping))
    inner = {k: v for k, v in mapping.items() if k not in bound}
    if isinstance(node, Fp):
        new_z, body = _subst_under(node, node.zvars, inner, node.body)
        args = tuple(_subst(a, mapping) for a in node.args)
        return Fp(node.name, new_z, body, args)
    new_vars, node2 = _avoid_capture(node, bound, inner)
    return _rebuild_binder(node2, new_vars, lambda c: _subst(c, inner))


def _subst_under(node, bound, inner, body):
    incoming = set().union(*(free_vars(v) for v in inner.values())) if inner else set()
    clash = [b for b in bound if b in incoming]
    if not clash:
        return tuple(bound), _subst(body, inner)
    used = set(all_vars(body)) | incoming | set(bound)
    ren = {}
    for b in clash:
        nb = fresh_name(b, used)
        used.add(nb)
        ren[b] = nb
    body = _subst(body, {b: Var(nb) for b, nb in ren.items()})
    return tuple(ren.get(b, b) for b in bound), _subst(body, inner)


def _avoid_capture(node, bound, inner):
    """Rename binders of ``node`` that would capture a variable of an incoming term."""
    incoming = set().union(*(free_vars(v) for v in inner.values())) if inner else set()
    clash = [b for b in bound if b in incoming]
    if not clash:
        return tuple(bound), node
    used = set(all_vars(node)) | incoming
    ren = {}
    for b in clash:
        nb = fresh_name(b, used)
        used.add(nb)
        ren[b] = Var(nb)
    renamed = map_children(node, lambda c: _subst(c, ren))
    return tuple(ren[b].name if b in ren else b for b in bound), renamed


def _rebuild_binder(node, new_vars, fn):
    rebuilt = map_children(node, fn)
    if isinstance(node, _SINGLE_BINDERS):
        return dataclasses.replace(rebuilt, var=new_vars[0])
    return dataclasses.replace(rebuilt, vars=tuple(new_vars))


def substitute_consts(formula, mapping: Mapping[str, int]):
    """``phi_(a/x)``: free occurrences of each variable become the literal element."""
    return substitute(formula, {k: Lit(int(v)) for k, v in mapping.items()})


def rename_var(formula, old: str, new: str):
    """``theta_(new/old)`` for a variable ``new`` that does not occur in ``formula``."""
    return substitute(formula, {old: Var(new)})


def rename_bound(formula, avoid: Iterable[str] = ()):
    """Alpha-rename binders that clash with a free variable, with ``avoid``, or
    with an enclosing binder, so every quantified variable is distinct from the
    free ones along each path."""
    free = set(free_vars(formula))
    used = set(all_vars(formula)) | set(avoid)
    return _rename(formula, free | set(avoid), used, {})


def _rename(node, blocked, used, ren):
    if isinstance(node, Var):
        return ren.get(node.name, node)
    bound = bound_here(node)
    if not bound:
        return map_children(node, lambda c: _rename(c, blocked, used, ren))
    new_names = []
    inner_ren = dict(ren)
    for b in bound:
        if b in blocked:
            nb = fresh_name(b, used)
            used.add(nb)
            inner_ren[b] = Var(nb)
        else:
            nb = b
            inner_ren.pop(b, None)
        new_names.append(nb)
    inner_blocked = blocked | set(new_names)
    if isinstance(node, Fp):
        body = _rename(node.body, inner_blocked, used, inner_ren)
        args = tuple(_rename(a, blocked, used, ren) for a in node.args)
        return Fp(node.name, tuple(new_names), body, args)
    return _rebuild_binder(
        node, new_names, lambda c: _rename(c, inner_blocked, used, inner_ren)
    )


def canonical(node):
    """Rename bound variables to positional names; equal results mean alpha-equivalent."""
    counter = [0]

    def walk(n, ren):
        if isinstance(n, Var):
            return ren.get(n.name, n)
        bound = bound_here(n)
        if not bound:
            return map_children(n, lambda c: walk(c, ren))
        inner = dict(ren)
        names = []
        for b in bound:
            nb = f"%{counter[0]}"
            counter[0] += 1
            inner[b] = Var(nb)
            names.append(nb)
        if isinstance(n, Fp):
            return Fp(n.name, tuple(names), walk(n.body, inner), tuple(walk(a, ren) for a in n.args))
        return _rebuild_binder(n, names, lambda c: walk(c, inner))

    return walk(node, {})


def alpha_equal(a, b) -> bool:
    return canonical(a) == canonical(b)


def walk(node):
    """Pre-order iteration over all nodes."""
    yield node
    for c in children(node):
        yield from walk(c)


class Dialect(str, enum.Enum):
    FOT = "FOT"
    FOTdown = "FOTdown"
    FOPT_leq = "FOPT_leq"
    FOPT_leq_ci = "FOPT_leq_ci"
    FOPT_cpi = "FOPT_cpi"

    @classmethod
    def parse(cls, text) -> Dialect:
        if isinstance(text, Dialect):
            return text
        for d in cls:
            if d.value.lower() == str(text).lower():
                return d
        raise DialectError(f"unknown dialect {text!r}; choose from {[d.value for d in cls]}")


# Ordering used by classify: the smallest dialect that contains a formula.
DIALECT_ORDER = (
    Dialect.FOTdown,
    Dialect.FOT,
    Dialect.FOPT_leq,
    Dialect.FOPT_leq_ci,
    Dialect.FOPT_cpi,
)

_BASE = {Rel, Eq, Not, And, WeakOr, Exists1, Forall1}
_ALLOWED = {
    Dialect.FOTdown: _BASE,
    Dialect.FOT: _BASE | {DotNeg, Incl},
    Dialect.FOPT_leq: _BASE | {DotNeg, Leq},
    Dialect.FOPT_leq_ci: _BASE | {DotNeg, Leq, CondIndep},
    # <= and ci are definable abbreviations in the cpi logic
    Dialect.FOPT_cpi: _BASE | {DotNeg, Leq, CondIndep, CondProbLeq},
}
_ATOM_ARGS = {
    Leq: ("left", "right"),
    CondIndep: ("cond", "left", "right"),
    CondProbLeq: ("event0", "given0", "event1", "given1"),
}


def _team_nodes(formula):
    """Collect node types of a team formula, checking kernel-only positions."""
    kinds = set()
    stack = [formula]
    while stack:
        n = stack.pop()
        t = type(n)
        if t in _ATOM_ARGS:
            for name in _ATOM_ARGS[t]:
                if not is_delta(getattr(n, name)):
                    raise DialectError(f"argument of {t.__name__} must be quantifier-free")
            kinds.add(t)
            continue
        if t is Not:
            if not is_delta(n.body):
                raise DialectError("'!' applies only to quantifier-free formulas; use '~'")
            kinds.add(t)
            continue
        if t is Incl:
            if len(n.left) != len(n.right):
                raise ArityMismatch("inclusion atom with tuples of different lengths")
            if not all(isinstance(v, Var) for v in n.left + n.right):
                raise DialectError("inclusion atoms take variables only")
            kinds.add(t)
            continue
        if t in (Rel, Eq):
            kinds.add(t)
            continue
        if t not in _BASE | {DotNeg}:
            raise DialectError(f"{t.__name__} is not a team-logic construct")
        kinds.add(t)
        stack.extend(children(n))
    return kinds


def in_dialect(formula, dialect) -> bool:
    dialect = Dialect.parse(dialect)
    try:
        kinds = _team_nodes(formula)
    except DialectError:
        return False
    return kinds <= _ALLOWED[dialect]


def classify(formula) -> Dialect:
    """Smallest dialect (in ``DIALECT_ORDER``) whose grammar admits ``formula``.

    Raises DialectError for formulas no dialect admits, such as an inclusion
    atom next to a probabilistic atom.
    """
    kinds = _team_nodes(formula)
    for d in DIALECT_ORDER:
        if kinds <= _ALLOWED[d]:
            return d
    raise DialectError("formula mixes inclusion atoms with probabilistic atoms")


def check_dialect(formula, dialect) -> None:
    dialect = Dialect.parse(dialect)
    kinds = _team_nodes(formula)
    extra = kinds - _ALLOWED[dialect]
    if extra:
        names = ", ".join(sorted(k.__name__ for k in extra))
        raise DialectError(f"{names} not allowed in {dialect.value}")


_DUAL = {Exists1: Forall1, Forall1: Exists1}


def _nnf(node):
    if isinstance(node, DotNeg):
        inner = node.body
        if isinstance(inner, DotNeg):
            return _nnf(inner.body)
        if isinstance(inner, And):
            return WeakOr(_nnf(DotNeg(inner.left)), _nnf(DotNeg(inner.right)))
        if isinstance(inner, WeakOr):
            return And(_nnf(DotNeg(inner.left)), _nnf(DotNeg(inner.right)))
        if isinstance(inner, (Exists1, Forall1)):
            return _DUAL[type(inner)](inner.var, _nnf(DotNeg(inner.body)))
        return node
    if isinstance(node, (And, WeakOr)):
        return type(node)(_nnf(node.left), _nnf(node.right))
    if isinstance(node, (Exists1, Forall1)):
        return type(node)(node.var, _nnf(node.body))
    return node


def _push(q, x, body):
    if x not in free_vars(body):
        return body
    if isinstance(body, (And, WeakOr)):
        left, right = body.left, body.right
        if (q is Forall1) == isinstance(body, And):
            return type(body)(_push(q, x, left), _push(q, x, right))
        if x not in free_vars(right):
            return type(body)(_push(q, x, left), right)
        if x not in free_vars(left):
            return type(body)(left, _push(q, x, right))
    return q(x, body)


def miniscope(formula):
    """Equivalent team formula with ``~`` pushed to the atoms and every
    ``E1``/``A1`` moved as far inwards as its variable allows.

    Sound because the connectives and quantifiers act classically on a
    fixed team and truth depends only on the free variables.
    """

    def go(node):
        if isinstance(node, (And, WeakOr)):
            return type(node)(go(node.left), go(node.right))
        if isinstance(node, (Exists1, Forall1)):
            return _push(type(node), node.var, go(node.body))
        return node

    return go(_nnf(formula))
