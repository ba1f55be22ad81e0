"""Embedding of inclusion logic into the probabilistic team logics."""

from __future__ import annotations

from ..errors import DialectError
from ..syntax.ast import DotNeg, Forall1, Incl, Not, Var, WeakOr, tuple_eq
from ..syntax.ops import Dialect, all_vars, classify, fresh_names, map_children


def inclusion_rewrite(atom: Incl, used) -> object:
    """``inc(x; y)`` becomes ``A1 z. (!(x=z) \\/ ~!(y=z))`` with fresh z."""
    zs = fresh_names("z", len(atom.left), used)
    zterms = tuple(Var(z) for z in zs)
    body = WeakOr(Not(tuple_eq(atom.left, zterms)), DotNeg(Not(tuple_eq(atom.right, zterms))))
    for z in reversed(zs):
        body = Forall1(z, body)
    return body


def fot_to_fopt(phi):
    if classify(phi) not in (Dialect.FOT, Dialect.FOTdown):
        raise DialectError("fot_to_fopt expects an FOT formula")
    used = set(all_vars(phi))

    def go(node):
        if isinstance(node, Incl):
            return inclusion_rewrite(node, used)
        return map_children(node, go)

    return go(phi)
