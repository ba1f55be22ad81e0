"""Translation of team formulas into sentences of real arithmetic.

``fopt_to_real`` produces a sentence that holds over the reals exactly when
some nonempty team satisfies the formula in the given structure.  Each
assignment over the free variables gets one weight variable ``s_...``; the
weak quantifiers introduce blocks of inner variables ``t_...`` whose values
are pinned by equations, which is what ``eval_ra_instance`` exploits to
check a concrete weight vector without quantifier elimination.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ShapeError
from ..evaluate import eval_delta
from ..structures import ProbTeam, all_assignments, restrict
from ..syntax.ast import (
    And,
    CondIndep,
    CondProbLeq,
    DotNeg,
    Exists1,
    Forall1,
    Leq,
    RAdd,
    RAnd,
    REq,
    RExists,
    RLeq,
    RMul,
    RNot,
    RNum,
    ROr,
    RVar,
    WeakOr,
    is_delta,
)
from ..syntax.ops import free_vars, rename_bound, walk

ZERO = RNum(Fraction(0))


def weight_var_name(prefix, variables, values) -> str:
    if not variables:
        return prefix
    return "_".join([prefix, *variables, *(str(a) for a in values)])


def team_weight_vars(team: ProbTeam, domain_size: int, variables=None) -> dict:
    """Weight-variable name to weight, for every assignment over ``variables``."""
    vs = tuple(sorted(team.variables if variables is None else variables))
    marg = restrict(team, vs)
    return {
        weight_var_name("s", vs, s.values_for(vs)): marg[s]
        for s in all_assignments(vs, domain_size)
    }


class _Block:
    """Weight variables for every assignment over one variable set."""

    def __init__(self, prefix, variables, domain_size, taken):
        self.variables = tuple(sorted(variables))
        self.rows = list(all_assignments(self.variables, domain_size))
        names = {}
        for s in self.rows:
            name = weight_var_name(prefix, self.variables, s.values_for(self.variables))
            base, i = name, 1
            while name in taken:
                name = f"{base}_{i}"
                i += 1
            taken.add(name)
            names[s] = name
        self.names = names

    def var(self, s):
        return RVar(self.names[s])

    def sum_where(self, pred):
        return RAdd(tuple(self.var(s) for s in self.rows if pred(s)))


def fopt_to_real(structure, phi):
    phi = rename_bound(phi)
    taken = set()
    outer = _Block("s", free_vars(phi), structure.domain_size, taken)
    svars = tuple(outer.names[s] for s in outer.rows)
    nonneg = tuple(RLeq(ZERO, RVar(v)) for v in svars)
    nonempty = RNot(REq(ZERO, RAdd(tuple(RVar(v) for v in svars))))
    matrix = _star(structure, phi, outer, taken)
    return RExists(svars, RAnd(nonneg + (nonempty, matrix)))


def _star(A, phi, block: _Block, taken):
    def sat(d):
        return lambda s: eval_delta(A, s, d)

    if is_delta(phi):
        return RAnd(tuple(REq(block.var(s), ZERO) for s in block.rows if not eval_delta(A, s, phi)))
    if isinstance(phi, Leq):
        return RLeq(block.sum_where(sat(phi.left)), block.sum_where(sat(phi.right)))
    if isinstance(phi, CondIndep):
        d0, d1, d2 = phi.cond, phi.left, phi.right
        return REq(
            RMul(block.sum_where(sat(And(d0, d1))), block.sum_where(sat(And(d0, d2)))),
            RMul(block.sum_where(sat(d0)), block.sum_where(sat(And(And(d0, d1), d2)))),
        )
    if isinstance(phi, CondProbLeq):
        return RLeq(
            RMul(block.sum_where(sat(And(phi.event0, phi.given0))), block.sum_where(sat(phi.given1))),
            RMul(block.sum_where(sat(And(phi.event1, phi.given1))), block.sum_where(sat(phi.given0))),
        )
    if isinstance(phi, DotNeg):
        return RNot(_star(A, phi.body, block, taken))
    if isinstance(phi, And):
        return RAnd((_star(A, phi.left, block, taken), _star(A, phi.right, block, taken)))
    if isinstance(phi, WeakOr):
        return ROr((_star(A, phi.left, block, taken), _star(A, phi.right, block, taken)))
    if isinstance(phi, (Exists1, Forall1)):
        x = phi.var
        inner = _Block("t", set(block.variables) | {x}, A.domain_size, set(taken))
        body = _star(A, phi.body, inner, taken | set(inner.names.values()))
        tvars = tuple(inner.names[s] for s in inner.rows)
        cases = []
        for j in A.domain:
            eqs = []
            for s in block.rows:
                for k in A.domain:
                    target = block.var(s) if k == j else ZERO
                    eqs.append(REq(inner.var(s.extend(x, k)), target))
            cases.append(RAnd(tuple(eqs) + (body,)))
        if isinstance(phi, Exists1):
            return RExists(tvars, ROr(tuple(cases)))
        return RAnd(tuple(RExists(tvars, c) for c in cases))
    raise ShapeError(f"{type(phi).__name__} has no real-arithmetic translation")


def has_product(psi) -> bool:
    return any(isinstance(n, RMul) for n in walk(psi))


def eval_ra_instance(psi, weights, domain_size=None) -> bool:
    """Decide the matrix of ``psi`` with its outer weight variables fixed."""
    if not isinstance(psi, RExists) or not isinstance(psi.body, RAnd):
        raise ShapeError("expected an existential weight block around a conjunction")
    env = {}
    for v in psi.vars:
        if v not in weights:
            raise ShapeError(f"no weight given for {v}")
        env[v] = Fraction(weights[v])
    if domain_size is not None and psi.vars:
        count, n = len(psi.vars), domain_size
        while count % n == 0 and count > 1 and n > 1:
            count //= n
        if count != 1:
            raise ShapeError(f"{len(psi.vars)} weight variables do not fit domain size {n}")
    return _holds(psi.body, env)


def _val(t, env):
    if isinstance(t, RVar):
        try:
            return env[t.name]
        except KeyError:
            raise ShapeError(f"unbound variable {t.name}") from None
    if isinstance(t, RNum):
        return t.value
    if isinstance(t, RAdd):
        return sum((_val(x, env) for x in t.terms), Fraction(0))
    if isinstance(t, RMul):
        return _val(t.left, env) * _val(t.right, env)
    raise ShapeError(f"not a real term: {type(t).__name__}")


def _holds(f, env) -> bool:
    if isinstance(f, RAnd):
        return all(_holds(x, env) for x in f.items)
    if isinstance(f, ROr):
        return any(_holds(x, env) for x in f.items)
    if isinstance(f, RNot):
        return not _holds(f.body, env)
    if isinstance(f, RLeq):
        return _val(f.left, env) <= _val(f.right, env)
    if isinstance(f, REq):
        return _val(f.left, env) == _val(f.right, env)
    if isinstance(f, RExists):
        disjuncts = f.body.items if isinstance(f.body, ROr) else (f.body,)
        return any(_solve_and_check(f.vars, d, env) for d in disjuncts)
    raise ShapeError(f"not a real formula: {type(f).__name__}")


def _solve_and_check(tvars, disjunct, env) -> bool:
    """Bind each block variable from a defining conjunct ``t = e`` and check."""
    pending = set(tvars)
    inner = dict(env)
    for v in tvars:
        inner.pop(v, None)
    conjuncts = disjunct.items if isinstance(disjunct, RAnd) else (disjunct,)
    for c in conjuncts:
        if isinstance(c, REq) and isinstance(c.left, RVar) and c.left.name in pending:
            if free_vars(c.right) & pending:
                continue
            inner[c.left.name] = _val(c.right, inner)
            pending.discard(c.left.name)
    if pending:
        raise ShapeError(f"block variables {sorted(pending)} are not pinned by equations")
    return _holds(disjunct, inner)
