"""Seeded random structures, teams and formulas at desk scale.

Every generator takes a ``random.Random``; ``rng_for`` derives one per
(seed, suite, case) so that any single case can be replayed on its own.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..metafinite import RStructure
from ..structures import Assignment, ProbTeam, Structure
from ..syntax.ast import (
    And,
    CondIndep,
    Const,
    CondProbLeq,
    DotNeg,
    Eq,
    Exists,
    Exists1,
    FnApp,
    Forall,
    Forall1,
    Incl,
    Leq,
    Lit,
    Not,
    NumLeq,
    Or,
    Rel,
    Sum,
    Times,
    Var,
    WeakOr,
)
from ..syntax.ops import Dialect

VOCABULARY = {"P": 1, "Q": 1, "R": 2}
WEIGHTS = (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2), Fraction(3))
TEAM_VARS = ("x", "y", "z")
BOUND_VARS = ("x", "y", "z", "w")


@dataclass(frozen=True)
class GenConfig:
    max_domain: int = 3
    max_depth: int = 4
    delta_depth: int = 3
    max_quantifiers: int = 3
    max_team_vars: int = 3


def rng_for(seed, suite, case) -> random.Random:
    return random.Random(f"{seed}:{suite}:{case}")


def random_structure(rng, cfg=GenConfig(), n=None) -> Structure:
    n = n or rng.randint(1, cfg.max_domain)
    rels = {}
    for name, arity in VOCABULARY.items():
        p = rng.choice((0.25, 0.5, 0.75))
        rels[name] = (arity, [t for t in product(range(n), repeat=arity) if rng.random() < p])
    return Structure(n, rels, {"c": rng.randrange(n)})


def random_weights(rng, keys, nonempty=True):
    weights = {k: rng.choice(WEIGHTS) for k in keys}
    if nonempty and keys and not any(weights.values()):
        weights[rng.choice(keys)] = rng.choice(WEIGHTS[1:])
    return weights


def random_team(rng, variables, n, nonempty=True) -> ProbTeam:
    vs = tuple(sorted(variables))
    rows = [Assignment(zip(vs, vals)) for vals in product(range(n), repeat=len(vs))]
    return ProbTeam(vs, random_weights(rng, rows, nonempty).items())


def random_team_vars(rng, cfg=GenConfig(), minimum=0):
    k = rng.randint(minimum, cfg.max_team_vars)
    return tuple(sorted(rng.sample(TEAM_VARS, k)))


def _term(rng, scope, n, consts=()):
    r = rng.random()
    if scope and r < 0.75:
        return Var(rng.choice(sorted(scope)))
    if consts and r < 0.85:
        return Const(rng.choice(consts))
    return Lit(rng.randrange(n))


def random_literal(rng, scope, n, consts=()):
    kind = rng.choice(("P", "Q", "R", "eq", "eq"))
    if kind == "eq":
        return Eq(_term(rng, scope, n, consts), _term(rng, scope, n, consts))
    return Rel(kind, tuple(_term(rng, scope, n, consts) for _ in range(VOCABULARY[kind])))


def random_delta(rng, scope, n, depth=3, consts=()):
    if depth <= 0 or rng.random() < 0.45:
        return random_literal(rng, scope, n, consts)
    if rng.random() < 0.4:
        return Not(random_delta(rng, scope, n, depth - 1, consts))
    return And(
        random_delta(rng, scope, n, depth - 1, consts),
        random_delta(rng, scope, n, depth - 1, consts),
    )


def random_guard(rng, scope, n, depth=2):
    if depth <= 0 or rng.random() < 0.45:
        return random_literal(rng, scope, n)
    r = rng.random()
    if r < 0.3:
        return Not(random_guard(rng, scope, n, depth - 1))
    cls = And if r < 0.65 else Or
    return cls(random_guard(rng, scope, n, depth - 1), random_guard(rng, scope, n, depth - 1))


_ATOMS = {
    Dialect.FOTdown: ("delta",),
    Dialect.FOT: ("delta", "inc"),
    Dialect.FOPT_leq: ("delta", "leq", "leq"),
    Dialect.FOPT_leq_ci: ("delta", "leq", "ci"),
    Dialect.FOPT_cpi: ("delta", "leq", "ci", "cpi", "cpi"),
}


def random_formula(rng, dialect, scope, n, cfg=GenConfig(), consts=()):
    """A formula of ``dialect`` whose free variables lie in ``scope``."""
    dialect = Dialect.parse(dialect)
    budget = [cfg.max_quantifiers]
    dd = cfg.delta_depth

    def atom(scope):
        kind = rng.choice(_ATOMS[dialect])
        if kind == "inc" and scope:
            k = rng.randint(1, min(2, len(scope)))
            pick = sorted(scope)
            return Incl(
                tuple(Var(rng.choice(pick)) for _ in range(k)),
                tuple(Var(rng.choice(pick)) for _ in range(k)),
            )
        d = lambda: random_delta(rng, scope, n, rng.randint(0, dd - 1), consts)  # noqa: E731
        if kind == "leq":
            return Leq(d(), d())
        if kind == "ci":
            return CondIndep(d(), d(), d())
        if kind == "cpi":
            return CondProbLeq(d(), d(), d(), d())
        return random_delta(rng, scope, n, dd, consts)

    def go(depth, scope):
        if depth <= 0 or rng.random() < 0.3:
            return atom(scope)
        ops = ["and", "or", "q", "q"]
        if dialect is not Dialect.FOTdown:
            ops.append("neg")
        op = rng.choice(ops)
        if op == "q" and budget[0] <= 0:
            op = "and"
        if op == "neg":
            return DotNeg(go(depth - 1, scope))
        if op == "and":
            return And(go(depth - 1, scope), go(depth - 1, scope))
        if op == "or":
            return WeakOr(go(depth - 1, scope), go(depth - 1, scope))
        budget[0] -= 1
        x = rng.choice(BOUND_VARS)
        cls = Exists1 if rng.random() < 0.5 else Forall1
        return cls(x, go(depth - 1, scope | {x}))

    return go(cfg.max_depth, frozenset(scope))


def random_rstructure(rng, cfg=GenConfig(), arity=None, fname="f") -> RStructure:
    base = random_structure(rng, cfg)
    k = rng.randint(0, 2) if arity is None else arity
    keys = list(product(range(base.domain_size), repeat=k))
    return RStructure(base, fname, k, random_weights(rng, keys, nonempty=False))


def _sum_star_atom(rng, scope, n, k, fname):
    """SUM_x(f(y), g): every summed variable occurs in y; the other positions
    hold quantified variables, literals or repeats."""
    nbound = rng.randint(0, k)
    pool = [v for v in ("a", "b", "c") if v not in scope][:nbound]
    positions = list(range(k))
    rng.shuffle(positions)
    args = [None] * k
    for v, p in zip(pool, positions):
        args[p] = Var(v)
    for p in range(k):
        if args[p] is None:
            r = rng.random()
            if pool and r < 0.3:
                args[p] = Var(rng.choice(pool))
            else:
                args[p] = _term(rng, scope, n)
    guard = random_guard(rng, set(scope) | set(pool), n)
    return Sum(tuple(pool), FnApp(fname, tuple(args)), guard)


def random_sum_star_sentence(rng, n, k, cfg=GenConfig(), fname="f"):
    budget = [cfg.max_quantifiers]

    def go(depth, scope):
        if depth <= 0 or rng.random() < 0.3:
            if rng.random() < 0.75:
                return NumLeq(
                    _sum_star_atom(rng, scope, n, k, fname), _sum_star_atom(rng, scope, n, k, fname)
                )
            return random_literal(rng, scope, n)
        op = rng.choice(("not", "and", "or", "q", "q"))
        if op == "q" and budget[0] <= 0:
            op = "or"
        if op == "not":
            return Not(go(depth - 1, scope))
        if op in ("and", "or"):
            cls = And if op == "and" else Or
            return cls(go(depth - 1, scope), go(depth - 1, scope))
        budget[0] -= 1
        x = rng.choice(BOUND_VARS)
        cls = Exists if rng.random() < 0.5 else Forall
        return cls(x, go(depth - 1, scope | {x}))

    return go(cfg.max_depth, frozenset())


def random_numterm(rng, scope, n, k, depth, fname="f"):
    r = rng.random()
    if depth <= 0 or r < 0.35:
        return FnApp(fname, tuple(_term(rng, scope, n) for _ in range(k)))
    if r < 0.55:
        return Times(
            random_numterm(rng, scope, n, k, depth - 1, fname),
            random_numterm(rng, scope, n, k, depth - 1, fname),
        )
    m = rng.randint(0, 2)
    xs = tuple(rng.sample(("a", "b", "c", "d"), m))
    inner = set(scope) | set(xs)
    return Sum(xs, random_numterm(rng, inner, n, k, depth - 1, fname), random_guard(rng, inner, n, 1))


def random_mf_sentence(rng, n, k, cfg=GenConfig(), fname="f"):
    """A metafinite sentence with products and arbitrary aggregate sums."""
    budget = [min(cfg.max_quantifiers, 2)]

    def go(depth, scope):
        if depth <= 0 or rng.random() < 0.35:
            if rng.random() < 0.7:
                return NumLeq(
                    random_numterm(rng, scope, n, k, 2, fname),
                    random_numterm(rng, scope, n, k, 2, fname),
                )
            return random_literal(rng, scope, n)
        op = rng.choice(("not", "and", "or", "q"))
        if op == "q" and budget[0] <= 0:
            op = "and"
        if op == "not":
            return Not(go(depth - 1, scope))
        if op in ("and", "or"):
            cls = And if op == "and" else Or
            return cls(go(depth - 1, scope), go(depth - 1, scope))
        budget[0] -= 1
        x = rng.choice(BOUND_VARS)
        cls = Exists if rng.random() < 0.5 else Forall
        return cls(x, go(depth - 1, scope | {x}))

    return go(min(cfg.max_depth, 3), frozenset())
