"""Functional fixed-point terms over ranked partial R-algebras.

Values are exact Fractions or ``UNDEF``.  Undefinedness propagates through
``+``, ``-`` and ``sgn``; a product or quotient with an undefined right
operand is 0 when the left operand is 0 and undefined otherwise.  ``max`` is
undefined as soon as one branch is.  ``fp`` computes the inflationary fixed
point starting from the everywhere-undefined function.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import DivisionByZero, EvalError, VarsNotInDomain
from .syntax.ast import Add, Div, FnApp, Fp, Lit, Max, Num, Sign, Sub, Times, Var
from .syntax.ops import free_vars, walk


class _Undef:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "undef"

    def __reduce__(self):
        return (_Undef, ())


UNDEF = _Undef()


def _value(v):
    if isinstance(v, bool) or isinstance(v, float):
        raise TypeError(f"algebra values must be exact, got {v!r}")
    return Fraction(v)


@dataclass(frozen=True)
class RAlgebra:
    """A plain finite set ``0..n-1`` with real-valued functions and a ranking.

    Function entries that are not listed are 0.
    """

    domain_size: int
    functions: Mapping = field(default_factory=dict)
    ranking: str = "E"

    def __post_init__(self):
        n = self.domain_size
        if n < 1:
            raise ValueError("domain_size must be at least 1")
        fns = {}
        for name, (arity, table) in dict(self.functions).items():
            tab = {}
            for key, v in dict(table).items():
                key = tuple(key) if not isinstance(key, int) else (key,)
                if len(key) != arity or any(not 0 <= a < n for a in key):
                    raise ValueError(f"bad entry {name}{key}")
                tab[key] = _value(v)
            fns[name] = (arity, tab)
        if self.ranking not in fns:
            fns[self.ranking] = (1, {(a,): Fraction(a) for a in range(n)})
        arity, tab = fns[self.ranking]
        ranks = sorted(tab.get((a,), Fraction(0)) for a in range(n))
        if arity != 1 or ranks != list(range(n)):
            raise ValueError(f"{self.ranking} is not a ranking of 0..{n - 1}")
        object.__setattr__(self, "functions", fns)

    @property
    def domain(self) -> range:
        return range(self.domain_size)

    def apply(self, name, args) -> Fraction:
        arity, tab = self.functions[name]
        if len(args) != arity:
            raise ValueError(f"{name} has arity {arity}")
        return tab.get(tuple(args), Fraction(0))

    def rank(self, a: int) -> int:
        return int(self.apply(self.ranking, (a,)))


def rank_tuple(alg: RAlgebra, elements) -> int:
    """Positional base-n code of a tuple under the ranking."""
    n = alg.domain_size
    code = 0
    for a in elements:
        code = code * n + alg.rank(a)
    return code


@dataclass
class PartialFn:
    name: str
    arity: int
    table: dict
    steps: int = 0
    applications: int = 0
    history: list = field(default_factory=list)

    def __call__(self, *args):
        return self.table.get(tuple(args), UNDEF)


def fixed_point(alg: RAlgebra, name, zvars, body, log=False, env=None) -> PartialFn:
    """Iterate the body operator from the all-undefined ``name`` until it is stable."""
    ev = FfpEvaluator(alg)
    return ev.fixed_point(name, tuple(zvars), body, dict(env or {}), {}, log)


def eval_ffp(alg: RAlgebra, s, t):
    return FfpEvaluator(alg).evaluate(s, t)


class FfpEvaluator:
    """Evaluator with subterm memoisation; ``runs`` records every fixed point computed."""

    def __init__(self, alg: RAlgebra):
        self.alg = alg
        self.runs = []
        self._memo = {}
        self._fp_tables = {}
        self._free = {}
        self._names = {}

    def evaluate(self, s, t):
        env = dict(s or {})
        missing = free_vars(t) - set(env)
        if missing:
            raise VarsNotInDomain(missing, sorted(env))
        return self._ev(t, env, {})

    def _free_of(self, t):
        key = id(t)
        hit = self._free.get(key)
        if hit is None:
            hit = (t, tuple(sorted(free_vars(t))))
            self._free[key] = hit
        return hit[1]

    def _fn_names(self, t):
        key = id(t)
        hit = self._names.get(key)
        if hit is None:
            names = frozenset(n.name for n in walk(t) if isinstance(n, (FnApp, Fp)))
            hit = (t, names)
            self._names[key] = hit
        return hit[1]

    def _ev(self, t, env, zenv):
        if isinstance(t, (Num, Var, Lit)):
            return self._eval(t, env, zenv)
        if zenv and not self._fn_names(t).isdisjoint(zenv):
            return self._eval(t, env, zenv)
        key = (id(t), tuple(env[v] for v in self._free_of(t)))
        hit = self._memo.get(key)
        if hit is None:
            hit = (t, self._eval(t, env, zenv))
            self._memo[key] = hit
        return hit[1]

    def _arg(self, a, env):
        if isinstance(a, Var):
            return env[a.name]
        if isinstance(a, Lit):
            return a.value
        raise TypeError(f"not an argument term: {a!r}")

    def _eval(self, t, env, zenv):
        if isinstance(t, Num):
            return Fraction(t.value)
        if isinstance(t, FnApp):
            args = tuple(self._arg(a, env) for a in t.args)
            if t.name in zenv:
                return zenv[t.name].get(args, UNDEF)
            return self.alg.apply(t.name, args)
        if isinstance(t, (Add, Sub)):
            a = self._ev(t.left, env, zenv)
            b = self._ev(t.right, env, zenv)
            if a is UNDEF or b is UNDEF:
                return UNDEF
            return a + b if isinstance(t, Add) else a - b
        if isinstance(t, Times):
            a = self._ev(t.left, env, zenv)
            if a is UNDEF:
                return UNDEF
            if a == 0:
                return a
            b = self._ev(t.right, env, zenv)
            return UNDEF if b is UNDEF else a * b
        if isinstance(t, Div):
            a = self._ev(t.left, env, zenv)
            if a is UNDEF:
                return UNDEF
            b = self._ev(t.right, env, zenv)
            if b is UNDEF:
                return Fraction(0) if a == 0 else UNDEF
            if b == 0:
                if a == 0:
                    return a
                raise DivisionByZero(f"{a} / 0")
            return a / b
        if isinstance(t, Sign):
            a = self._ev(t.body, env, zenv)
            if a is UNDEF:
                return UNDEF
            return Fraction((a > 0) - (a < 0))
        if isinstance(t, Max):
            best = None
            for values in product(self.alg.domain, repeat=len(t.vars)):
                inner = dict(env)
                inner.update(zip(t.vars, values))
                v = self._ev(t.body, inner, zenv)
                if v is UNDEF:
                    return UNDEF
                if best is None or v > best:
                    best = v
            return best
        if isinstance(t, Fp):
            table = self._fp_table(t, env, zenv)
            return table.get(tuple(self._arg(a, env) for a in t.args), UNDEF)
        raise EvalError(f"not a fixed-point term: {type(t).__name__}")

    def _fp_table(self, t, env, zenv):
        outer = sorted(free_vars(t.body) - set(t.zvars))
        refs_outer_z = not (self._fn_names(t.body) - {t.name}).isdisjoint(zenv)
        key = (id(t), tuple(env[v] for v in outer))
        if not refs_outer_z:
            hit = self._fp_tables.get(key)
            if hit is not None:
                return hit[1]
        inner_env = {v: env[v] for v in outer}
        run = self.fixed_point(t.name, t.zvars, t.body, inner_env, zenv, False)
        if not refs_outer_z:
            self._fp_tables[key] = (t, run.table)
        return run.table

    def fixed_point(self, name, zvars, body, env, zenv, log) -> PartialFn:
        n = self.alg.domain_size
        k = len(zvars)
        bound = n**k + 1
        points = list(product(self.alg.domain, repeat=k))
        table = {}
        run = PartialFn(name, k, table)
        while True:
            run.applications += 1
            if run.applications > bound:
                raise EvalError(f"fixed point of {name} did not converge in {bound} steps")
            scope = dict(zenv)
            scope[name] = table
            new = {}
            for point in points:
                if point in table:
                    continue
                inner = dict(env)
                inner.update(zip(zvars, point))
                v = self._ev(body, inner, scope)
                if v is not UNDEF:
                    new[point] = v
            if log:
                run.history.append(dict(table))
            if not new:
                break
            table = {**table, **new}
            run.table = table
            run.steps += 1
        self.runs.append(run)
        return run


# term constructors used by the translation into FFP

ONE = Num(1)
ZERO = Num(0)
TWO = Add(ONE, ONE)
HALF = Div(ONE, TWO)


def square(t):
    return Times(t, t)


def chi_eq(a, b):
    """1 when a = b, else 0."""
    return Sub(ONE, square(Sign(Sub(a, b))))


def chi_lt(a, b):
    """1 when a < b, else 0."""
    d = Sign(Sub(b, a))
    return Times(Add(square(d), d), HALF)


def chi_le(a, b):
    e, lt = chi_eq(a, b), chi_lt(a, b)
    return Sub(Add(e, lt), Times(e, lt))


def rank_expr(variables, ranking="E", bound="w"):
    """Horner form of the tuple rank, with base max{w}(E(w)) + 1."""
    if not variables:
        return ZERO
    base = Add(Max((bound,), FnApp(ranking, (Var(bound),))), ONE)
    out = FnApp(ranking, (Var(variables[0]),))
    for v in variables[1:]:
        out = Add(Times(out, base), FnApp(ranking, (Var(v),)))
    return out
