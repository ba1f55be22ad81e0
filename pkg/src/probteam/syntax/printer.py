"""ASCII rendering of every AST dialect; output reparses to the same tree."""

from __future__ import annotations

from fractions import Fraction

from .ast import (
    Add,
    And,
    CondIndep,
    CondProbLeq,
    Const,
    Div,
    DotNeg,
    Eq,
    Exists,
    Exists1,
    FnApp,
    Forall,
    Forall1,
    Fp,
    Incl,
    Leq,
    Lit,
    Max,
    Not,
    Num,
    NumLeq,
    Or,
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
    Rel,
    Sign,
    Sub,
    Sum,
    Times,
    Var,
    WeakOr,
)

# formula precedence
_QUANT, _OR, _AND, _UNARY, _ATOM = range(5)
# numeric term precedence
_ADD, _MUL, _PRIM = 1, 2, 3

_FORMULA_TYPES = (
    Rel, Eq, Not, And, Or, WeakOr, DotNeg, Leq, CondIndep, CondProbLeq, Incl,
    Exists1, Forall1, Exists, Forall, NumLeq,
)


def term_text(t) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Lit):
        return f"#{t.value}"
    if isinstance(t, Const):
        return t.name
    if isinstance(t, str):
        return t
    raise TypeError(f"not a first-order term: {t!r}")


def _args(args) -> str:
    return ",".join(term_text(a) for a in args)


def to_text(node) -> str:
    """Render a formula, numeric term, fixed-point term or real-arithmetic sentence."""
    if isinstance(node, _FORMULA_TYPES):
        return _formula(node, _QUANT)
    if isinstance(node, (RVar, RNum, RAdd, RMul, RLeq, REq, RNot, RAnd, ROr, RExists)):
        return _real(node)
    if isinstance(node, (Var, Lit, Const)):
        return term_text(node)
    return _num(node, _ADD)


def _wrap(text, own, required):
    return f"({text})" if own < required else text


def _formula(n, prec) -> str:
    if isinstance(n, Rel):
        return f"{n.name}({_args(n.args)})"
    if isinstance(n, Eq):
        return f"{term_text(n.left)}={term_text(n.right)}"
    if isinstance(n, Not):
        return "!" + _formula(n.body, _UNARY)
    if isinstance(n, DotNeg):
        return "~" + _formula(n.body, _UNARY)
    if isinstance(n, And):
        text = f"{_formula(n.left, _AND)} & {_formula(n.right, _AND + 1)}"
        return _wrap(text, _AND, prec)
    if isinstance(n, (Or, WeakOr)):
        text = f"{_formula(n.left, _OR)} \\/ {_formula(n.right, _OR + 1)}"
        return _wrap(text, _OR, prec)
    if isinstance(n, (Exists1, Forall1, Exists, Forall)):
        kw = {Exists1: "E1", Forall1: "A1", Exists: "exists", Forall: "forall"}[type(n)]
        return _wrap(f"{kw} {n.var}. {_formula(n.body, _QUANT)}", _QUANT, prec)
    if isinstance(n, Leq):
        return f"({_formula(n.left, _QUANT)}) <= ({_formula(n.right, _QUANT)})"
    if isinstance(n, CondIndep):
        parts = (n.cond, n.left, n.right)
        return "ci(" + "; ".join(_formula(p, _QUANT) for p in parts) + ")"
    if isinstance(n, CondProbLeq):
        f = lambda p: _formula(p, _QUANT)  # noqa: E731
        return f"cpi({f(n.event0)} | {f(n.given0)}, {f(n.event1)} | {f(n.given1)})"
    if isinstance(n, Incl):
        return f"inc({_args(n.left)}; {_args(n.right)})"
    if isinstance(n, NumLeq):
        return f"{_num(n.left, _MUL)} <= {_num(n.right, _MUL)}"
    raise TypeError(f"cannot print {type(n).__name__} as a formula")


def _num(n, prec) -> str:
    if isinstance(n, Num):
        return str(n.value)
    if isinstance(n, FnApp):
        return f"{n.name}({_args(n.args)})"
    if isinstance(n, Sum):
        return f"SUM{{{','.join(n.vars)} | {_formula(n.guard, _QUANT)}}}({_num(n.body, _ADD)})"
    if isinstance(n, Sign):
        return f"sgn({_num(n.body, _ADD)})"
    if isinstance(n, Max):
        return f"max{{{','.join(n.vars)}}}({_num(n.body, _ADD)})"
    if isinstance(n, Fp):
        return (
            f"fp[{n.name}({','.join(n.zvars)}) <- {_num(n.body, _ADD)}]"
            f"({_args(n.args)})"
        )
    if isinstance(n, (Times, Div)):
        op = "*" if isinstance(n, Times) else "/"
        return _wrap(f"{_num(n.left, _MUL)} {op} {_num(n.right, _MUL + 1)}", _MUL, prec)
    if isinstance(n, (Add, Sub)):
        op = "+" if isinstance(n, Add) else "-"
        return _wrap(f"{_num(n.left, _ADD)} {op} {_num(n.right, _ADD + 1)}", _ADD, prec)
    raise TypeError(f"cannot print {type(n).__name__} as a numeric term")


def _rnum(v: Fraction) -> str:
    return str(v)


def _real(n) -> str:
    if isinstance(n, RVar):
        return n.name
    if isinstance(n, RNum):
        return _rnum(n.value)
    if isinstance(n, RAdd):
        if not n.terms:
            return "0"
        if len(n.terms) == 1:
            return _real(n.terms[0])
        return "(" + " + ".join(_real(t) for t in n.terms) + ")"
    if isinstance(n, RMul):
        return f"{_real(n.left)} * {_real(n.right)}"
    if isinstance(n, RLeq):
        return f"{_real(n.left)} <= {_real(n.right)}"
    if isinstance(n, REq):
        return f"{_real(n.left)} = {_real(n.right)}"
    if isinstance(n, RNot):
        return f"!({_real(n.body)})"
    if isinstance(n, RAnd):
        if not n.items:
            return "true"
        return "(" + " & ".join(_real(i) for i in n.items) + ")"
    if isinstance(n, ROr):
        if not n.items:
            return "false"
        return "(" + " \\/ ".join(_real(i) for i in n.items) + ")"
    if isinstance(n, RExists):
        return f"exists {' '.join(n.vars)}. {_real(n.body)}"
    raise TypeError(f"cannot print {type(n).__name__} as real arithmetic")
