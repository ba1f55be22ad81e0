"""Recursive-descent parsers for the ASCII formula grammars.

Team logics::

    R(x,y)   x=y   #k   !d   d & d   ~p   p \\/ p   E1 x. p   A1 x. p
    (d) <= (d)   ci(d0; d1; d2)   cpi(d0 | d1, d2 | d3)   inc(x,y; u,v)

Metafinite logic::

    f(x,y)   t * t   SUM{x,y | g}(t)   t <= t   !p   p & p   p \\/ p
    exists x. p   forall x. p

Fixed-point terms::

    0  1  E(x)  f(x)  t+t  t-t  t*t  t/t  sgn(t)  max{x}(t)  fp[Z(z1,z2) <- t](y1,y2)

``&`` binds tighter than ``\\/``; a quantifier's scope extends as far right as
possible.  Bare integers in first-order term positions are read as domain
literals, so ``x=0`` and ``x=#0`` are the same formula.
"""

from __future__ import annotations

import re
from collections.abc import Iterable

from ..errors import FormulaSyntaxError
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
    Rel,
    Sign,
    Sub,
    Sum,
    Times,
    Var,
    WeakOr,
    is_delta,
    is_guard,
)
from .ops import Dialect, check_dialect, classify

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op>\\/|<-|<=)
  | (?P<lit>\#\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),;|=!&~.{}\[\]*+\-/])
    """,
    re.VERBOSE,
)

_TEAM_KEYWORDS = {"E1", "A1", "ci", "cpi", "inc"}
_MF_KEYWORDS = {"exists", "forall", "SUM"}
_FFP_KEYWORDS = {"sgn", "max", "fp"}


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos

    def __repr__(self):
        return f"{self.text!r}@{self.pos}"


def tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, constants: Iterable[str] = ()):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.constants = frozenset(constants)

    # token helpers

    @property
    def tok(self):
        return self.toks[self.i]

    def at(self, text) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def error(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return FormulaSyntaxError(f"{message}, found {found}", self.text, tok.pos)

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def expect(self, text):
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def accept(self, text) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def ident(self, reserved=frozenset()):
        t = self.tok
        if t.kind != "ident" or t.text in reserved:
            raise self.error("expected an identifier")
        self.i += 1
        return t.text

    def finish(self, node):
        if self.tok.kind != "eof":
            raise self.error("unexpected trailing input")
        return node

    # first-order terms

    def term(self):
        t = self.tok
        if t.kind == "lit":
            self.i += 1
            return Lit(int(t.text[1:]))
        if t.kind == "int":
            self.i += 1
            return Lit(int(t.text))
        if t.kind == "ident":
            self.i += 1
            return Const(t.text) if t.text in self.constants else Var(t.text)
        raise self.error("expected a variable or constant")

    def term_list(self, close=")"):
        out = []
        if self.at(close):
            return tuple(out)
        out.append(self.term())
        while self.accept(","):
            out.append(self.term())
        return tuple(out)

    def var_list(self, stop, reserved=frozenset()):
        names = []
        if self.at(stop):
            return tuple(names)
        names.append(self.ident(reserved))
        while self.accept(","):
            names.append(self.ident(reserved))
        return tuple(names)

    def bound_vars(self, reserved):
        names = [self.ident(reserved)]
        while self.accept(","):
            names.append(self.ident(reserved))
        if len(set(names)) != len(names):
            raise self.error("repeated bound variable")
        return names

    # team logics

    def team_formula(self):
        left = self.team_conj()
        while self.at("\\/"):
            self.advance()
            left = WeakOr(left, self.team_conj())
        return left

    def team_conj(self):
        left = self.team_unary()
        while self.at("&"):
            self.advance()
            left = And(left, self.team_unary())
        return left

    def team_unary(self):
        if self.accept("~"):
            return DotNeg(self.team_unary())
        if self.at("!"):
            tok = self.advance()
            body = self.team_unary()
            if not is_delta(body):
                raise self.error("'!' applies only to quantifier-free formulas; use '~'", tok)
            return Not(body)
        if self.at("E1") or self.at("A1"):
            cls = Exists1 if self.advance().text == "E1" else Forall1
            names = self.bound_vars(_TEAM_KEYWORDS)
            self.expect(".")
            body = self.team_formula()
            for name in reversed(names):
                body = cls(name, body)
            return body
        return self.team_atom()

    def delta_arg(self):
        tok = self.tok
        d = self.team_formula()
        if not is_delta(d):
            raise self.error("expected a quantifier-free formula", tok)
        return d

    def team_atom(self):
        t = self.tok
        if t.kind == "ident" and self.toks[self.i + 1].text == "(":
            if t.text == "ci":
                self.i += 2
                d0 = self.delta_arg()
                self.expect(";")
                d1 = self.delta_arg()
                self.expect(";")
                d2 = self.delta_arg()
                self.expect(")")
                return CondIndep(d0, d1, d2)
            if t.text == "cpi":
                self.i += 2
                d0 = self.delta_arg()
                self.expect("|")
                d1 = self.delta_arg()
                self.expect(",")
                d2 = self.delta_arg()
                self.expect("|")
                d3 = self.delta_arg()
                self.expect(")")
                return CondProbLeq(d0, d1, d2, d3)
            if t.text == "inc":
                self.i += 2
                left = tuple(Var(v) for v in self.var_list(";", _TEAM_KEYWORDS))
                self.expect(";")
                right = tuple(Var(v) for v in self.var_list(")", _TEAM_KEYWORDS))
                self.expect(")")
                if len(left) != len(right):
                    raise FormulaSyntaxError(
                        "inclusion atom with tuples of different lengths", self.text, t.pos
                    )
                return Incl(left, right)
            if t.text not in _TEAM_KEYWORDS:
                self.i += 2
                args = self.term_list()
                self.expect(")")
                return Rel(t.text, args)
        if self.at("("):
            open_tok = self.advance()
            inner = self.team_formula()
            self.expect(")")
            if self.at("<="):
                self.advance()
                if not is_delta(inner):
                    raise self.error("left side of <= must be quantifier-free", open_tok)
                self.expect("(")
                right = self.delta_arg()
                self.expect(")")
                return Leq(inner, right)
            return inner
        left = self.term()
        self.expect("=")
        return Eq(left, self.term())

    # metafinite logic

    def mf_formula(self):
        left = self.mf_conj()
        while self.at("\\/"):
            self.advance()
            left = Or(left, self.mf_conj())
        return left

    def mf_conj(self):
        left = self.mf_unary()
        while self.at("&"):
            self.advance()
            left = And(left, self.mf_unary())
        return left

    def mf_unary(self):
        if self.accept("!"):
            return Not(self.mf_unary())
        if self.at("exists") or self.at("forall"):
            cls = Exists if self.advance().text == "exists" else Forall
            names = self.bound_vars(_MF_KEYWORDS)
            self.expect(".")
            body = self.mf_formula()
            for name in reversed(names):
                body = cls(name, body)
            return body
        return self.mf_atom()

    def mf_atom(self):
        start = self.i
        try:
            left = self.numterm()
            self.expect("<=")
            return NumLeq(left, self.numterm())
        except FormulaSyntaxError as numeric_err:
            self.i = start
            try:
                return self.mf_plain_atom()
            except FormulaSyntaxError as plain_err:
                raise max((numeric_err, plain_err), key=lambda e: e.position) from None

    def mf_plain_atom(self):
        if self.accept("("):
            inner = self.mf_formula()
            self.expect(")")
            return inner
        t = self.tok
        if t.kind == "ident" and self.toks[self.i + 1].text == "(":
            if t.text in _MF_KEYWORDS:
                raise self.error("unexpected keyword")
            self.i += 2
            args = self.term_list()
            self.expect(")")
            return Rel(t.text, args)
        left = self.term()
        self.expect("=")
        return Eq(left, self.term())

    def numterm(self):
        left = self.numfactor()
        while self.accept("*"):
            left = Times(left, self.numfactor())
        return left

    def numfactor(self):
        if self.at("SUM"):
            self.advance()
            self.expect("{")
            names = self.var_list("|", _MF_KEYWORDS)
            if len(set(names)) != len(names):
                raise self.error("repeated SUM variable")
            self.expect("|")
            gtok = self.tok
            guard = self.guard()
            if not is_guard(guard):
                raise self.error("guards may not contain quantifiers or numeric atoms", gtok)
            self.expect("}")
            self.expect("(")
            body = self.numterm()
            self.expect(")")
            return Sum(tuple(names), body, guard)
        if self.accept("("):
            inner = self.numterm()
            self.expect(")")
            return inner
        t = self.tok
        if t.kind == "ident" and t.text not in _MF_KEYWORDS and self.toks[self.i + 1].text == "(":
            self.i += 2
            args = self.term_list()
            self.expect(")")
            return FnApp(t.text, args)
        raise self.error("expected a numeric term")

    def guard(self):
        left = self.guard_conj()
        while self.at("\\/"):
            self.advance()
            left = Or(left, self.guard_conj())
        return left

    def guard_conj(self):
        left = self.guard_unary()
        while self.at("&"):
            self.advance()
            left = And(left, self.guard_unary())
        return left

    def guard_unary(self):
        if self.accept("!"):
            return Not(self.guard_unary())
        if self.accept("("):
            inner = self.guard()
            self.expect(")")
            return inner
        return self.mf_plain_atom()

    # fixed-point terms

    def ffp_expr(self):
        left = self.ffp_term()
        while self.at("+") or self.at("-"):
            cls = Add if self.advance().text == "+" else Sub
            left = cls(left, self.ffp_term())
        return left

    def ffp_term(self):
        left = self.ffp_factor()
        while self.at("*") or self.at("/"):
            cls = Times if self.advance().text == "*" else Div
            left = cls(left, self.ffp_factor())
        return left

    def ffp_factor(self):
        t = self.tok
        if t.kind == "int":
            if t.text not in ("0", "1"):
                raise self.error("numeric constants are restricted to 0 and 1")
            self.i += 1
            return Num(int(t.text))
        if self.accept("("):
            inner = self.ffp_expr()
            self.expect(")")
            return inner
        if self.at("sgn"):
            self.advance()
            self.expect("(")
            body = self.ffp_expr()
            self.expect(")")
            return Sign(body)
        if self.at("max"):
            self.advance()
            self.expect("{")
            names = self.var_list("}", _FFP_KEYWORDS)
            if len(set(names)) != len(names):
                raise self.error("repeated max variable")
            self.expect("}")
            self.expect("(")
            body = self.ffp_expr()
            self.expect(")")
            return Max(tuple(names), body)
        if self.at("fp"):
            self.advance()
            self.expect("[")
            name = self.ident(_FFP_KEYWORDS)
            self.expect("(")
            zvars = self.var_list(")", _FFP_KEYWORDS)
            if len(set(zvars)) != len(zvars):
                raise self.error("repeated fixed-point variable")
            self.expect(")")
            self.expect("<-")
            body = self.ffp_expr()
            self.expect("]")
            self.expect("(")
            args_tok = self.tok
            args = self.term_list()
            self.expect(")")
            if len(args) != len(zvars):
                raise self.error("fixed point applied to the wrong number of arguments", args_tok)
            return Fp(name, zvars, body, args)
        if t.kind == "ident" and self.toks[self.i + 1].text == "(":
            self.i += 2
            args = self.term_list()
            self.expect(")")
            return FnApp(t.text, args)
        raise self.error("expected a numeric term")


def parse(text: str, dialect=None, constants: Iterable[str] = ()):
    """Parse a team-logic formula, checking it against ``dialect`` when given.

    Identifiers listed in ``constants`` are read as structure constants rather
    than variables.
    """
    p = _Parser(text, constants)
    node = p.finish(p.team_formula())
    if dialect is not None:
        check_dialect(node, Dialect.parse(dialect))
    else:
        classify(node)
    return node


def parse_mf(text: str, constants: Iterable[str] = ()):
    p = _Parser(text, constants)
    return p.finish(p.mf_formula())


def parse_numterm(text: str, constants: Iterable[str] = ()):
    p = _Parser(text, constants)
    return p.finish(p.numterm())


def parse_ffp(text: str, constants: Iterable[str] = ()):
    p = _Parser(text, constants)
    return p.finish(p.ffp_expr())
