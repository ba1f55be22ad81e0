"""SMT-LIB 2 rendering of real-arithmetic sentences."""

from __future__ import annotations

from fractions import Fraction

from ..syntax.ast import RAdd, RAnd, REq, RExists, RLeq, RMul, RNot, RNum, ROr, RVar
from .real import has_product


def _num(v: Fraction) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        text = f"{abs(v.numerator)}.0"
    else:
        text = f"(/ {abs(v.numerator)}.0 {v.denominator}.0)"
    return f"(- {text})" if v < 0 else text


def _nary(op, parts, empty):
    if not parts:
        return empty
    if len(parts) == 1:
        return parts[0]
    return f"({op} {' '.join(parts)})"


def to_smt(node) -> str:
    if isinstance(node, RVar):
        return node.name
    if isinstance(node, RNum):
        return _num(node.value)
    if isinstance(node, RAdd):
        return _nary("+", [to_smt(t) for t in node.terms], "0.0")
    if isinstance(node, RMul):
        return f"(* {to_smt(node.left)} {to_smt(node.right)})"
    if isinstance(node, RLeq):
        return f"(<= {to_smt(node.left)} {to_smt(node.right)})"
    if isinstance(node, REq):
        return f"(= {to_smt(node.left)} {to_smt(node.right)})"
    if isinstance(node, RNot):
        return f"(not {to_smt(node.body)})"
    if isinstance(node, RAnd):
        return _nary("and", [to_smt(i) for i in node.items], "true")
    if isinstance(node, ROr):
        return _nary("or", [to_smt(i) for i in node.items], "false")
    if isinstance(node, RExists):
        if not node.vars:
            return to_smt(node.body)
        decls = " ".join(f"({v} Real)" for v in node.vars)
        return f"(exists ({decls}) {to_smt(node.body)})"
    raise TypeError(f"cannot render {type(node).__name__} in SMT-LIB")


def export_smtlib(psi) -> str:
    """Script declaring the outer weight variables and asserting the matrix."""
    logic = "NRA" if has_product(psi) else "LRA"
    lines = [f"(set-logic {logic})"]
    if isinstance(psi, RExists):
        lines += [f"(declare-fun {v} () Real)" for v in psi.vars]
        body = psi.body
    else:
        body = psi
    lines.append(f"(assert {to_smt(body)})")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
