"""Probabilistic team semantics: exact evaluation, translations and property checks."""

from .errors import (
    ArityMismatch,
    DialectError,
    DivisionByZero,
    EvalError,
    FormulaSyntaxError,
    NonemptyRequired,
    ProbTeamError,
    ShapeError,
    VarsNotInDomain,
)
from .evaluate import eval_fopt, eval_fot, event_weight, find_satisfying_team
from .ffp import UNDEF, FfpEvaluator, RAlgebra, eval_ffp, fixed_point
from .metafinite import RStructure, bridge, eval_mf, eval_numterm, in_sum_star
from .structures import Assignment, PlainTeam, ProbTeam, Structure, distr, extend, restrict, support
from .syntax import Dialect, classify, parse, parse_ffp, parse_mf, to_text

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "Assignment",
    "Dialect",
    "DialectError",
    "DivisionByZero",
    "EvalError",
    "FfpEvaluator",
    "FormulaSyntaxError",
    "NonemptyRequired",
    "PlainTeam",
    "ProbTeam",
    "ProbTeamError",
    "RAlgebra",
    "RStructure",
    "ShapeError",
    "Structure",
    "UNDEF",
    "VarsNotInDomain",
    "bridge",
    "classify",
    "distr",
    "eval_ffp",
    "eval_fopt",
    "eval_fot",
    "eval_mf",
    "eval_numterm",
    "event_weight",
    "extend",
    "find_satisfying_team",
    "fixed_point",
    "in_sum_star",
    "parse",
    "parse_ffp",
    "parse_mf",
    "restrict",
    "support",
    "to_text",
]
