from .ast import *  # noqa: F401,F403
from .ast import TRUE_DELTA, conj, is_delta, is_guard, tuple_eq
from .ops import (
    Dialect,
    alpha_equal,
    all_vars,
    canonical,
    check_dialect,
    classify,
    free_vars,
    fresh_name,
    fresh_names,
    in_dialect,
    miniscope,
    rename_bound,
    rename_var,
    substitute,
    substitute_consts,
    walk,
)
from .parser import parse, parse_ffp, parse_mf, parse_numterm
from .printer import term_text, to_text

__all__ = [
    "Dialect",
    "TRUE_DELTA",
    "alpha_equal",
    "all_vars",
    "canonical",
    "check_dialect",
    "classify",
    "conj",
    "free_vars",
    "fresh_name",
    "fresh_names",
    "in_dialect",
    "miniscope",
    "is_delta",
    "is_guard",
    "parse",
    "parse_ffp",
    "parse_mf",
    "parse_numterm",
    "rename_bound",
    "rename_var",
    "substitute",
    "substitute_consts",
    "term_text",
    "to_text",
    "tuple_eq",
    "walk",
]
