"""Translations between team logics, metafinite logic, fixed-point terms and real arithmetic."""

from .fo2team import Fo2TeamResult, eliminate_or, metafinite_to_fopt, normalize_sum, prenex
from .fot import fot_to_fopt, inclusion_rewrite
from .real import eval_ra_instance, fopt_to_real, has_product, team_weight_vars, weight_var_name
from .rewrites import (
    cpi_to_ci_and_leq,
    marginal_identity,
    marginal_identity_two_sided,
    prob_indep,
)
from .smtlib import export_smtlib, to_smt
from .team2fo import fopt_to_metafinite, is_zero, num_eq, team_variables
from .toffp import EQ_FN, chi_name, mf_to_ffp, structure_to_algebra

__all__ = [
    "EQ_FN",
    "Fo2TeamResult",
    "chi_name",
    "cpi_to_ci_and_leq",
    "eliminate_or",
    "eval_ra_instance",
    "export_smtlib",
    "fopt_to_metafinite",
    "fopt_to_real",
    "fot_to_fopt",
    "has_product",
    "inclusion_rewrite",
    "is_zero",
    "marginal_identity",
    "marginal_identity_two_sided",
    "metafinite_to_fopt",
    "mf_to_ffp",
    "normalize_sum",
    "num_eq",
    "prenex",
    "prob_indep",
    "structure_to_algebra",
    "team_variables",
    "team_weight_vars",
    "to_smt",
    "weight_var_name",
]
