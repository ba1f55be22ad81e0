from .generators import GenConfig, rng_for
from .suites import SUITES, SuiteReport, run_case, run_suite

__all__ = ["GenConfig", "SUITES", "SuiteReport", "rng_for", "run_case", "run_suite"]
