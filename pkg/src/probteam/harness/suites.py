"""Randomised property suites.

A suite case draws its own generator from ``(seed, suite, index)`` and
returns ``None`` when the property holds, or a JSON-ready counterexample
(structure, team, formula and the two disagreeing values) when it fails.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..evaluate import eval_fopt, eval_fot
from ..ffp import FfpEvaluator, UNDEF
from ..io import rstructure_to_json, structure_to_json, team_to_json
from ..metafinite import bridge, eval_mf, in_sum_star, scaling_witness
from ..structures import (
    Assignment,
    PlainTeam,
    ProbTeam,
    Structure,
    distr,
    extend,
    restrict,
)
from ..syntax.ast import Exists1, Forall1
from ..syntax.ops import (
    Dialect,
    all_vars,
    free_vars,
    in_dialect,
    miniscope,
    rename_bound,
    rename_var,
    substitute_consts,
)
from ..syntax.printer import to_text
from ..translate.fo2team import metafinite_to_fopt
from ..translate.fot import fot_to_fopt
from ..translate.real import eval_ra_instance, fopt_to_real, has_product, team_weight_vars
from ..translate.rewrites import marginal_identity, marginal_identity_two_sided, prob_indep
from ..translate.team2fo import fopt_to_metafinite, team_variables
from ..translate.toffp import mf_to_ffp, structure_to_algebra
from .generators import (
    TEAM_VARS,
    WEIGHTS,
    GenConfig,
    random_formula,
    random_mf_sentence,
    random_rstructure,
    random_structure,
    random_sum_star_sentence,
    random_team,
    random_team_vars,
    rng_for,
)

FOPT_DIALECTS = (Dialect.FOPT_leq, Dialect.FOPT_leq_ci, Dialect.FOPT_cpi)
CONSTS = ("c",)


def _witness(A, X, phi, **extra):
    out = {"structure": structure_to_json(A)}
    if X is not None:
        out["team"] = team_to_json(X)
    if phi is not None:
        out["formula"] = to_text(phi)
    for k, v in extra.items():
        out[k] = v if isinstance(v, (bool, int, str, list, dict, type(None))) else str(v)
    return out


def _setup(rng, cfg, empty=0.0, minimum=0):
    """Structure, team variables and a team that is empty with probability ``empty``."""
    A = random_structure(rng, cfg)
    D = random_team_vars(rng, cfg, minimum)
    if rng.random() < empty:
        return A, D, ProbTeam(D, {})
    return A, D, random_team(rng, D, A.domain_size)


def case_scaling(rng, cfg):
    A, D, X = _setup(rng, cfg)
    phi = random_formula(rng, rng.choice(FOPT_DIALECTS), D, A.domain_size, cfg, CONSTS)
    a, b = eval_fopt(A, X, phi), eval_fopt(A, distr(X), phi)
    if a != b:
        return _witness(A, X, phi, team_value=a, distr_value=b)


def case_locality(rng, cfg):
    A, D, X = _setup(rng, cfg, empty=0.1)
    scope = [v for v in D if rng.random() < 0.7]
    phi = random_formula(rng, rng.choice(FOPT_DIALECTS), scope, A.domain_size, cfg, CONSTS)
    V = sorted(free_vars(phi) | {v for v in D if rng.random() < 0.5})
    a, b = eval_fopt(A, X, phi), eval_fopt(A, restrict(X, V), phi)
    if a != b:
        return _witness(A, X, phi, restricted_to=V, team_value=a, restricted_value=b)


def case_substitution(rng, cfg):
    A, D, X = _setup(rng, cfg, empty=0.15)
    n = A.domain_size
    xs = rng.sample(TEAM_VARS + ("w",), rng.randint(1, 2))
    vals = [rng.randrange(n) for _ in xs]
    phi = random_formula(rng, rng.choice(FOPT_DIALECTS), set(D) | set(xs), n, cfg, CONSTS)
    Y = X
    for x, a in zip(xs, vals):
        Y = extend(Y, a, x)
    left = eval_fopt(A, Y, phi)
    right = eval_fopt(A, X, substitute_consts(phi, dict(zip(xs, vals))))
    if left != right:
        return _witness(A, X, phi, variables=xs, values=vals, extended_value=left, substituted_value=right)


def case_renaming(rng, cfg):
    A, D, X = _setup(rng, cfg, empty=0.1, minimum=1)
    n = A.domain_size
    w = rng.choice(D)
    theta = random_formula(rng, rng.choice(FOPT_DIALECTS), D, n, cfg, CONSTS)
    candidates = [v for v in TEAM_VARS + ("w", "v", "t") if v not in all_vars(theta)]
    x = rng.choice(candidates)
    for Q in (Exists1, Forall1):
        before, after = Q(w, theta), Q(x, rename_var(theta, w, x))
        a, b = eval_fopt(A, X, before), eval_fopt(A, X, after)
        if a != b:
            return _witness(A, X, before, renamed=to_text(after), original_value=a, renamed_value=b)
    renamed = rename_bound(theta, avoid=all_vars(theta))
    a, b = eval_fopt(A, X, theta), eval_fopt(A, X, renamed)
    if a != b:
        return _witness(A, X, theta, renamed=to_text(renamed), original_value=a, renamed_value=b)


def case_embedding(rng, cfg):
    A, D, X = _setup(rng, cfg, empty=0.1, minimum=1)
    phi = random_formula(rng, Dialect.FOT, D, A.domain_size, cfg, CONSTS)
    a = eval_fot(A, PlainTeam.from_support(X), phi)
    b = eval_fopt(A, X, fot_to_fopt(phi))
    if a != b:
        return _witness(A, X, phi, fot_value=a, fopt_value=b)


def _tuple_weight(X, pins):
    return sum((w for s, w in X.items() if all(s[v] == a for v, a in pins)), Fraction(0))


def oracle_marginal_identity(X, n, v0, v1):
    """Same weight on every value of ``v0`` and of ``v1``."""
    for a in product(range(n), repeat=len(v0)):
        if _tuple_weight(X, list(zip(v0, a))) != _tuple_weight(X, list(zip(v1, a))):
            return False
    return True


def oracle_indep(X, n, v0, v1, v2):
    """|X_v0v1| |X_v0v2| = |X_v0| |X_v0v1v2| for every assignment of the tuples."""
    vs = sorted(set(v0) | set(v1) | set(v2))
    for vals in product(range(n), repeat=len(vs)):
        s = dict(zip(vs, vals))

        def W(*blocks):
            return _tuple_weight(X, [(v, s[v]) for b in blocks for v in b])

        if W(v0, v1) * W(v0, v2) != W(v0) * W(v0, v1, v2):
            return False
    return True


def _structured_team(rng, D, n):
    """A random team, or one built to make the properties hold."""
    r = rng.random()
    rows = [Assignment(zip(D, vals)) for vals in product(range(n), repeat=len(D))]
    if r < 0.3:
        factors = {v: [rng.choice(WEIGHTS[1:]) for _ in range(n)] for v in D}
        weights = {}
        for s in rows:
            w = Fraction(1)
            for v in D:
                w *= factors[v][s[v]]
            weights[s] = w
        return ProbTeam(D, weights)
    if r > 0.9:
        return ProbTeam(D, {})
    X = random_team(rng, D, n)
    if r < 0.6 and len(D) >= 2:
        a, b = rng.sample(D, 2)
        swap = lambda s: Assignment({**dict(s), a: s[b], b: s[a]})  # noqa: E731
        return ProbTeam(D, {s: X[s] + X[swap(s)] for s in rows})
    return X


def case_definability(rng, cfg):
    A = random_structure(rng, cfg)
    n = A.domain_size
    D = random_team_vars(rng, cfg, minimum=1)
    X = _structured_team(rng, D, n)

    def tup(lo, hi):
        return tuple(rng.choice(D) for _ in range(rng.randint(lo, hi)))

    k = rng.randint(1, 2)
    v0, v1 = tup(k, k), tup(k, k)
    mi = marginal_identity(v0, v1)
    got = eval_fopt(A, X, mi)
    want = oracle_marginal_identity(X, n, v0, v1)
    two = eval_fopt(A, X, marginal_identity_two_sided(v0, v1))
    if not got == want == two:
        return _witness(A, X, mi, tuples=[list(v0), list(v1)], oracle=want, one_sided=got, two_sided=two)
    c0, c1, c2 = tup(0, 2), tup(1, 2), tup(1, 2)
    pi = prob_indep(c0, c1, c2)
    got, want = eval_fopt(A, X, pi), oracle_indep(X, n, c0, c1, c2)
    if got != want:
        return _witness(A, X, pi, tuples=[list(c0), list(c1), list(c2)], oracle=want, formula_value=got)


def case_team2fo(rng, cfg):
    A, D, X = _setup(rng, cfg, empty=0.1)
    phi = random_formula(rng, rng.choice(FOPT_DIALECTS), D, A.domain_size, cfg, CONSTS)
    psi = fopt_to_metafinite(phi)
    rs = bridge(A, X, team_variables(phi))
    a, b = eval_fopt(A, X, phi), eval_mf(rs, {}, psi)
    if a != b:
        return _witness(A, X, phi, sentence=to_text(psi), team_value=a, metafinite_value=b)


def case_fo2team(rng, cfg):
    A = random_structure(rng, cfg)
    n = A.domain_size
    k = rng.randint(0, 2)
    psi = random_sum_star_sentence(rng, n, k, cfg)
    res = metafinite_to_fopt(psi, arity=k)
    X = random_team(rng, res.team_vars, n, nonempty=True)
    rs = bridge(A, X, res.team_vars)
    a, b = eval_mf(rs, {}, psi), eval_fopt(A, X, res.formula)
    if a != b or not in_dialect(res.formula, Dialect.FOPT_leq):
        return {
            "rstructure": rstructure_to_json(rs),
            "team": team_to_json(X),
            "sentence": to_text(psi),
            "formula": to_text(res.formula),
            "metafinite_value": a,
            "team_value": b,
        }


def case_roundtrip(rng, cfg):
    A, D, X = _setup(rng, cfg)
    phi = random_formula(rng, Dialect.FOPT_leq, D, A.domain_size, cfg, CONSTS)
    psi = fopt_to_metafinite(phi)
    back = metafinite_to_fopt(psi, team_vars=team_variables(phi)).formula
    # the back translation is prenex; miniscoping keeps evaluation polynomial
    a, b = eval_fopt(A, X, phi), eval_fopt(A, X, miniscope(back))
    if a != b or not in_sum_star(psi):
        return _witness(A, X, phi, sentence=to_text(psi), back=to_text(back), original_value=a, roundtrip_value=b)


def case_toffp(rng, cfg):
    rs = random_rstructure(rng, cfg)
    n = rs.domain_size
    psi = random_mf_sentence(rng, n, rs.arity, cfg)
    term = mf_to_ffp(psi)
    ev = FfpEvaluator(structure_to_algebra(rs.base, rs))
    got = ev.evaluate({}, term)
    want = Fraction(1) if eval_mf(rs, {}, psi) else Fraction(0)
    slow = [(r.name, r.arity, r.applications) for r in ev.runs if r.applications > n**r.arity + 1]
    if got is UNDEF or got != want or slow:
        return {
            "rstructure": rstructure_to_json(rs),
            "sentence": to_text(psi),
            "expected": str(want),
            "got": str(got),
            "over_budget": [list(x) for x in slow],
        }


def case_ra_witness(rng, cfg):
    A, D, X = _setup(rng, cfg)
    dialect = rng.choice(FOPT_DIALECTS)
    phi = random_formula(rng, dialect, D, A.domain_size, cfg, CONSTS)
    psi = fopt_to_real(A, phi)
    weights = team_weight_vars(X, A.domain_size, sorted(free_vars(phi)))
    a, b = eval_fopt(A, X, phi), eval_ra_instance(psi, weights, A.domain_size)
    product_free = not (in_dialect(phi, Dialect.FOPT_leq) and has_product(psi))
    if a != b or not product_free:
        return _witness(A, X, phi, team_value=a, real_value=b, product_free=product_free)


def case_notransl(rng, cfg, index=0):
    """Case 0 is the fixed two-element witness; later cases draw random
    one-variable teams and check the threshold ``total <= n``."""
    psi = scaling_witness(1)
    if index == 0:
        A = Structure(2)
        X = ProbTeam.from_rows(["x"], [((0,), 1), ((1,), 2)])
    else:
        A = random_structure(rng, cfg)
        X = random_team(rng, ["x"], A.domain_size, nonempty=True)
    n = A.domain_size
    raw = eval_mf(bridge(A, X, ["x"]), {}, psi)
    scaled = eval_mf(bridge(A, distr(X), ["x"]), {}, psi)
    expected_raw = X.total() <= n
    flips = (raw, scaled) == (False, True) if index == 0 else True
    if raw != expected_raw or scaled is not True or not flips:
        return _witness(A, X, None, sentence=to_text(psi), raw_value=raw, distr_value=scaled)


SUITES = {
    "scaling": case_scaling,
    "locality": case_locality,
    "substitution": case_substitution,
    "renaming": case_renaming,
    "embedding": case_embedding,
    "definability": case_definability,
    "team2fo": case_team2fo,
    "fo2team": case_fo2team,
    "roundtrip": case_roundtrip,
    "toffp": case_toffp,
    "ra-witness": case_ra_witness,
    "notransl": case_notransl,
}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.cases - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self):
        yield f"suite {self.suite} (seed {self.seed}): {self.passed}/{self.cases} passed"
        if self.failures:
            index, detail = self.failures[0]
            yield f"first counterexample (case {index}):"
            yield json.dumps(detail, indent=2)


def run_case(suite, seed, index, cfg=GenConfig()):
    rng = rng_for(seed, suite, index)
    fn = SUITES[suite]
    if suite == "notransl":
        return fn(rng, cfg, index)
    return fn(rng, cfg)


def run_suite(suite, seed=0, cases=100, cfg=GenConfig()) -> SuiteReport:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    report = SuiteReport(suite, seed, cases)
    for i in range(cases):
        detail = run_case(suite, seed, i, cfg)
        if detail is not None:
            report.failures.append((i, detail))
    return report
