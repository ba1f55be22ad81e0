import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probteam import DialectError, ProbTeam, ShapeError, Structure
from probteam.evaluate import eval_fopt
from probteam.ffp import eval_ffp
from probteam.harness.generators import (
    GenConfig,
    random_formula,
    random_guard,
    random_rstructure,
    random_structure,
    random_team,
)
from probteam.metafinite import RStructure, eval_numterm, in_sum_star
from probteam.syntax import (
    Dialect,
    alpha_equal,
    miniscope,
    parse,
    parse_ffp,
    parse_mf,
    parse_numterm,
    to_text,
)
from probteam.syntax.ast import FnApp, Lit, Sum, Var
from probteam.translate import (
    cpi_to_ci_and_leq,
    eliminate_or,
    eval_ra_instance,
    export_smtlib,
    fopt_to_metafinite,
    fopt_to_real,
    fot_to_fopt,
    has_product,
    marginal_identity,
    metafinite_to_fopt,
    mf_to_ffp,
    normalize_sum,
    prob_indep,
    structure_to_algebra,
    weight_var_name,
)

import reference


def test_inclusion_rewrite():
    assert fot_to_fopt(parse("inc(x; y)")) == parse("A1 z. !x=z \\/ ~!y=z")
    assert fot_to_fopt(parse("inc(x,y; u,v)")) == parse(
        "A1 z1. A1 z2. !(x=z1 & y=z2) \\/ ~!(u=z1 & v=z2)"
    )
    assert fot_to_fopt(parse("P(x) & x=y")) == parse("P(x) & x=y")


def test_fot_to_fopt_rejects_probabilistic_input():
    with pytest.raises(DialectError):
        fot_to_fopt(parse("(x=0) <= (x=1)"))


def test_definability_rewrites():
    assert marginal_identity(("x",), ("y",)) == parse("A1 z. (x=z) <= (y=z)")
    assert prob_indep(("x",), ("y",), ("z",)) == parse("A1 a. A1 b. A1 c. ci(x=a; y=b; z=c)")


def test_leq_as_cpi():
    assert cpi_to_ci_and_leq(parse("(x=0) <= (y=1)")) == parse("cpi(x=0 | x=x, y=1 | x=x)")


@settings(max_examples=150)
@given(st.integers(0, 2**32 - 1))
def test_cpi_rewrite_preserves_truth(seed):
    rng = random.Random(seed)
    A = random_structure(rng)
    X = random_team(rng, ("x", "y"), A.domain_size, nonempty=rng.random() < 0.9)
    phi = random_formula(rng, Dialect.FOPT_leq_ci, ("x", "y"), A.domain_size)
    out = cpi_to_ci_and_leq(phi)
    assert eval_fopt(A, X, out) == eval_fopt(A, X, phi)


def test_real_shape():
    psi = fopt_to_real(Structure(2), parse("(x=0) <= (x=1)"))
    assert to_text(psi) == (
        "exists s_x_0 s_x_1. (0 <= s_x_0 & 0 <= s_x_1 & !(0 = (s_x_0 + s_x_1)) & s_x_0 <= s_x_1)"
    )
    assert eval_ra_instance(psi, {"s_x_0": 1, "s_x_1": 2})
    assert not eval_ra_instance(psi, {"s_x_0": 2, "s_x_1": 1})
    assert not eval_ra_instance(psi, {"s_x_0": 0, "s_x_1": 0})


def test_real_unsatisfiable_delta_and_negation():
    A = Structure(2)
    for text in ("!x=x", "~x=x"):
        psi = fopt_to_real(A, parse(text))
        for w in ({"s_x_0": 1, "s_x_1": 0}, {"s_x_0": F(1, 2), "s_x_1": 3}):
            assert not eval_ra_instance(psi, w)


def test_real_shape_errors():
    psi = fopt_to_real(Structure(2), parse("(x=0) <= (x=1)"))
    with pytest.raises(ShapeError):
        eval_ra_instance(psi, {"s_x_0": 1})
    with pytest.raises(ShapeError):
        eval_ra_instance(psi, {"s_x_0": 1, "s_x_1": 1}, domain_size=3)


def test_weight_names():
    assert weight_var_name("s", ("x",), (0,)) == "s_x_0"
    assert weight_var_name("s", (), ()) == "s"


def test_smt_logic_choice():
    A = Structure(2)
    linear = export_smtlib(fopt_to_real(A, parse("(x=0) <= (x=1)")))
    assert linear.startswith("(set-logic LRA)\n")
    assert "(declare-fun s_x_0 () Real)" in linear
    nonlinear = export_smtlib(fopt_to_real(A, parse("ci(x=x; x=0; x=1)")))
    assert nonlinear.startswith("(set-logic NRA)\n")


def test_team2fo_cases():
    assert fopt_to_metafinite(parse("P(x)")) == parse_mf(
        "forall u. (SUM{ | u=u}(f(u)) <= SUM{ | !u=u}(f(u))"
        " & SUM{ | !u=u}(f(u)) <= SUM{ | u=u}(f(u))) \\/ P(u)"
    )
    assert fopt_to_metafinite(parse("(x=0) <= (x=1)")) == parse_mf(
        "SUM{u | u=0}(f(u)) <= SUM{u | u=1}(f(u))"
    )
    neg = fopt_to_metafinite(parse("~(x=0) <= (x=1)"))
    assert neg.left == parse_mf("!(SUM{u | u=0}(f(u)) <= SUM{u | u=1}(f(u)))")
    assert fopt_to_metafinite(parse("E1 y. (x=y) <= (x=x)")) == parse_mf(
        "exists y. SUM{u | u=y}(f(u)) <= SUM{u | u=u}(f(u))"
    )


def test_normalize_sum():
    out = normalize_sum(parse_numterm("SUM{u0 | P(u0)}(f(u0, x0))"))
    assert out == parse_numterm("SUM{u1, u2 | P(u1) & u2=x0}(f(u1, u2))")
    assert alpha_equal(
        normalize_sum(parse_numterm("SUM{u | P(u)}(f(u))")), parse_numterm("SUM{w | P(w)}(f(w))")
    )
    assert eliminate_or(parse_mf("P(x) \\/ Q(x)")) == parse_mf("!(!P(x) & !Q(x))")


def test_normalize_requires_bound_variables_in_arguments():
    with pytest.raises(DialectError):
        normalize_sum(Sum(("a",), FnApp("f", (Lit(0),)), parse_mf("a=a")))


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_normalize_sum_preserves_value(seed):
    rng = random.Random(seed)
    rs = random_rstructure(rng, arity=2)
    n = rs.domain_size
    pool = ["a", "b"][: rng.randint(0, 2)]
    choices = [Var(v) for v in pool] + [Var("x"), Lit(rng.randrange(n))]
    args = [Var(v) for v in pool]
    while len(args) < 2:
        args.append(rng.choice(choices))
    rng.shuffle(args)
    t = Sum(tuple(pool), FnApp("f", tuple(args)), random_guard(rng, set(pool) | {"x"}, n))
    s = {"x": rng.randrange(n)}
    assert eval_numterm(rs, s, normalize_sum(t)) == eval_numterm(rs, s, t)


def test_fo2team_cases():
    res = metafinite_to_fopt(parse_mf("SUM{u | u=0}(f(u)) <= SUM{u | u=1}(f(u))"))
    assert res.formula == parse("(v1=0) <= (v1=1)")
    assert res.team_vars == ("v1",)
    neg = metafinite_to_fopt(parse_mf("!(SUM{u | u=0}(f(u)) <= SUM{u | u=1}(f(u)))"))
    assert neg.formula == parse("~(v1=0) <= (v1=1)")
    ex = metafinite_to_fopt(parse_mf("exists x. SUM{u | u=x}(f(u)) <= SUM{u | u=1}(f(u))"))
    assert ex.formula == parse("E1 x. (v1=x) <= (v1=1)")


def test_fo2team_rejects_outside_fragment():
    with pytest.raises(DialectError):
        metafinite_to_fopt(parse_mf("f(x) * f(y) <= f(x)"))


def test_ffp_connective_cases():
    assert mf_to_ffp(parse_mf("P(x)")) == parse_ffp("chi_P(x)")
    assert mf_to_ffp(parse_mf("P(x) \\/ Q(x)")) == parse_ffp("chi_P(x) + chi_Q(x) - chi_P(x) * chi_Q(x)")
    assert mf_to_ffp(parse_mf("forall x. P(x)")) == parse_ffp("1 - max{x}(1 - chi_P(x))")


def test_algebra_from_structure(team12):
    A = Structure.build(2, {"P": [1]})
    alg = structure_to_algebra(A, team12)
    assert [alg.apply("chi_P", (a,)) for a in (0, 1)] == [0, 1]
    assert [alg.apply("eq", (a, b)) for a in (0, 1) for b in (0, 1)] == [1, 0, 0, 1]
    assert [alg.apply("f", (a,)) for a in (0, 1)] == [1, 2]


def test_ffp_comparison_matches_order():
    for a, b in [(1, 2), (2, 1), (2, 2)]:
        rs = RStructure(Structure(2), "f", 1, {(0,): a, (1,): b})
        psi = parse_mf("SUM{u | u=0}(f(u)) <= SUM{u | u=1}(f(u))")
        alg = structure_to_algebra(rs.base, rs)
        assert eval_ffp(alg, {}, mf_to_ffp(psi)) == (1 if a <= b else 0)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_miniscope_preserves_truth(seed):
    rng = random.Random(seed)
    A = random_structure(rng)
    X = random_team(rng, ("x", "y"), A.domain_size, nonempty=rng.random() < 0.8)
    phi = random_formula(rng, Dialect.FOPT_cpi, ("x", "y"), A.domain_size, GenConfig(), ("c",))
    assert reference.sat(A, reference.as_dict(X), miniscope(phi)) == reference.sat(
        A, reference.as_dict(X), phi
    )


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_leq_fragment_yields_linear_arithmetic(seed):
    rng = random.Random(seed)
    A = random_structure(rng)
    phi = random_formula(rng, Dialect.FOPT_leq, ("x",), A.domain_size)
    assert not has_product(fopt_to_real(A, phi))


def test_roundtrip_stays_in_fragment():
    phi = parse("E1 y. (x=y) <= (P(x)) & ~(x=0) <= (x=1)")
    psi = fopt_to_metafinite(phi)
    assert in_sum_star(psi)
    back = metafinite_to_fopt(psi, team_vars=("x",)).formula
    A = Structure.build(2, {"P": [1]})
    for rows in ([((0,), 1), ((1,), 2)], [((0,), 3)], [((1,), 1)]):
        X = ProbTeam.from_rows(["x"], rows)
        assert eval_fopt(A, X, back) == eval_fopt(A, X, phi)
