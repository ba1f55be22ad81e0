import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probteam import Structure, VarsNotInDomain
from probteam.harness.generators import random_guard, random_rstructure
from probteam.metafinite import (
    RStructure,
    bridge,
    eval_guard,
    eval_mf,
    eval_numterm,
    in_sum_star,
    scaling_witness,
)
from probteam.structures import distr
from probteam.syntax import parse_mf, parse_numterm
from probteam.syntax.ast import And, FnApp, Or, Sum, Var
from probteam.translate.team2fo import is_zero


@pytest.fixture
def rs12():
    return RStructure(Structure(2), "f", 1, {(0,): 1, (1,): 2})


def test_sums(rs12):
    assert eval_numterm(rs12, {}, parse_numterm("SUM{u | u=u}(f(u))")) == 3
    assert eval_numterm(rs12, {}, parse_numterm("SUM{u | !u=u}(f(u))")) == 0
    square = parse_numterm("SUM{u | u=u}(f(u)) * SUM{u | u=u}(f(u))")
    assert eval_numterm(rs12, {}, square) == 9


def test_scaling_witness(rs12, team12):
    psi = scaling_witness(1)
    assert eval_mf(rs12, {}, psi) is False
    scaled = bridge(Structure(2), distr(team12), ["x"])
    assert eval_mf(scaled, {}, psi) is True


def test_term_below_its_sum(rs12):
    psi = parse_mf("forall u. SUM{ | u=u}(f(u)) <= SUM{w | w=w}(f(w))")
    assert eval_mf(rs12, {}, psi)


def test_in_sum_star():
    assert in_sum_star(parse_mf("SUM{u | P(u)}(f(u)) <= SUM{u | Q(u)}(f(u))"))
    assert not in_sum_star(parse_mf("f(x) * f(y) <= f(x)"))


def test_zero_abbreviation():
    A = Structure(2)
    rs = RStructure(A, "f", 1, {(1,): 5})
    zero = is_zero("f", ("u",))
    assert eval_mf(rs, {"u": 0}, zero)
    assert not eval_mf(rs, {"u": 1}, zero)


def test_bridge(team12):
    rs = bridge(Structure(2), team12)
    assert (rs.value((0,)), rs.value((1,))) == (1, 2)


def test_unbound_variable(rs12):
    with pytest.raises(VarsNotInDomain):
        eval_mf(rs12, {}, parse_mf("SUM{ | x=x}(f(x)) <= SUM{ | x=x}(f(x))"))


def test_negative_weight_rejected():
    with pytest.raises(ValueError):
        RStructure(Structure(2), "f", 1, {(0,): -1})


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=200)
@given(seeds)
def test_sum_guard_additive(seed):
    rng = random.Random(seed)
    rs = random_rstructure(rng, arity=2)
    n = rs.domain_size
    g0 = random_guard(rng, ("a", "b", "x"), n)
    g1 = random_guard(rng, ("a", "b", "x"), n)
    body = FnApp("f", (Var("a"), Var("b")))
    s = {"x": rng.randrange(n)}

    def total(g):
        return eval_numterm(rs, s, Sum(("a", "b"), body, g))

    assert total(Or(g0, g1)) + total(And(g0, g1)) == total(g0) + total(g1)


@settings(max_examples=100)
@given(seeds)
def test_empty_sum_is_gated_body(seed):
    rng = random.Random(seed)
    rs = random_rstructure(rng, arity=1)
    n = rs.domain_size
    a = rng.randrange(n)
    g = random_guard(rng, ("u",), n)

    got = eval_numterm(rs, {"u": a}, Sum((), FnApp("f", (Var("u"),)), g))
    assert got == (rs.value((a,)) if eval_guard(rs.base, {"u": a}, g) else 0)


@settings(max_examples=100)
@given(st.lists(st.sampled_from([F(0), F(1), F(1, 2), F(3)]), min_size=2, max_size=2))
def test_zero_abbreviation_matches_weight(ws):
    rs = RStructure(Structure(2), "f", 1, {(i,): w for i, w in enumerate(ws)})
    for a in range(2):
        assert eval_mf(rs, {"u": a}, is_zero("f", ("u",))) == (ws[a] == 0)
