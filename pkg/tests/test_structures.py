from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from probteam import NonemptyRequired, ProbTeam, Structure, VarsNotInDomain
from probteam.evaluate import event_weight
from probteam.structures import (
    Assignment,
    PlainTeam,
    all_assignments,
    distr,
    extend,
    rename_team,
    restrict,
    support,
)
from probteam.syntax import parse
from probteam.syntax.ast import And, Not


def team(rows, variables=("x",)):
    return ProbTeam.from_rows(variables, rows)


def test_support_keeps_nonzero_rows(team12):
    assert support(team12) == {Assignment({"x": 0}), Assignment({"x": 1})}
    assert support(team([((0,), 0), ((1,), 2)])) == {Assignment({"x": 1})}
    assert support(ProbTeam(["x"])) == frozenset()


def test_distr_normalises(team12):
    assert distr(team12) == team([((0,), F(1, 3)), ((1,), F(2, 3))])
    assert distr(team([((0,), F(1, 2))])) == team([((0,), 1)])


def test_distr_of_empty_team_fails():
    with pytest.raises(NonemptyRequired):
        distr(team([((0,), 0), ((1,), 0)]))


def test_extend_fresh_variable(team12):
    out = extend(team12, 0, "y")
    assert out == team([((0, 0), 1), ((1, 0), 2)], ("x", "y"))
    assert out[{"x": 0, "y": 1}] == 0


def test_extend_existing_variable_collapses():
    X = team([((0, 1), 3)], ("x", "y"))
    assert extend(X, 0, "y") == team([((0, 0), 3)], ("x", "y"))
    Y = team([((0, 0), 1), ((0, 1), 2)], ("x", "y"))
    assert extend(Y, 1, "y") == team([((0, 1), 3)], ("x", "y"))


def test_extend_empty_team():
    assert extend(ProbTeam(["x"]), 1, "y").is_empty()


def test_restrict():
    U = ProbTeam.uniform(["x", "y"], 2, F(1, 4))
    assert restrict(U, ["x"]) == team([((0,), F(1, 2)), ((1,), F(1, 2))])
    assert restrict(U, ["x", "y"]) == U
    empty = restrict(U, [])
    assert empty.items() == [(Assignment(), F(1))]


def test_restrict_outside_domain(team12):
    with pytest.raises(VarsNotInDomain):
        restrict(team12, ["y"])


def test_event_weight(team12):
    A = Structure(2)
    assert event_weight(A, team12, parse("x=1")) == 2
    assert event_weight(A, team12, parse("!x=x")) == 0
    assert event_weight(A, team12, parse("x=x")) == 3


def test_weights_stay_fractions(team12):
    assert all(type(w) is F for _, w in distr(team12).items())


def test_float_weights_rejected():
    with pytest.raises(TypeError):
        ProbTeam(["x"], {Assignment({"x": 0}): 0.5})


def test_structure_validation():
    with pytest.raises(ValueError):
        Structure.build(2, {"P": [2]})
    with pytest.raises(ValueError):
        Structure(0)
    with pytest.raises(ValueError):
        Structure.build(2, {"R": [(0, 1), (1,)]})


def test_rename_team(team12):
    assert rename_team(team12, {"x": "w"}) == team([((0,), 1), ((1,), 2)], ("w",))


def test_plain_team_from_support():
    X = team([((0,), 0), ((1,), 2)])
    assert set(PlainTeam.from_support(X)) == {Assignment({"x": 1})}


weights = st.sampled_from([F(0), F(1), F(1, 2), F(2), F(3), F(5, 7)])


@st.composite
def teams(draw, variables=("x", "y"), n=2):
    rows = list(all_assignments(variables, n))
    return ProbTeam(variables, {s: draw(weights) for s in rows})


@given(teams(), st.sampled_from([(), ("x",), ("y",), ("x", "y")]))
def test_restrict_preserves_total(X, V):
    assert restrict(X, V).total() == X.total()


@given(teams(), st.integers(0, 1))
def test_restrict_undoes_fresh_extend(X, a):
    assert restrict(extend(X, a, "z"), ["x", "y"]) == X


@given(teams())
def test_distr_total_is_one(X):
    if X.is_empty():
        return
    assert distr(X).total() == 1


deltas = st.sampled_from(["x=0", "y=1", "P(x)", "x=y", "!P(y)", "P(x) & x=y"])


@given(teams(), deltas, deltas)
def test_event_weight_additive(X, d0, d1):
    A = Structure.build(2, {"P": [1]})
    a, b = parse(d0), parse(d1)
    disjoint = And(a, Not(b))
    union = Not(And(Not(disjoint), Not(b)))
    assert event_weight(A, X, union) == event_weight(A, X, disjoint) + event_weight(A, X, b)
