import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probteam import DivisionByZero
from probteam.ffp import (
    UNDEF,
    FfpEvaluator,
    RAlgebra,
    chi_eq,
    chi_le,
    chi_lt,
    eval_ffp,
    fixed_point,
    rank_expr,
    rank_tuple,
)
from probteam.syntax import parse_ffp
from probteam.syntax.ast import Add, FnApp, Num, Times, Var


def alg(n=2, **fns):
    return RAlgebra(n, {k: v for k, v in fns.items()})


def ev(text, algebra=None, s=None):
    return eval_ffp(algebra or alg(), s or {}, parse_ffp(text))


def test_sign():
    assert ev("sgn(1 - 0)") == 1
    assert ev("sgn(0)") == 0
    assert ev("sgn(0 - 1)") == -1


def undefined():
    """A term that is undefined everywhere: a fixed point that never fills."""
    return parse_ffp("fp[Z(z) <- Z(z)](0)")


def test_undef_rules():
    u = undefined()
    A = alg()
    assert eval_ffp(A, {}, u) is UNDEF
    assert eval_ffp(A, {}, Times(Num(0), u)) == 0
    assert eval_ffp(A, {}, Times(Num(1), u)) is UNDEF
    assert eval_ffp(A, {}, Add(Num(1), u)) is UNDEF


def test_division():
    assert ev("1 / (1 + 1)") == F(1, 2)
    assert ev("0 / 0") == 0
    with pytest.raises(DivisionByZero):
        ev("1 / 0")


def test_max_of_ranking():
    assert ev("max{x}(E(x))", RAlgebra(3)) == 2


def test_body_without_recursion_converges_in_one_step():
    run = fixed_point(RAlgebra(3), "Z", ("z",), FnApp("E", (Var("z"),)))
    assert run.table == {(0,): 0, (1,): 1, (2,): 2}
    assert run.steps == 1


def test_prefix_sum():
    A = RAlgebra(2, {"f": (1, {(0,): 1, (1,): 2})})
    body = parse_ffp(
        "(1 - sgn(E(z) - 0) * sgn(E(z) - 0)) * f(z)"
        " + max{u}((1 - sgn(E(z) - (E(u) + 1)) * sgn(E(z) - (E(u) + 1))) * (Z(u) + f(z)))"
    )
    run = fixed_point(A, "Z", ("z",), body)
    assert run.table == {(0,): 1, (1,): 3}
    assert run.applications <= 2**1 + 1


def test_undefined_entries_survive():
    run = fixed_point(RAlgebra(2), "Z", ("z",), parse_ffp("Z(z)"))
    assert run.table == {}
    assert run.applications == 1


def test_rank_tuple():
    A = RAlgebra(2)
    assert rank_tuple(A, (1, 0)) == 2
    assert rank_tuple(RAlgebra(3), (0, 0)) == 0
    B = RAlgebra(3, {"E": (1, {(0,): 2, (1,): 0, (2,): 1})})
    assert rank_tuple(B, (0,)) == 2


def test_bad_ranking():
    with pytest.raises(ValueError):
        RAlgebra(2, {"E": (1, {(0,): 1, (1,): 1})})


def test_float_values_rejected():
    with pytest.raises(TypeError):
        RAlgebra(2, {"f": (1, {(0,): 0.5})})


rankings = st.integers(1, 3).flatmap(
    lambda n: st.permutations(range(n)).map(lambda p: RAlgebra(n, {"E": (1, {(a,): r for a, r in enumerate(p)})}))
)


@given(rankings, st.integers(0, 3))
def test_rank_tuple_bijective(A, k):
    n = A.domain_size
    codes = sorted(rank_tuple(A, t) for t in product(range(n), repeat=k))
    assert codes == list(range(n**k))


@settings(max_examples=50)
@given(rankings, st.integers(1, 2))
def test_rank_expr_matches_rank_tuple(A, k):
    vs = tuple(f"v{i}" for i in range(k))
    term = rank_expr(vs)
    for t in product(range(A.domain_size), repeat=k):
        assert eval_ffp(A, dict(zip(vs, t)), term) == rank_tuple(A, t)


values = st.sampled_from([F(0), F(1), F(-1), F(1, 2), F(3), F(-2, 3)])


@given(values, values)
def test_characteristic_terms(a, b):
    A = RAlgebra(1, {"a": (0, {(): a}), "b": (0, {(): b})})
    ta, tb = FnApp("a", ()), FnApp("b", ())
    assert eval_ffp(A, {}, chi_eq(ta, tb)) == (a == b)
    assert eval_ffp(A, {}, chi_lt(ta, tb)) == (a < b)
    assert eval_ffp(A, {}, chi_le(ta, tb)) == (a <= b)


@given(values.filter(lambda v: v != 0))
def test_undef_algebra(a):
    A = RAlgebra(1, {"a": (0, {(): a})})
    ta, u = FnApp("a", ()), undefined()
    assert eval_ffp(A, {}, Times(ta, u)) is UNDEF
    assert eval_ffp(A, {}, Times(Num(0), u)) == 0
    assert eval_ffp(A, {}, Add(ta, u)) is UNDEF


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_fixed_point_fills_monotonically(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    f = {(a,): rng.choice([0, 1, 2]) for a in range(n)}
    A = RAlgebra(n, {"f": (1, f)})
    body = parse_ffp(
        "(1 - sgn(E(z) - 0) * sgn(E(z) - 0)) * f(z)"
        " + max{u}((1 - sgn(E(z) - (E(u) + 1)) * sgn(E(z) - (E(u) + 1))) * (Z(u) + f(z)))"
    )
    evaluator = FfpEvaluator(A)
    run = evaluator.fixed_point("Z", ("z",), body, {}, {}, True)
    assert run.applications <= n + 1
    history = run.history + [run.table]
    for before, after in zip(history, history[1:]):
        assert set(before) <= set(after)
        assert all(after[k] == v for k, v in before.items())
    total = 0
    for a in range(n):
        total += f[(a,)]
        assert run.table[(a,)] == total
