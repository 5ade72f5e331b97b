import pickle
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treemax.errors import DomainError, ParameterError
from treemax.numerics import (
    LogScalar,
    as_fraction,
    ctx,
    get_precision,
    ls_max,
    ls_sum,
    set_precision,
)


def ls(e, k=2):
    return LogScalar.from_exponent(k, e)


def test_from_integer_examples():
    assert LogScalar.from_integer(2, 0).is_zero
    assert LogScalar.from_integer(2, 32).exponent == 5
    e = LogScalar.from_integer(2, 10).exponent
    assert abs(ctx.mpf(2) ** e - 10) < ctx.mpf(10) ** -12


def test_from_integer_negative():
    with pytest.raises(DomainError):
        LogScalar.from_integer(2, -1)


def test_power_and_add_examples():
    assert (LogScalar.from_integer(2, 8) ** Fraction(1, 2)).exponent == ctx.mpf(1.5)
    assert ls_sum([LogScalar.one(2), LogScalar.one(2)]).exponent == 1
    v = LogScalar.from_integer(2, 10) ** Fraction(-1, 2)
    assert abs(float(v) - 10 ** -0.5) < 1e-15


def test_mixed_bases():
    with pytest.raises(ParameterError):
        LogScalar.one(2) * LogScalar.one(3)
    with pytest.raises(ParameterError):
        ls_sum([LogScalar.one(2), LogScalar.one(3)])


def test_zero_power():
    z = LogScalar.zero(2)
    assert (z ** 2).is_zero
    with pytest.raises(DomainError):
        z ** 0
    with pytest.raises(DomainError):
        z ** -1


def test_division_by_zero():
    with pytest.raises(DomainError):
        LogScalar.one(2) / LogScalar.zero(2)


def test_subtraction():
    d = LogScalar.from_integer(3, 10) - LogScalar.from_integer(3, 4)
    assert d.isclose(6, 1e-30)
    assert (LogScalar.one(3) - LogScalar.one(3)).is_zero
    with pytest.raises(DomainError):
        LogScalar.one(3) - LogScalar.from_integer(3, 2)


def test_to_sci_far_outside_double_range():
    assert LogScalar.from_exponent(2, -5000).to_sci(15) == "7.07981126104817e-1506"
    assert LogScalar.from_integer(2, 4).to_sci(15) == "4.00000000000000e+00"
    assert LogScalar.zero(2).to_sci(3) == "0.00e+00"


def test_pickle_round_trip():
    for v in (LogScalar.from_integer(3, 10) ** Fraction(1, 3), LogScalar.zero(3), ls(-1234.5)):
        assert pickle.loads(pickle.dumps(v)) == v


def test_precision_guard():
    old = get_precision()
    with pytest.raises(ParameterError):
        set_precision(10)
    set_precision(50)
    try:
        assert get_precision() == 50
    finally:
        set_precision(old)


def test_as_fraction():
    assert as_fraction(0.75) == Fraction(3, 4)
    assert as_fraction("4/3") == Fraction(4, 3)
    assert as_fraction("inf") == float("inf")


def test_ls_max_and_ordering():
    vals = [ls(3), ls(-2), LogScalar.zero(2), ls(7)]
    assert ls_max(vals) == ls(7)
    assert LogScalar.zero(2) < ls(-1000)
    assert sorted(vals)[0].is_zero


def test_random_pairs_mul_div_and_power_round_trip():
    rng = random.Random(1)
    tol = 1e-12
    for _ in range(10_000):
        a = ls(rng.uniform(-200, 200))
        b = ls(rng.uniform(-200, 200))
        assert ((a * b) / b).isclose(a, tol)
        alpha = rng.uniform(0.1, 10)
        assert ((a ** alpha) ** (1 / alpha)).isclose(a, tol)


def test_add_permutation_invariance():
    rng = random.Random(2)
    for _ in range(20):
        terms = [ls(rng.uniform(-200, 200), k=3) for _ in range(100)]
        total = ls_sum(terms)
        rng.shuffle(terms)
        assert ls_sum(terms).isclose(total, 1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(-200, 200), st.floats(-200, 200))
def test_compare_agrees_with_exponent_order(ea, eb):
    a, b = ls(ea), ls(eb)
    if abs(ea - eb) > 1e-9:
        assert (a.compare(b) > 0) == (ea > eb)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10**30), st.integers(1, 10**30))
def test_integer_products_exact(u, v):
    prod = LogScalar.from_integer(2, u) * LogScalar.from_integer(2, v)
    assert prod.isclose(LogScalar.from_integer(2, u * v), 1e-30)
