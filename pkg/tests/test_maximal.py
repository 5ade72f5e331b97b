import random
from fractions import Fraction

import pytest

from treemax.errors import DivergenceError, ParameterError, ResourceBudgetError, UnsupportedTailError
from treemax.geometry import VertexAddress, ball_size, ball_vertices, first_vertex
from treemax.lorentz import FiniteFunction, GeometricTail, RadialFunction
from treemax.maximal import (
    MaximalParams,
    RadialKernel,
    ball_average,
    convolve,
    convolve_radial,
    maximal_at,
    maximal_bruteforce,
    maximal_radial,
    maximal_weak_norm,
    maximal_weak_norm_bounds,
    uncentered_bruteforce,
)
from treemax.numerics import LogScalar
from treemax.theory import make_ball_indicator, make_dirac, make_lower_profile, make_sphere_indicator

HALF = Fraction(1, 2)


def ls_ball(k, r, power):
    return LogScalar.from_integer(k, ball_size(k, r)) ** power


def test_params_validation():
    with pytest.raises(ParameterError):
        MaximalParams(0)
    with pytest.raises(ParameterError):
        MaximalParams(HALF, r_max=-1)
    with pytest.raises(ParameterError):
        RadialKernel(-1)


def test_ball_average_examples():
    dirac = make_dirac(2).to_finite()
    o = VertexAddress.root(2)
    assert ball_average(dirac, o, 0, HALF) == LogScalar.one(2)
    assert ball_average(dirac, first_vertex(2, 2), 2, HALF).isclose(10 ** -0.5, 1e-15)
    ball = make_ball_indicator(2, 1).to_finite()
    assert ball_average(ball, o, 1, HALF).isclose(2, 1e-30)


def test_bruteforce_examples():
    # r = ||x|| is interior-safe only when 2 ||x|| <= R
    for R in (3, 6):
        out = maximal_bruteforce(make_dirac(2).to_finite(), HALF, R)
        for x in ball_vertices(2, R):
            if 2 * x.norm <= R:
                assert out.value(x).isclose(ls_ball(2, x.norm, -HALF), 1e-30)
            else:
                assert out.value(x).is_zero
    out = maximal_bruteforce(make_ball_indicator(2, 1).to_finite(), HALF, 3)
    assert out.value(VertexAddress.root(2)).isclose(2, 1e-30)
    zero = FiniteFunction.from_mapping(2, {})
    assert not maximal_bruteforce(zero, HALF, 3).values


def test_bruteforce_budget():
    with pytest.raises(ResourceBudgetError):
        maximal_bruteforce(make_dirac(2).to_finite(), HALF, 12, budget=100)


def test_radial_examples():
    for gamma in (Fraction(1, 4), HALF, 1):
        for m in range(12):
            assert maximal_radial(make_dirac(3), gamma, m).isclose(ls_ball(3, m, -gamma), 1e-30)
    assert maximal_radial(make_ball_indicator(2, 1), HALF, 0).isclose(2, 1e-30)
    with pytest.raises(UnsupportedTailError):
        maximal_radial(RadialFunction.from_values(2, [1], tail=GeometricTail(-1)), HALF, 0)


@pytest.mark.parametrize("gamma", [Fraction(1, 4), HALF, Fraction(3, 4)])
def test_lower_profile_pointwise(gamma):
    for n in range(31):
        f = make_ball_indicator(2, n)
        phi = make_lower_profile(2, n, gamma)
        for m in range(n + 1):
            assert phi.value(m).leq(maximal_radial(f, gamma, m))


def test_uncentered_examples():
    dirac = make_dirac(2).to_finite()
    out = uncentered_bruteforce(dirac, 1, 3)
    assert out.value(first_vertex(2, 1)).isclose(Fraction(1, 4), 1e-30)
    assert not uncentered_bruteforce(FiniteFunction.from_mapping(2, {}), HALF, 3).values


def test_uncentered_dominates_centered():
    rng = random.Random(3)
    verts = ball_vertices(2, 4)
    for _ in range(5):
        f = FiniteFunction.from_mapping(2, {x: rng.randint(1, 5) for x in rng.sample(verts, 6)})
        cen = maximal_bruteforce(f, HALF, 4)
        unc = uncentered_bruteforce(f, HALF, 4)
        for x in verts:
            assert cen.value(x).leq(unc.value(x))


def test_convolve_radial_examples():
    for gamma in (HALF, 1):
        for m in range(10):
            expected = LogScalar.from_exponent(2, -gamma * m)
            assert convolve_radial(make_dirac(2), RadialKernel(gamma), m).isclose(expected, 1e-30)
    assert convolve_radial(make_sphere_indicator(2, 1), RadialKernel(1), 0).isclose(1.5, 1e-30)


def test_truncated_kernel_equals_ball_average():
    f = RadialFunction.from_values(2, [3, 0, 2, 1, 5])
    ff = f.to_finite()
    for m in range(11):
        x = first_vertex(2, m)
        for r in range(11):
            lhs = convolve_radial(f, RadialKernel(HALF, r), m)
            assert lhs.isclose(ball_average(ff, x, r, HALF), 1e-30)


def test_truncated_kernel_below_full():
    for k in (2, 3):
        for r in range(20):
            for n in range(r + 1):
                assert RadialKernel(HALF, r).value(k, n) <= RadialKernel(HALF).value(k, n)


def test_convolve_matches_radial():
    f = RadialFunction.from_values(3, [1, 2, 0, 4])
    ff = f.to_finite()
    for m in range(5):
        a = convolve(ff, RadialKernel(Fraction(3, 4)), first_vertex(3, m))
        assert a.isclose(convolve_radial(f, RadialKernel(Fraction(3, 4)), m), 1e-30)


def test_convolve_radial_tail():
    # a_gamma against k^(-n) tail: rate 1 - gamma - 1 < 0, summable
    f = RadialFunction.from_values(2, [1], tail=GeometricTail(-1))
    v = convolve_radial(f, RadialKernel(HALF), 0)
    direct = sum(2.0 ** (-n) * 2.0 ** (-n / 2) * (3 * 2 ** (n - 1) if n else 1) for n in range(200))
    assert abs(float(v) - direct) < 1e-12 * direct
    with pytest.raises(DivergenceError):
        convolve_radial(RadialFunction.from_values(2, [1], tail=GeometricTail(0)), RadialKernel(HALF), 0)


@pytest.mark.parametrize("k,R", [(2, 5), (3, 4)])
def test_radial_symmetry_and_oracle(k, R):
    f = RadialFunction.from_values(k, [2, 1, 0, 3])
    out = maximal_bruteforce(f.to_finite(), Fraction(3, 4), R)
    for x in ball_vertices(k, R):
        assert out.value(x) == out.value(first_vertex(k, x.norm))
        fast = maximal_radial(f, Fraction(3, 4), x.norm, r_max=R - x.norm)
        assert out.value(x).isclose(fast, 1e-10)


def test_maximal_at_uncapped_matches_radial():
    f = RadialFunction.from_values(2, [1, 0, 4])
    ff = f.to_finite()
    for m in range(8):
        assert maximal_at(ff, first_vertex(2, m), HALF).isclose(maximal_radial(f, HALF, m), 1e-30)


def test_weak_norm_dirac_and_ball():
    # sup_m |B_m|^(-1/2) |B_m|^(1/2) = 1 is attained at m = 0
    assert maximal_weak_norm(make_dirac(2), HALF, 2).isclose(1, 1e-30)
    exact = maximal_weak_norm(make_ball_indicator(2, 2), HALF, 2)
    assert exact.isclose(5, 1e-30)
    lo, hi = maximal_weak_norm_bounds(make_ball_indicator(2, 2).to_finite(), HALF, 2)
    assert lo.leq(exact) and exact.leq(hi)
    with pytest.raises(DivergenceError):
        maximal_weak_norm(make_dirac(2), HALF, Fraction(3, 2))


def test_weak_norm_bracket_tight_above_critical_q():
    f = make_ball_indicator(2, 3)
    exact = maximal_weak_norm(f, Fraction(3, 4), 4)
    lo, hi = maximal_weak_norm_bounds(f.to_finite(), Fraction(3, 4), 4)
    assert lo.leq(exact) and exact.leq(hi)
    assert hi.rel_diff(lo) < 0.01
