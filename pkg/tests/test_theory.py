import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treemax.errors import ParameterError
from treemax.lorentz import INF
from treemax.numerics import LogScalar
from treemax.theory import (
    CITE,
    CRITICAL_SEGMENT,
    Kind,
    Status,
    VecaParams,
    Verdict,
    make_ball_indicator,
    make_dirac,
    make_lower_profile,
    make_veca_g,
    make_veca_m,
    restricted_verdict,
    strong_verdict,
)

B, U, Q = Status.BOUNDED, Status.UNBOUNDED, Status.UNKNOWN


def test_strong_examples():
    v = strong_verdict(0.75, 2, 2)
    assert (v.status, v.citation, v.kind) == (B, CITE["large_i"], Kind.STRONG)
    v = strong_verdict(0.5, 2, 2)
    assert (v.status, v.citation) == (U, CITE["optaxis"])
    v = strong_verdict(0.25, Fraction(4, 3), 8)
    assert (v.status, v.citation) == (Q, CRITICAL_SEGMENT)


def test_strong_endpoints():
    assert strong_verdict(0.25, Fraction(4, 3), INF).status is B
    assert strong_verdict(0.25, Fraction(4, 3), Fraction(4, 3)).status is U
    assert strong_verdict(0.25, 2, 4).status is U  # p > 1/(1-gamma)
    assert strong_verdict(0.25, Fraction(5, 4), 4).status is U  # q <= 1/gamma
    assert strong_verdict(0.25, Fraction(5, 4), 5).status is B
    assert strong_verdict(1.5, 2, 3).status is B
    assert strong_verdict(1.5, 3, 2).status is U
    assert strong_verdict(1, 1, 1).status is U
    assert strong_verdict(1, 1, 2).status is B


def test_restricted_examples():
    v = restricted_verdict(0.5, 2, 2)
    assert (v.status, v.citation, v.kind) == (B, CITE["homtree"], Kind.RESTRICTED_WEAK)
    v = restricted_verdict(0.25, Fraction(4, 3), 4)
    assert (v.status, v.citation) == (B, CITE["interp"])
    assert restricted_verdict(0.25, 2, 4).status is U
    assert restricted_verdict(0.75, 4, Fraction(4, 3)).status is U
    assert restricted_verdict(0.25, Fraction(4, 3), INF).status is B


def test_parameter_errors():
    with pytest.raises(ParameterError):
        strong_verdict(0, 2, 2)
    with pytest.raises(ParameterError):
        strong_verdict(0.5, Fraction(1, 2), 2)
    with pytest.raises(ParameterError):
        Verdict(Q, Kind.STRONG, "anything else")
    with pytest.raises(ParameterError):
        VecaParams(2, Fraction(1, 2))
    with pytest.raises(ParameterError):
        VecaParams(1, Fraction(3, 4))


def test_unknown_only_on_open_segment():
    for gamma in (Fraction(1, 4), Fraction(3, 5), Fraction(3, 4)):
        for j in range(0, 101):
            y = Fraction(j, 100)
            q = INF if y == 0 else 1 / y
            v = strong_verdict(gamma, 1 / (1 - gamma), q)
            assert (v.status is Q) == (0 < y < min(gamma, 1 - gamma))


recip = st.fractions(min_value=0, max_value=1, max_denominator=40)
gammas = st.sampled_from([Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(3, 5),
                          Fraction(3, 4), Fraction(1), Fraction(3, 2)])


def _p(x):
    return INF if x == 0 else 1 / x


@settings(max_examples=500, deadline=None)
@given(gammas, recip, recip)
def test_strong_restricted_consistency(gamma, x, y):
    s = strong_verdict(gamma, _p(x), _p(y))
    r = restricted_verdict(gamma, _p(x), _p(y))
    if s.status is B:
        assert r.status is B
    if r.status is U:
        assert s.status is U
    if gamma < 1:
        assert r.status is not Q


def test_constructors():
    d = make_dirac(2)
    assert d.values == make_ball_indicator(2, 0).values
    phi = make_lower_profile(2, 2, Fraction(1, 2))
    expected = [2, math.sqrt(2), 1]
    assert all(abs(float(phi.value(n)) - e) < 1e-14 for n, e in enumerate(expected))
    vp = VecaParams(2, Fraction(3, 4))
    g = make_veca_g(2, vp, 3)
    for n in range(4):
        assert abs(float(g.value(n)) - 2 ** (-n / 2) * (1 + n) ** -0.75) < 1e-15
    assert g.has_tail
    m = make_veca_m(2, vp, 255)
    top = max(m.value(n) * LogScalar.from_exponent(2, Fraction(n, 2)) for n in range(256))
    assert top.isclose(4, 1e-30)
