"""The boundedness map of M^gamma on the homogeneous tree, and its witness functions.

Parameters are handled as exact rationals in the reciprocal coordinates
``x = 1/p`` and ``y = 1/q`` so that the boundary lines ``x = 1 - gamma`` and
``y = gamma`` are hit exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ParameterError
from .lorentz import INF, GeometricTail, RadialFunction, inv
from .numerics import LogScalar, as_fraction, to_mpf


class Status(str, Enum):
    BOUNDED = "Bounded"
    UNBOUNDED = "Unbounded"
    UNKNOWN = "Unknown"


class Kind(str, Enum):
    STRONG = "Strong"
    RESTRICTED_WEAK = "RestrictedWeak"


CRITICAL_SEGMENT = "Remark: critical segment"

CITE = {
    "young": "Young's inequality (gamma > 1)",
    "weak11": "Weak type (1,1) of M (gamma = 1)",
    "large_i": "Theorem: strong type (i)",
    "large_ii": "Theorem: strong type (ii)",
    "optaxis": "Proposition: strong type optimality",
    "homtree": "Theorem: restricted weak type (1/gamma,1/gamma)",
    "interp": "Theorem: complex interpolation endpoint",
    "corollary": "Corollary: restricted weak type characterization",
}


@dataclass(frozen=True)
class Verdict:
    status: Status
    kind: Kind
    citation: str

    def __post_init__(self):
        if self.status is Status.UNKNOWN and self.citation != CRITICAL_SEGMENT:
            raise ParameterError("Unknown verdicts must cite the critical segment")


@dataclass(frozen=True)
class VecaParams:
    """``s > 1`` and ``1/s < beta < 1``."""

    s: object
    beta: object

    def __post_init__(self):
        s, beta = as_fraction(self.s), as_fraction(self.beta)
        if s == INF or s <= 1:
            raise ParameterError(f"s must be a finite real > 1, got {s}")
        if not 1 / s < beta < 1:
            raise ParameterError(f"beta must satisfy 1/s < beta < 1, got beta={beta}, s={s}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "beta", beta)


def _params(gamma, p, q):
    gamma, p, q = as_fraction(gamma), as_fraction(p), as_fraction(q)
    if gamma == INF or gamma <= 0:
        raise ParameterError(f"gamma must be a positive real, got {gamma}")
    for name, v in (("p", p), ("q", q)):
        if v != INF and v < 1:
            raise ParameterError(f"{name} must lie in [1, inf], got {v}")
    return gamma, inv(p), inv(q)


def _strong(gamma, x, y):
    """(status, citation key) at reciprocal coordinates x = 1/p, y = 1/q."""
    B, U = Status.BOUNDED, Status.UNBOUNDED
    if gamma > 1:
        return (B if y <= x else U), "young"
    if gamma == 1:
        return (B if y <= x and y != 1 else U), "weak11"
    crit = 1 - gamma
    if y > x or y >= gamma or x < crit or x == y == crit:
        return U, "optaxis"
    if x > crit:
        return B, "large_i"
    # left: x == 1 - gamma and y < min(gamma, 1 - gamma)
    if y == 0:
        return B, "large_ii"
    return Status.UNKNOWN, None


def strong_verdict(gamma, p, q):
    """Is M^gamma bounded from L^p to L^q?"""
    gamma, x, y = _params(gamma, p, q)
    status, key = _strong(gamma, x, y)
    cite = CRITICAL_SEGMENT if status is Status.UNKNOWN else CITE[key]
    return Verdict(status, Kind.STRONG, cite)


def restricted_verdict(gamma, p, q):
    """Is M^gamma of restricted weak type (p, q)?  q = inf falls back to the strong statement."""
    gamma, x, y = _params(gamma, p, q)
    if y == 0 or x == 0:
        v = strong_verdict(gamma, p, q)
        return Verdict(v.status, Kind.RESTRICTED_WEAK, v.citation)
    ok = y <= x
    if gamma < 1:
        ok = ok and y <= gamma and x >= 1 - gamma
    status = Status.BOUNDED if ok else Status.UNBOUNDED
    if gamma >= 1:
        key = "young" if gamma > 1 else "weak11"
    elif ok and y == gamma and x == gamma:
        key = "homtree"
    elif ok and y == gamma and x == 1 - gamma:
        key = "interp"
    else:
        key = "corollary"
    return Verdict(status, Kind.RESTRICTED_WEAK, CITE[key])


# ---------------------------------------------------------------------------
# counterexample constructors


def make_dirac(k):
    return RadialFunction.from_values(k, [1])


def make_ball_indicator(k, n):
    """f_n = chi_{B_n(o)}."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return RadialFunction.from_values(k, [1] * (n + 1))


def make_sphere_indicator(k, n):
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return RadialFunction.from_values(k, [0] * n + [1])


def make_geometric_profile(k, alpha, N):
    """k^(-alpha n) on B_N(o)."""
    alpha = to_mpf(as_fraction(alpha))
    return RadialFunction(k, tuple(LogScalar(k, -alpha * n) for n in range(N + 1)))


def make_lower_profile(k, n, gamma):
    """phi_n(x) = chi_{B_n}(x) k^((n - ||x||)(1 - gamma))."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    e = 1 - as_fraction(gamma)
    return RadialFunction(k, tuple(LogScalar(k, to_mpf(e * (n - m))) for m in range(n + 1)))


def _veca(k, N, shift):
    """k^(-n/2) (1+n)^shift for n <= N, continued by the matching tail."""
    if N < 0:
        raise ParameterError(f"N must be >= 0, got {N}")
    sh = to_mpf(shift)
    vals = tuple(
        LogScalar(k, -to_mpf(n) / 2) * LogScalar.from_integer(k, 1 + n) ** sh for n in range(N + 1)
    )
    return RadialFunction(k, vals, GeometricTail(Fraction(-1, 2), shift))


def make_veca_g(k, vp, N):
    """g(n) = k^(-n/2) (1+n)^(-beta), tabulated to N with an exact tail."""
    return _veca(k, N, -vp.beta)


def make_veca_m(k, vp, N):
    """m(n) = k^(-n/2) (1+n)^(1-beta)."""
    return _veca(k, N, 1 - vp.beta)
