"""Fractional maximal operators and radial convolutions on the tree.

``M^gamma f(x) = sup_r |B_r|^(-gamma) * sum_{B_r(x)} |f|``.

Two independent routes compute it:

* brute force over vertices of a truncated ball B_R(o), using only
  :func:`~treemax.geometry.distance` (the oracle), and
* a radial fast path that contracts sphere decompositions against the
  radial profile of ``f`` and never touches individual vertices.

Ball sums of rational functions are exact Fractions; only the factor
``|B_r|^(-gamma)`` is irrational, so every candidate value is one exact
logarithm away from its true value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DivergenceError, ParameterError, ResourceBudgetError, UnsupportedTailError
from .geometry import (
    DEFAULT_BUDGET,
    VertexAddress,
    _decomposition,
    ball_size,
    ball_vertices,
    distance,
    enumerate_ball,
    sphere_size,
)
from .lorentz import INF, FiniteFunction, RadialFunction, inv
from .numerics import LogScalar, as_fraction, ctx, ln_k, log_k, ls_sum, to_mpf


@lru_cache(maxsize=None)
def _log_ball(k, r):
    return log_k(k, ball_size(k, r))


def _check_gamma(gamma):
    gamma = as_fraction(gamma)
    if gamma == INF or gamma <= 0:
        raise ParameterError(f"gamma must be a positive real, got {gamma}")
    return gamma


@dataclass(frozen=True)
class MaximalParams:
    """gamma and the radius policy: ``r_max=None`` means the sup over all radii."""

    gamma: object
    r_max: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "gamma", _check_gamma(self.gamma))
        if self.r_max is not None and self.r_max < 0:
            raise ParameterError(f"r_max must be >= 0, got {self.r_max}")


@dataclass(frozen=True)
class RadialKernel:
    """``a_gamma(n) = k^(-gamma n)`` or, with ``radius=r``, ``a_{r,gamma} = |B_r|^(-gamma) 1[n <= r]``."""

    gamma: object
    radius: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "gamma", _check_gamma(self.gamma))
        if self.radius is not None and self.radius < 0:
            raise ParameterError(f"kernel radius must be >= 0, got {self.radius}")

    def value(self, k, n):
        g = to_mpf(self.gamma)
        if self.radius is None:
            return LogScalar(k, -g * n)
        if n > self.radius:
            return LogScalar.zero(k)
        return LogScalar(k, -g * _log_ball(k, self.radius))


# ---------------------------------------------------------------------------
# numeric plumbing: exact Fractions where possible, linear mpf otherwise


def _log_of(k, s):
    """Exponent of a positive int/Fraction/mpf sum, or None for zero."""
    if isinstance(s, (int, Fraction)):
        if s == 0:
            return None
        return log_k(k, s) if isinstance(s, int) else LogScalar.from_fraction(k, s).exponent
    if s == 0:
        return None
    return ctx.log(s) / ln_k(k)


def _finite_table(f):
    """vertex -> number (int, Fraction or linear mpf)."""
    if f.exact is not None:
        if all(v.denominator == 1 for v in f.exact.values()):
            return {x: int(v) for x, v in f.exact.items()}
        return dict(f.exact)
    return {x: v.to_mpf() for x, v in f.values.items()}


def _radial_table(f, upto):
    """Values at norms 0..upto as numbers; zero beyond the table unless a tail is present."""
    if f.exact is not None:
        ex = f.exact
        if all(v.denominator == 1 for v in ex):
            ex = [int(v) for v in ex]
        zero = 0
        return [ex[n] if n <= f.N else zero for n in range(upto + 1)]
    if f.tail is None:
        zero = ctx.mpf(0)
        return [f.values[n].to_mpf() if n <= f.N else zero for n in range(upto + 1)]
    return [f.value(n).to_mpf() for n in range(upto + 1)]


def _best(cands):
    """Max of (exponent, radius) candidates, ties to the smallest radius."""
    best_e, best_r = None, None
    for e, r in cands:
        if e is not None and (best_e is None or e > best_e):
            best_e, best_r = e, r
    return best_e, best_r


# ---------------------------------------------------------------------------
# vertex-level operators


def _sums_by_distance(table, x):
    buckets = {}
    for y, v in table.items():
        d = distance(x, y)
        buckets[d] = buckets.get(d, 0) + v
    return buckets


def ball_average(f, x, r, gamma):
    """|B_r|^(-gamma) * sum of f over B_r(x)."""
    if r < 0:
        raise ParameterError(f"radius must be >= 0, got {r}")
    gamma = _check_gamma(gamma)
    table = _finite_table(f)
    s = sum((v for y, v in table.items() if distance(x, y) <= r), 0)
    e = _log_of(f.k, s)
    if e is None:
        return LogScalar.zero(f.k)
    return LogScalar(f.k, e - to_mpf(gamma) * _log_ball(f.k, r))


def _centered_candidates(k, buckets, gamma, r_cap):
    g = to_mpf(gamma)
    running = 0
    out = []
    dmax = max(buckets, default=0)
    for r in range(0, min(r_cap, dmax) + 1 if r_cap is not None else dmax + 1):
        running = running + buckets.get(r, 0)
        e = _log_of(k, running)
        out.append((None if e is None else e - g * _log_ball(k, r), r))
    return out


def maximal_at(f, x, gamma, r_max=None):
    """Centered M^gamma f(x) for finite f, sup over radii ``r <= r_max`` (all if None).

    The sup over all radii is attained at a distance from x to the support:
    between two such distances the ball sum is constant and |B_r| grows.
    """
    value, _ = maximal_at_detail(f, x, gamma, r_max)
    return value


def maximal_at_detail(f, x, gamma, r_max=None):
    gamma = _check_gamma(gamma)
    buckets = _sums_by_distance(_finite_table(f), x)
    e, r = _best(_centered_candidates(f.k, buckets, gamma, r_max))
    return LogScalar(f.k, e), r


def maximal_bruteforce(f, gamma, R, budget=DEFAULT_BUDGET):
    """M^gamma f on B_R(o) with interior-safe radii ``r <= R - ||x||``.

    Every ball used lies inside B_R(o), so the truncated tree contains it
    completely.  Returns a FiniteFunction (zeros omitted).
    """
    gamma = _check_gamma(gamma)
    table = _finite_table(f)
    out = {}
    for x in enumerate_ball(f.k, R, budget):
        buckets = _sums_by_distance(table, x)
        e, _ = _best(_centered_candidates(f.k, buckets, gamma, R - x.norm))
        if e is not None:
            out[x] = LogScalar(f.k, e)
    return FiniteFunction(f.k, out, None)


@lru_cache(maxsize=8)
def _distance_matrix(k, R):
    verts = ball_vertices(k, R)
    n = len(verts)
    paths = np.full((n, max(R, 1)), -1, dtype=np.int16)
    for i, v in enumerate(verts):
        paths[i, : v.norm] = v.path
    norms = np.array([v.norm for v in verts], dtype=np.int32)
    eq = (paths[:, None, :] == paths[None, :, :]) & (paths[:, None, :] >= 0)
    prefix = np.cumprod(eq, axis=2).sum(axis=2)
    return norms[:, None] + norms[None, :] - 2 * prefix


def uncentered_bruteforce(f, gamma, R, budget=DEFAULT_BUDGET):
    """Uncentered M~^gamma f on B_R(o): sup over balls B_r(z) containing x with r <= R - ||z||.

    A float pass over the distance matrix shortlists the best (center,
    radius) pairs; the maximum is then taken again over exact exponents
    among every candidate within 1e-9 of the float maximum.
    """
    gamma = _check_gamma(gamma)
    k = f.k
    if ball_size(k, R) > budget:
        raise ResourceBudgetError(ball_size(k, R), budget)
    verts = ball_vertices(k, R, budget)
    n = len(verts)
    D = _distance_matrix(k, R)
    index = {v: i for i, v in enumerate(verts)}
    table = _finite_table(f)
    g = to_mpf(gamma)
    # exact exponents per (center, radius) and a float copy for the search
    exact = []
    fvals = np.full((n, R + 2), -np.inf)
    supp = [(index[y], v) for y, v in table.items() if y in index]
    outside = [y for y in table if y not in index]
    for zi, z in enumerate(verts):
        cap = R - z.norm
        buckets = {}
        for yi, v in supp:
            d = int(D[zi, yi])
            if d <= cap:
                buckets[d] = buckets.get(d, 0) + v
        for y in outside:
            d = distance(z, y)
            if d <= cap:
                buckets[d] = buckets.get(d, 0) + table[y]
        row = []
        running = 0
        for r in range(cap + 1):
            running = running + buckets.get(r, 0)
            e = _log_of(k, running)
            e = None if e is None else e - g * _log_ball(k, r)
            row.append(e)
            if e is not None:
                fvals[zi, r] = float(e)
        exact.append(row)
    # suffix max over radius: sm[z, d] = max_{d <= r <= cap(z)} value(z, r)
    sm = np.maximum.accumulate(fvals[:, ::-1], axis=1)[:, ::-1]
    Dc = np.minimum(D, R + 1)
    best = sm[np.arange(n)[None, :], Dc]  # best[x, z]
    top = best.max(axis=1)
    out = {}
    for xi, x in enumerate(verts):
        if not np.isfinite(top[xi]):
            continue
        zs = np.nonzero(best[xi] >= top[xi] - 1e-9)[0]
        cands = []
        for zi in zs:
            for r in range(int(D[xi, zi]), len(exact[zi])):
                if exact[zi][r] is not None:
                    cands.append(exact[zi][r])
        out[x] = LogScalar(k, max(cands))
    return FiniteFunction(k, out, None)


def convolve(f, kern, x):
    """(f * kern)(x) = sum_y f(y) kern(d(x, y)) for finite f and a radial kernel."""
    terms = [v * kern.value(f.k, distance(x, y)) for y, v in f.values.items()]
    if not terms:
        return LogScalar.zero(f.k)
    return ls_sum(terms)


# ---------------------------------------------------------------------------
# radial fast path


def sphere_sums(f, m, n_max):
    """``[sum of f over S_n(x) for n in 0..n_max]`` for any x with ||x|| = m."""
    table = _radial_table(f, m + n_max)
    k = f.k
    out = []
    for n in range(n_max + 1):
        s = 0
        for norm, count in _decomposition(k, m, n):
            v = table[norm]
            if v:
                s = s + count * v
        out.append(s)
    return out


def _radial_support(f):
    if f.has_tail:
        raise UnsupportedTailError(
            "the maximal fast path needs finite support; truncate the function first"
        )
    return f.support_radius


def maximal_radial_detail(f, gamma, m, r_max=None):
    """(M^gamma f at norm m, smallest maximizing radius) for finitely supported radial f.

    Once B_r(x) covers the support the ball sum is frozen while |B_r| keeps
    growing, so radii beyond ``m + N_f`` never win.
    """
    gamma = _check_gamma(gamma)
    if m < 0:
        raise ParameterError(f"center norm must be >= 0, got {m}")
    Nf = _radial_support(f)
    k = f.k
    if Nf < 0:
        return LogScalar.zero(k), 0
    cap = m + Nf if r_max is None else min(r_max, m + Nf)
    g = to_mpf(gamma)
    sums = sphere_sums(f, m, cap)
    running = 0
    cands = []
    for r, s in enumerate(sums):
        running = running + s
        e = _log_of(k, running)
        cands.append((None if e is None else e - g * _log_ball(k, r), r))
    e, r = _best(cands)
    return LogScalar(k, e), r


def maximal_radial(f, gamma, m, r_max=None):
    """Exact M^gamma f at any vertex of norm m (radius cap ``r_max`` optional)."""
    return maximal_radial_detail(f, gamma, m, r_max)[0]


def maximal_radial_profile(f, gamma, m_max, r_max=None):
    """M^gamma f as a radial function on B_{m_max}(o)."""
    vals = [maximal_radial(f, gamma, m, r_max) for m in range(m_max + 1)]
    return RadialFunction(f.k, tuple(vals), None, None)


class FarField:
    """M^gamma f at norms m >= N_f for radial f supported in B_{N_f}(o).

    With z the ancestor of x at norm N_f every support point is reached
    through z, so ``sum_{B_r(x)} f = Phi(r - (m - N_f))`` where ``Phi`` is
    the ball-sum profile around z.  Hence
    ``M f(m) = max_rho Phi(rho) |B_{m - N_f + rho}|^(-gamma)``, rho in [0, 2 N_f].
    """

    def __init__(self, f, gamma):
        self.k = f.k
        self.gamma = _check_gamma(gamma)
        self.anchor = _radial_support(f)
        if self.anchor < 0:
            raise ParameterError("the far field of the zero function is zero")
        running = 0
        self.phi = []
        for s in sphere_sums(f, self.anchor, 2 * self.anchor):
            running = running + s
            self.phi.append(running)
        self.log_phi = [_log_of(self.k, s) for s in self.phi]

    def exponent(self, m):
        if m < self.anchor:
            raise ParameterError(f"far-field formula needs m >= {self.anchor}, got {m}")
        g = to_mpf(self.gamma)
        shift = m - self.anchor
        return max(
            lp - g * _log_ball(self.k, shift + rho)
            for rho, lp in enumerate(self.log_phi)
            if lp is not None
        )

    def value(self, m):
        return LogScalar(self.k, self.exponent(m))


def _maximal_exponents(f, gamma, m_hi, far=None):
    """Exponents of M^gamma f at norms 0..m_hi (fast path below N_f, far field above)."""
    out = []
    for m in range(m_hi + 1):
        if far is not None and m >= far.anchor:
            out.append(far.exponent(m))
        else:
            out.append(maximal_radial(f, gamma, m).exponent)
    return out


def maximal_weak_norm(f, gamma, q):
    """Exact ||M^gamma f||_{q,inf} for finitely supported radial f.

    Beyond N_f the profile is strictly decreasing, so after the head values
    the level counts are full balls and the tail sup reduces to
    ``sup_m Phi(rho) |B_{m+delta}|^(-gamma) |B_m|^(1/q)``, monotone in m
    for every shift ``delta = rho - N_f`` (or eventually decreasing, which
    an explicit envelope detects).
    """
    gamma = _check_gamma(gamma)
    q = as_fraction(q)
    k = f.k
    Nf = _radial_support(f)
    if Nf < 0:
        return LogScalar.zero(k)
    far = FarField(f, gamma)
    if q == INF:
        return LogScalar(k, max(_maximal_exponents(f, gamma, Nf, far)))
    iq = inv(q)
    if iq > gamma:
        raise DivergenceError(
            f"M^gamma f decays like k^(-gamma n) and is not in L^({q},inf) since 1/q > gamma",
            quantity="weak_norm",
        )
    exps = _maximal_exponents(f, gamma, Nf, far)
    m_max = Nf
    while True:
        nxt = far.exponent(m_max + 1)
        if nxt < min(exps):
            break
        exps.append(nxt)
        m_max += 1
    # head: exact distribution of the values at norms <= m_max
    levels = {}
    for m, e in enumerate(exps):
        levels[e] = levels.get(e, 0) + sphere_size(k, m)
    iq_m = to_mpf(iq)
    g = to_mpf(gamma)
    best = None
    c = 0
    for e in sorted(levels, reverse=True):
        c += levels[e]
        cand = e + iq_m * log_k(k, c)
        best = cand if best is None or cand > best else best
    # tail: norms > m_max, counts |B_m|
    m0 = m_max + 1
    for rho, lp in enumerate(far.log_phi):
        if lp is None:
            continue
        delta = rho - Nf

        def G(m):
            return -g * _log_ball(k, m + delta) + iq_m * _log_ball(k, m)

        if delta <= 0:
            sup = G(m0)
        elif iq == gamma:
            sup = -g * delta  # increasing in m towards k^(-gamma delta)
        else:
            sup = G(m0)
            m = m0
            while -g * delta + (iq_m - g) * _log_ball(k, m) > sup:
                m += 1
                sup = max(sup, G(m))
        cand = lp + sup
        best = cand if cand > best else best
    return LogScalar(k, best)


def maximal_weak_norm_bounds(f, gamma, q, depth=40):
    """Certified enclosure ``(lower, upper)`` of ||M^gamma f||_{q,inf} for finite f.

    Vertices beyond the support radius R fall into classes by their
    ancestor z at norm R; inside a class the value at depth j below z is
    ``h_z(j) = max_rho Phi_z(rho) |B_{j+rho}|^(-gamma)`` and there are k^j
    such vertices.  Values on B_{R-1}(o) and at depths below ``depth`` are
    computed exactly.  Deeper values obey ``h_z(j) <= D_z k^(-gamma j)``
    because ``|B_n| k^(-n)`` increases with n, which bounds the remaining
    level counts by ``K lambda^(-1/gamma)``.
    """
    gamma = _check_gamma(gamma)
    q = as_fraction(q)
    k = f.k
    R = f.support_radius
    if R <= 0:
        rf = RadialFunction(k, tuple(f.value(VertexAddress((), k)) for _ in range(max(R, 0) + 1)))
        if R == 0 and f.exact is not None:
            rf = RadialFunction.from_values(k, list(f.exact.values()))
        v = maximal_weak_norm(rf, gamma, q)
        return v, v
    iq = inv(q)
    if q != INF and iq > gamma:
        raise DivergenceError("1/q > gamma: M^gamma f is not in the weak space", quantity="weak_norm")
    g = to_mpf(gamma)
    table = _finite_table(f)
    levels = {}
    for x in ball_vertices(k, R - 1):
        e = maximal_at(f, x, gamma).exponent
        levels[e] = levels.get(e, 0) + 1
    profiles = {}
    for z in ball_vertices(k, R):
        if z.norm == R:
            buckets = _sums_by_distance(table, z)
            running, phi = 0, []
            for rho in range(2 * R + 1):
                running = running + buckets.get(rho, 0)
                phi.append(running)
            profiles[tuple(phi)] = profiles.get(tuple(phi), 0) + 1
    # |B_n| >= c_J k^n for n >= J
    log_cJ = _log_ball(k, depth) - depth
    tail_top = None
    K_terms = []
    for phi, mult in profiles.items():
        lphi = [(rho, lp) for rho, lp in enumerate(_log_of(k, s) for s in phi) if lp is not None]
        for j in range(depth):
            e = max(lp - g * _log_ball(k, j + rho) for rho, lp in lphi)
            levels[e] = levels.get(e, 0) + mult * k**j
        logD = max(lp - g * rho for rho, lp in lphi) - g * log_cJ
        top = logD - g * depth
        tail_top = top if tail_top is None or top > tail_top else tail_top
        K_terms.append(LogScalar(k, logD / g) * mult)
    if q == INF:
        v = LogScalar(k, max(levels))
        return v, v
    iq_m = to_mpf(iq)
    lower = None
    cum = []
    c = 0
    for e in sorted(levels, reverse=True):
        c += levels[e]
        cum.append((e, c))
        cand = e + iq_m * log_k(k, c)
        lower = cand if lower is None or cand > lower else lower
    # upper: sup over breakpoints of lambda (d_exact(lambda) + T(lambda))^(1/q)
    K = (ls_sum(K_terms) * Fraction(k, k - 1)).exponent
    inv_g = 1 / g
    breaks = [e for e, _ in cum]
    breaks.append(tail_top)
    upper = None
    for lam in breaks:
        d_exact = 0
        for e, cnt in cum:
            if e >= lam:
                d_exact = cnt
            else:
                break
        count = LogScalar.from_integer(k, d_exact)
        if lam <= tail_top:
            count = count + LogScalar(k, K - inv_g * lam)
        cand = lam + iq_m * count.exponent
        upper = cand if upper is None or cand > upper else upper
    upper = max(upper, lower)
    return LogScalar(k, lower), LogScalar(k, upper)


def convolve_radial(f, kern, m):
    """(f * kern)(x) at norm m via sphere sums: ``sum_n kern(n) * sum_{S_n(x)} f``.

    A geometric tail on ``f`` is summed with a certified remainder; the
    combination must decay, otherwise DivergenceError.
    """
    k = f.k
    if kern.radius is not None:
        total = sum(sphere_sums(f, m, kern.radius), 0)
        e = _log_of(k, total)
        if e is None:
            return LogScalar.zero(k)
        return LogScalar(k, e - to_mpf(kern.gamma) * _log_ball(k, kern.radius))
    if not f.has_tail:
        Nf = f.support_radius
        if Nf < 0:
            return LogScalar.zero(k)
        sums = sphere_sums(f, m, m + Nf)
        return _weighted(k, sums, kern)
    return _convolve_tail(f, kern, m)


def _weighted(k, sums, kern):
    g = to_mpf(kern.gamma)
    lnk = ln_k(k)
    total = ctx.fsum(to_mpf(s) * ctx.exp(-g * n * lnk) for n, s in enumerate(sums))
    return LogScalar.from_mpf(k, total)


def _convolve_tail(f, kern, m):
    k = f.k
    N = f.N
    lr = f.tail.log_ratio
    d = f.tail.degree
    rate = 1 - kern.gamma + lr
    if rate > 0 or (rate == 0 and d >= -1):
        raise DivergenceError(
            f"kernel times tail is not summable (rate {rate}, degree {d})", quantity="convolution"
        )
    g = to_mpf(kern.gamma)
    lnk = ln_k(k)
    n0 = m + N + 1  # from here on every norm in S_n(x) lies in the tail
    sums = sphere_sums(f, m, n0)
    partial = ctx.fsum(to_mpf(s) * ctx.exp(-g * n * lnk) for n, s in enumerate(sums))
    # tail coefficient: f(t) = C k^(lr t) (1+t)^d for t >= N
    logC = f.values[N].exponent - to_mpf(lr) * N - to_mpf(d) * ctx.log(1 + N) / lnk
    if rate == 0:
        # each j-branch contributes const_j * sum_{n > n0} (1 + m + n - 2j)^d
        rem = ctx.mpf(0)
        for j, norm, count in _steps(k, m, n0):
            # term at n: count_j(n) k^(-gamma n) C k^(lr norm) (1+norm)^d, with norm = m+n-2j
            base = ctx.exp((ctx.log(count) / lnk - g * n0 + logC + to_mpf(lr) * norm) * lnk)
            rem += base * ctx.zeta(-to_mpf(d), 2 + norm)
        return LogScalar.from_mpf(k, partial + rem)
    tol = ctx.mpf(10) ** (-(ctx.dps - 5))
    n = n0
    dp = max(to_mpf(d), 0)
    while True:
        n += 1
        s = sphere_sums_at(f, m, n)
        t = s * ctx.exp(-g * n * lnk)
        partial += t
        ratio = ctx.exp(to_mpf(rate) * lnk) * (ctx.mpf(2 + n - m) / (1 + n - m)) ** dp
        if ratio < 1 and t * ratio / (1 - ratio) <= tol * partial:
            break
        if n - n0 > 100000:
            raise DivergenceError("could not certify convergence of the convolution tail")
    return LogScalar.from_mpf(k, partial)


def _steps(k, m, n):
    for norm, count in _decomposition(k, m, n):
        yield (m + n - norm) // 2, norm, count


def sphere_sums_at(f, m, n):
    """Sum of f over S_n(x), ||x|| = m, as a linear mpf (tail-aware)."""
    return ctx.fsum(count * f.value(norm).to_mpf() for norm, count in _decomposition(f.k, m, n))
