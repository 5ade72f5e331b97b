"""Functions on the tree and their Lebesgue, Lorentz and weak norms.

Only ``|f|`` is stored.  Values are :class:`LogScalar`; functions built from
ints, floats or Fractions also keep their exact rational values, which the
maximal-operator kernels use to form exact integer ball sums.

The Lorentz functional is evaluated in closed form on the step
distribution ``d(lambda) = c_j`` for ``lambda`` in ``[v_{j+1}, v_j)``::

    ||f||_{p,s}^s = (p/s) * sum_j c_j^(s/p) * (v_j^s - v_{j+1}^s)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DivergenceError, ParameterError, UnsupportedTailError
from .geometry import VertexAddress, sphere_size
from .numerics import LogScalar, as_fraction, ctx, ln_k, ls_max, ls_sum, to_mpf

INF = math.inf


@dataclass(frozen=True)
class LorentzIndex:
    """Exponent pair (p, s) of L^{p,s}; ``s = inf`` is the weak space."""

    p: object
    s: object = None

    def __post_init__(self):
        p = as_fraction(self.p)
        s = p if self.s is None else as_fraction(self.s)
        if p != INF and p < 1 or s != INF and s < 1:
            raise ParameterError(f"Lorentz exponents must lie in [1, inf], got p={p}, s={s}")
        if p == INF and s != INF:
            raise ParameterError("p = inf is only allowed together with s = inf")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "s", s)

    @property
    def conjugate(self):
        """p' with 1/p + 1/p' = 1."""
        if self.p == INF:
            return Fraction(1)
        if self.p == 1:
            return INF
        return self.p / (self.p - 1)


def inv(x):
    """1/x for a Fraction or inf (1/inf = 0)."""
    return Fraction(0) if x == INF else 1 / Fraction(x)


@dataclass(frozen=True)
class GeometricTail:
    """Tail ``f(n) = f(N) * k**(log_ratio*(n-N)) * ((1+n)/(1+N))**degree`` for n > N.

    ``log_ratio`` is the base-k logarithm of the per-step decay ratio.
    """

    log_ratio: object
    degree: object = 0

    def __post_init__(self):
        object.__setattr__(self, "log_ratio", as_fraction(self.log_ratio))
        object.__setattr__(self, "degree", as_fraction(self.degree))


def _ls(k, v):
    return LogScalar.from_value(k, v)


def _exact(v):
    if isinstance(v, bool):
        raise ParameterError("boolean is not a function value")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, float) and math.isfinite(v):
        return Fraction(v)
    return None


@dataclass(frozen=True)
class RadialFunction:
    """Nonnegative radial function given by its values on the spheres S_n(o)."""

    k: int
    values: tuple
    tail: GeometricTail | None = None
    exact: tuple | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_values(cls, k, values, tail=None):
        values = list(values)
        if not values:
            raise ParameterError("a radial function needs at least the value at norm 0")
        exact = [_exact(v) for v in values]
        if any(e is not None and e < 0 for e in exact):
            raise ParameterError("function values must be nonnegative")
        logs = tuple(_ls(k, v) for v in values)
        if tail is not None and logs[-1].is_zero:
            raise ParameterError("a tail descriptor must continue a nonzero last value")
        ex = None if tail is not None or any(e is None for e in exact) else tuple(exact)
        return cls(k, logs, tail, ex)

    @property
    def N(self):
        return len(self.values) - 1

    @property
    def has_tail(self):
        return self.tail is not None

    @property
    def support_radius(self):
        """Largest norm carrying a nonzero value, -1 for the zero function."""
        if self.tail is not None:
            raise UnsupportedTailError("a function with a tail has infinite support")
        for n in range(self.N, -1, -1):
            if not self.values[n].is_zero:
                return n
        return -1

    def value(self, n):
        if n < 0:
            raise ParameterError(f"norm must be >= 0, got {n}")
        if n <= self.N:
            return self.values[n]
        if self.tail is None:
            return LogScalar.zero(self.k)
        N = self.N
        e = self.values[N].exponent + to_mpf(self.tail.log_ratio) * (n - N)
        if self.tail.degree:
            e += to_mpf(self.tail.degree) * ctx.log(ctx.mpf(1 + n) / (1 + N)) / ln_k(self.k)
        return LogScalar(self.k, e)

    def truncated(self, N):
        """Restriction to B_N(o), dropping any tail."""
        vals = [self.value(n) for n in range(N + 1)]
        ex = None
        if self.exact is not None:
            ex = tuple(self.exact[n] if n <= self.N else Fraction(0) for n in range(N + 1))
        return RadialFunction(self.k, tuple(vals), None, ex)

    def scaled(self, c):
        c_exact = _exact(c)
        c = _ls(self.k, c)
        ex = None
        if self.exact is not None and c_exact is not None:
            ex = tuple(c_exact * v for v in self.exact)
        return RadialFunction(self.k, tuple(c * v for v in self.values), self.tail, ex)

    def to_finite(self):
        from .geometry import ball_vertices

        R = self.support_radius
        if R < 0:
            return FiniteFunction(self.k, {}, {})
        vals = {}
        exact = {} if self.exact is not None else None
        for x in ball_vertices(self.k, R):
            v = self.values[x.norm]
            if not v.is_zero:
                vals[x] = v
                if exact is not None:
                    exact[x] = self.exact[x.norm]
        return FiniteFunction(self.k, vals, exact)


@dataclass(frozen=True)
class FiniteFunction:
    """Finitely supported nonnegative function; zero values are never stored."""

    k: int
    values: dict
    exact: dict | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_mapping(cls, k, mapping):
        vals = {}
        exact = {}
        for x, v in mapping.items():
            if not isinstance(x, VertexAddress):
                x = VertexAddress(tuple(x), k)
            if x.k != k:
                raise ParameterError(f"vertex {x} belongs to a tree with k={x.k}, not {k}")
            e = _exact(v)
            if e is not None and e < 0:
                raise ParameterError("function values must be nonnegative")
            lv = _ls(k, v)
            if lv.is_zero:
                continue
            vals[x] = lv
            if exact is not None:
                if e is None:
                    exact = None
                else:
                    exact[x] = e
        return cls(k, vals, exact)

    @classmethod
    def indicator(cls, k, vertices):
        return cls.from_mapping(k, {x: 1 for x in vertices})

    @property
    def support(self):
        return sorted(self.values)

    @property
    def support_radius(self):
        return max((x.norm for x in self.values), default=-1)

    def value(self, x):
        return self.values.get(x, LogScalar.zero(self.k))

    def scaled(self, c):
        c_exact = _exact(c)
        c = _ls(self.k, c)
        if c.is_zero:
            return FiniteFunction(self.k, {}, {})
        ex = None
        if self.exact is not None and c_exact is not None:
            ex = {x: c_exact * v for x, v in self.exact.items()}
        return FiniteFunction(self.k, {x: c * v for x, v in self.values.items()}, ex)


@dataclass(frozen=True)
class DistributionFunction:
    """Step function ``d(lambda) = #{|f| > lambda}``.

    ``counts[j] = #{x : |f(x)| >= breakpoints[j]}``, breakpoints decreasing.
    """

    k: int
    breakpoints: tuple
    counts: tuple

    def __call__(self, lam):
        lam = _ls(self.k, lam)
        c = 0
        for v, cj in zip(self.breakpoints, self.counts):
            if v > lam:
                c = cj
            else:
                break
        return c


def _grouped_levels(pairs, k):
    """Sum multiplicities of equal values, return (value, multiplicity) decreasing."""
    levels = {}
    for key, mult in pairs:
        levels[key] = levels.get(key, 0) + mult
    out = []
    for key in sorted(levels, reverse=True):
        value = _ls(k, key) if not isinstance(key, LogScalar) else key
        out.append((value, levels[key]))
    return out


def _levels(f):
    if isinstance(f, RadialFunction):
        if f.has_tail:
            raise UnsupportedTailError("distribution needs finite support; truncate the tail first")
        if f.exact is not None:
            pairs = ((f.exact[n], sphere_size(f.k, n)) for n in range(f.N + 1) if f.exact[n] > 0)
        else:
            pairs = ((f.values[n], sphere_size(f.k, n)) for n in range(f.N + 1) if not f.values[n].is_zero)
        return _grouped_levels(pairs, f.k)
    if isinstance(f, FiniteFunction):
        if f.exact is not None:
            pairs = ((v, 1) for v in f.exact.values())
        else:
            pairs = ((v, 1) for v in f.values.values())
        return _grouped_levels(pairs, f.k)
    raise ParameterError(f"unsupported function type {type(f).__name__}")


def distribution(f):
    levels = _levels(f)
    bps, counts = [], []
    c = 0
    for v, mult in levels:
        c += mult
        bps.append(v)
        counts.append(c)
    return DistributionFunction(f.k, tuple(bps), tuple(counts))


def _norm_index(idx):
    return idx if isinstance(idx, LorentzIndex) else LorentzIndex(*idx)


def lorentz_norm(f, idx):
    """||f||_{p,s}; ``s = inf`` gives the weak norm and ``p = inf`` the sup norm."""
    idx = _norm_index(idx)
    p, s = idx.p, idx.s
    if p == INF:
        return lebesgue_norm(f, INF)
    if s == INF:
        return weak_norm(f, p)
    d = distribution(f)
    k = f.k
    if not d.breakpoints:
        return LogScalar.zero(k)
    terms = []
    nxt = d.breakpoints[1:] + (LogScalar.zero(k),)
    for v, v_next, c in zip(d.breakpoints, nxt, d.counts):
        terms.append(LogScalar.from_integer(k, c) ** (s / p) * (v**s - v_next**s))
    return (_ls(k, p / s) * ls_sum(terms)) ** (1 / s)


def weak_norm(f, p):
    """sup_lambda lambda * d(lambda)^(1/p), attained at a jump of d."""
    p = as_fraction(p)
    if p == INF:
        return lebesgue_norm(f, INF)
    if p < 1:
        raise ParameterError(f"weak norm needs p >= 1, got {p}")
    d = distribution(f)
    if not d.breakpoints:
        return LogScalar.zero(f.k)
    return ls_max(v * LogScalar.from_integer(f.k, c) ** (1 / p) for v, c in zip(d.breakpoints, d.counts))


def lebesgue_norm(f, p):
    p = as_fraction(p)
    if p != INF and p < 1:
        raise ParameterError(f"Lebesgue exponent must be >= 1, got {p}")
    levels = _levels(f)
    k = f.k
    if not levels:
        return LogScalar.zero(k)
    if p == INF:
        return levels[0][0]
    return ls_sum(LogScalar.from_integer(k, m) * v**p for v, m in levels) ** (1 / p)


# ---------------------------------------------------------------------------
# radial surrogate norm


@dataclass(frozen=True)
class TailCertificate:
    """Head and tail of ``sum_n g(n)**s`` with an elementary enclosure of the tail.

    ``tail`` is the tail value used by :func:`pytlik_surrogate`;
    ``tail_lower <= tail <= tail_upper`` is proved by integral or geometric
    comparison, independently of how ``tail`` was evaluated.
    """

    head: LogScalar
    tail: LogScalar
    tail_lower: LogScalar
    tail_upper: LogScalar

    @property
    def total(self):
        return self.head + self.tail

    @property
    def relative_width(self):
        """(upper - lower) / total: the certified relative uncertainty of the s-th power."""
        return float((self.tail_upper - self.tail_lower) / self.total)


def _g_exponent(f, n, p):
    return f.values[n].exponent + n * to_mpf(inv(p))


def _tail_sum(k, g_last, N, rate, degree):
    """Tail ``sum_{n>N} g_last * k**(rate (n-N)) * ((1+n)/(1+N))**degree`` with an enclosure.

    ``rate`` and ``degree`` are Fractions; returns (value, lower, upper) as
    LogScalars, or raises DivergenceError.
    """
    if rate > 0 or (rate == 0 and degree >= -1):
        raise DivergenceError(
            f"tail sum diverges (log-ratio {rate}, polynomial degree {degree})", quantity="tail"
        )
    lnk = ln_k(k)
    b = to_mpf(degree)
    if rate == 0:
        a = -b
        exact = ctx.zeta(a, N + 2) * ctx.mpf(1 + N) ** a
        lower = ctx.mpf(N + 2) ** (1 - a) / (a - 1) * ctx.mpf(1 + N) ** a
        upper = ctx.mpf(N + 1) ** (1 - a) / (a - 1) * ctx.mpf(1 + N) ** a
        return tuple(g_last * LogScalar.from_mpf(k, x) for x in (exact, lower, upper))
    r = to_mpf(rate) * lnk
    partial = ctx.mpf(0)
    tol = ctx.mpf(10) ** (-(ctx.dps - 5))
    n = N + 1
    for _ in range(200000):
        t = ctx.exp(r * (n - N) + b * ctx.log(ctx.mpf(1 + n) / (1 + N)))
        partial += t
        ratio = ctx.exp(r) * max(ctx.mpf(1), (ctx.mpf(2 + n) / (1 + n)) ** b)
        if ratio < 1:
            bound = t * ratio / (1 - ratio)
            if bound <= tol * partial:
                break
        n += 1
    else:
        bound = ctx.inf
    lower = g_last * LogScalar.from_mpf(k, partial)
    upper = g_last * LogScalar.from_mpf(k, partial + bound) if bound != ctx.inf else None
    if upper is None:
        raise DivergenceError("could not certify tail convergence", quantity="tail")
    return lower, lower, upper


def pytlik_certificate(f, idx):
    """Head/tail split of ``||g||_s^s`` where ``g(n) = f(n) k^(n/p)``; s < inf only."""
    idx = _norm_index(idx)
    p, s = idx.p, idx.s
    if p == INF or s == INF:
        raise ParameterError("the certificate is defined for finite p and s")
    k = f.k
    head_terms = [LogScalar(k, _g_exponent(f, n, p) * to_mpf(s)) if not f.values[n].is_zero
                  else LogScalar.zero(k) for n in range(f.N + 1)]
    head = ls_sum(head_terms)
    zero = LogScalar.zero(k)
    if f.tail is None:
        return TailCertificate(head, zero, zero, zero)
    g_last_s = head_terms[-1]
    rate = (f.tail.log_ratio + inv(p)) * s
    degree = f.tail.degree * s
    tail, lo, hi = _tail_sum(k, g_last_s, f.N, rate, degree)
    return TailCertificate(head, tail, lo, hi)


def pytlik_surrogate(f, idx):
    """||g||_{l^s(N)} with ``g(n) = f(n) k^(n/p)``, the radial stand-in for ||f||_{p,s}."""
    idx = _norm_index(idx)
    p, s = idx.p, idx.s
    if not isinstance(f, RadialFunction):
        raise ParameterError("the surrogate norm is defined for radial functions")
    if p == INF:
        raise ParameterError("the surrogate norm needs finite p")
    k = f.k
    if s != INF:
        return pytlik_certificate(f, idx).total ** (1 / s)
    head = ls_max(
        LogScalar(k, _g_exponent(f, n, p)) if not f.values[n].is_zero else LogScalar.zero(k)
        for n in range(f.N + 1)
    )
    if f.tail is None:
        return head
    rate = f.tail.log_ratio + inv(p)
    d = f.tail.degree
    if rate > 0 or (rate == 0 and d > 0):
        raise DivergenceError(
            f"surrogate sequence is unbounded (log-ratio {rate}, degree {d})", quantity="sup"
        )
    if rate == 0 or d <= 0:
        return head
    # g(N + x) ~ k^(rate x) (1+N+x)^d peaks at 1 + N + x = -d / (rate ln k)
    peak = -to_mpf(d) / (to_mpf(rate) * ln_k(k)) - 1
    N = f.N
    if peak <= N:
        return head
    g_last = LogScalar(k, _g_exponent(f, N, p))
    cands = [head]
    for n in {int(ctx.floor(peak)), int(ctx.ceil(peak))}:
        if n > N:
            e = to_mpf(rate) * (n - N) + to_mpf(d) * ctx.log(ctx.mpf(1 + n) / (1 + N)) / ln_k(k)
            cands.append(g_last * LogScalar(k, e))
    return ls_max(cands)
