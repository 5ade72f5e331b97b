"""Log-domain scalars for quantities with exponential dynamic range.

Ball sizes on a k-homogeneous tree grow like ``k**r``, so products such as
``|B_r|**(-gamma) * sum`` leave double precision after a few hundred steps.
A :class:`LogScalar` stores a nonnegative real as its base-``k`` logarithm in
a private mpmath context (40 significant digits unless
``TREEMAX_PRECISION_DIGITS`` says otherwise).  Exact powers of ``k`` get exact
exponents, so values like ``k**(n/p)`` with rational ``n/p`` compare exactly.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache

from mpmath.ctx_mp import MPContext

from .errors import DomainError, ParameterError

DEFAULT_DIGITS = 40

ctx = MPContext()
ctx.dps = int(os.environ.get("TREEMAX_PRECISION_DIGITS", DEFAULT_DIGITS))


def set_precision(digits):
    """Set the working precision in significant decimal digits."""
    digits = int(digits)
    if digits < 20:
        raise ParameterError(f"precision must be at least 20 digits, got {digits}")
    ctx.dps = digits
    _ln.cache_clear()
    _log_int.cache_clear()


def get_precision():
    return ctx.dps


def comparison_slack():
    """Absolute exponent slack below which two values count as equal.

    Sits eight digits above the working precision, i.e. far below every
    tolerance used by the checks in this package.
    """
    return ctx.mpf(10) ** (8 - ctx.dps)


def to_mpf(x):
    """Convert int, Fraction, float or mpf to an mpf of the private context."""
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, float) and math.isinf(x):
        return ctx.inf if x > 0 else -ctx.inf
    return ctx.convert(x)


def as_fraction(x):
    """Exact rational for parameters given as int, Fraction, float or numeric string.

    Floats are snapped to the nearest fraction with denominator below 10**9 so
    that ``0.75`` and ``Fraction(3, 4)`` describe the same parameter.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "∞"):
            return math.inf
        return as_fraction(Fraction(x.strip()) if "/" in x else float(x))
    x = float(x)
    if math.isinf(x):
        return math.inf
    return Fraction(x).limit_denominator(10**9)


@lru_cache(maxsize=None)
def _ln(k):
    return ctx.log(k)


def integer_log(k, v):
    """Return ``e`` with ``k**e == v`` if ``v`` is an exact power of ``k``, else None."""
    if v < 1:
        return None
    e = 0
    while v % k == 0:
        v //= k
        e += 1
    return e if v == 1 else None


@lru_cache(maxsize=4096)
def _log_int(k, v):
    e = integer_log(k, v)
    if e is not None:
        return ctx.mpf(e)
    return ctx.log(v) / _ln(k)


def _check_base(k):
    if not isinstance(k, int) or k < 2:
        raise ParameterError(f"base must be an integer >= 2, got {k!r}")


class LogScalar:
    """Nonnegative real ``k**exponent``; zero is stored with ``exponent=None``."""

    __slots__ = ("k", "exponent")

    def __init__(self, k, exponent=None):
        _check_base(k)
        self.k = k
        self.exponent = None if exponent is None else to_mpf(exponent)

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, k):
        return cls(k, None)

    @classmethod
    def one(cls, k):
        return cls(k, 0)

    @classmethod
    def from_exponent(cls, k, e):
        return cls(k, e)

    @classmethod
    def from_integer(cls, k, v):
        if v < 0:
            raise DomainError(f"LogScalar holds nonnegative values, got {v}")
        if v == 0:
            return cls(k, None)
        return cls(k, _log_int(k, int(v)))

    @classmethod
    def from_fraction(cls, k, x):
        x = Fraction(x)
        if x < 0:
            raise DomainError(f"LogScalar holds nonnegative values, got {x}")
        if x == 0:
            return cls(k, None)
        e = _log_int(k, x.numerator)
        if x.denominator != 1:
            e = e - _log_int(k, x.denominator)
        return cls(k, e)

    @classmethod
    def from_mpf(cls, k, x):
        x = to_mpf(x)
        if x < 0:
            raise DomainError(f"LogScalar holds nonnegative values, got {x}")
        if x == 0:
            return cls(k, None)
        return cls(k, ctx.log(x) / _ln(k))

    @classmethod
    def from_value(cls, k, v):
        """Coerce int, Fraction, float, mpf or LogScalar to a LogScalar of base ``k``."""
        if isinstance(v, LogScalar):
            if v.k != k:
                raise ParameterError(f"base mismatch: {v.k} != {k}")
            return v
        if isinstance(v, int):
            return cls.from_integer(k, v)
        if isinstance(v, (Fraction, float)):
            if isinstance(v, float) and not math.isfinite(v):
                raise DomainError(f"cannot store non-finite value {v}")
            return cls.from_fraction(k, Fraction(v))
        return cls.from_mpf(k, v)

    # inspection ----------------------------------------------------------

    @property
    def is_zero(self):
        return self.exponent is None

    def to_mpf(self):
        if self.exponent is None:
            return ctx.mpf(0)
        return ctx.exp(self.exponent * _ln(self.k))

    def __float__(self):
        if self.exponent is None:
            return 0.0
        return float(self.to_mpf())

    def log10(self):
        if self.exponent is None:
            return -ctx.inf
        return self.exponent * _ln(self.k) / ctx.log(10)

    def to_sci(self, digits=15):
        """Decimal scientific notation with ``digits`` significant digits.

        Works far outside the double range, e.g. ``2**-5000``.
        """
        if self.exponent is None:
            return "0." + "0" * (digits - 1) + "e+00"
        s = ctx.nstr(self.to_mpf(), digits, min_fixed=1, max_fixed=0, strip_zeros=False)
        mant, _, exp = s.partition("e")
        if "." not in mant:
            mant += "."
        mant = mant + "0" * (digits + 1 - len(mant))
        exp = int(exp) if exp else 0
        return f"{mant}e{exp:+03d}"

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LogScalar):
            if other.k != self.k:
                raise ParameterError(f"base mismatch: {self.k} != {other.k}")
            return other
        return LogScalar.from_value(self.k, other)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.exponent is None or other.exponent is None:
            return LogScalar(self.k, None)
        return LogScalar(self.k, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.exponent is None:
            raise DomainError("division by zero LogScalar")
        if self.exponent is None:
            return LogScalar(self.k, None)
        return LogScalar(self.k, self.exponent - other.exponent)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, alpha):
        if self.exponent is None:
            if to_mpf(alpha) <= 0:
                raise DomainError("zero raised to a nonpositive power")
            return LogScalar(self.k, None)
        return LogScalar(self.k, self.exponent * to_mpf(alpha))

    def __add__(self, other):
        return ls_sum([self, self._coerce(other)])

    __radd__ = __add__

    def __sub__(self, other):
        """Difference of ordered values; raises if the result would be negative."""
        other = self._coerce(other)
        if other.exponent is None:
            return self
        if self.exponent is None or other.exponent > self.exponent:
            raise DomainError("LogScalar subtraction would be negative")
        if other.exponent == self.exponent:
            return LogScalar(self.k, None)
        d = (other.exponent - self.exponent) * _ln(self.k)
        return LogScalar(self.k, self.exponent + ctx.log(-ctx.expm1(d)) / _ln(self.k))

    # ordering ------------------------------------------------------------

    def compare(self, other):
        other = self._coerce(other)
        a, b = self.exponent, other.exponent
        if a is None or b is None:
            return (a is not None) - (b is not None)
        return (a > b) - (a < b)

    def __eq__(self, other):
        if not isinstance(other, LogScalar):
            try:
                other = self._coerce(other)
            except (ParameterError, TypeError):
                return NotImplemented
        return self.k == other.k and self.exponent == other.exponent

    def __hash__(self):
        return hash((self.k, self.exponent))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def leq(self, other, slack=None):
        """``self <= other`` allowing ``slack`` in the exponent (default: working precision)."""
        other = self._coerce(other)
        if self.exponent is None:
            return True
        if other.exponent is None:
            return False
        if slack is None:
            slack = comparison_slack()
        return self.exponent <= other.exponent + slack

    def rel_diff(self, other):
        """Relative difference ``|a - b| / max(a, b)`` as an mpf."""
        other = self._coerce(other)
        if self.exponent is None and other.exponent is None:
            return ctx.mpf(0)
        if self.exponent is None or other.exponent is None:
            return ctx.mpf(1)
        return -ctx.expm1(-abs(self.exponent - other.exponent) * _ln(self.k))

    def isclose(self, other, rel_tol):
        return self.rel_diff(other) <= rel_tol

    def __repr__(self):
        if self.exponent is None:
            return f"LogScalar(k={self.k}, 0)"
        return f"LogScalar(k={self.k}, {self.k}**{ctx.nstr(self.exponent, 20)})"

    def __reduce__(self):
        e = None if self.exponent is None else ctx.nstr(self.exponent, ctx.dps + 5)
        return (LogScalar, (self.k, e))


def ls_sum(terms):
    """Sum of LogScalars by max-exponent factoring.

    ``e_max + log_k(sum k**(e_i - e_max))``; every shifted term lies in
    ``(0, 1]`` so nothing over- or underflows.
    """
    terms = list(terms)
    if not terms:
        raise ParameterError("ls_sum needs at least one term")
    k = terms[0].k
    exps = []
    for t in terms:
        if t.k != k:
            raise ParameterError(f"base mismatch: {t.k} != {k}")
        if t.exponent is not None:
            exps.append(t.exponent)
    if not exps:
        return LogScalar(k, None)
    if len(exps) == 1:
        return LogScalar(k, exps[0])
    e_max = max(exps)
    lnk = _ln(k)
    total = ctx.fsum(ctx.exp((e - e_max) * lnk) for e in exps)
    return LogScalar(k, e_max + ctx.log(total) / lnk)


def ls_max(terms):
    best = None
    for t in terms:
        if best is None or t > best:
            best = t
    if best is None:
        raise ParameterError("ls_max needs at least one term")
    return best


def log_k(k, x):
    """Base-k logarithm of a positive int, Fraction or mpf at working precision."""
    if isinstance(x, int):
        return _log_int(k, x)
    if isinstance(x, Fraction):
        return LogScalar.from_fraction(k, x).exponent
    return ctx.log(to_mpf(x)) / _ln(k)


def ln_k(k):
    return _ln(k)
