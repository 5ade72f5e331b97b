"""Exact combinatorics of the rooted k-homogeneous tree.

Vertices are addressed by their child path from the root ``o``.  The root
has ``k + 1`` children and every other vertex has ``k``, so every vertex has
``k + 1`` neighbours.  All cardinalities are Python integers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ParameterError, ResourceBudgetError

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class TreeParams:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 2:
            raise ParameterError(f"branching parameter k must be an integer >= 2, got {self.k!r}")


def _k(tp):
    return tp.k if isinstance(tp, TreeParams) else TreeParams(tp).k


@dataclass(frozen=True, order=True)
class VertexAddress:
    """A vertex as its root-to-vertex child path.

    Ordering is (norm, path), which is the enumeration order of
    :func:`enumerate_ball`.
    """

    norm: int = field(init=False, repr=False)
    path: tuple = ()
    k: int = 2

    def __post_init__(self):
        path = tuple(self.path)
        object.__setattr__(self, "path", path)
        object.__setattr__(self, "norm", len(path))
        TreeParams(self.k)
        for i, c in enumerate(path):
            bound = self.k + 1 if i == 0 else self.k
            if not isinstance(c, int) or not 0 <= c < bound:
                raise ParameterError(
                    f"child index {c!r} at depth {i} out of range [0, {bound}) for k={self.k}"
                )

    @classmethod
    def root(cls, k):
        return cls((), k)

    def child(self, i):
        return VertexAddress(self.path + (i,), self.k)

    def parent(self):
        if not self.path:
            raise ParameterError("the root has no parent")
        return VertexAddress(self.path[:-1], self.k)

    def to_text(self):
        return "/".join(str(c) for c in self.path)

    @classmethod
    def from_text(cls, text, k):
        text = text.strip().strip("/")
        if text in ("", "o"):
            return cls((), k)
        try:
            path = tuple(int(part) for part in text.split("/"))
        except ValueError as exc:
            raise ParameterError(f"malformed vertex path {text!r}") from exc
        return cls(path, k)

    def __str__(self):
        return self.to_text() or "o"


@lru_cache(maxsize=None)
def _ball_size(k, r):
    if r == 0:
        return 1
    return 1 + (k + 1) * (k**r - 1) // (k - 1)


def ball_size(tp, r):
    """|B_r(x)|, the same for every center."""
    if r < 0:
        raise ParameterError(f"radius must be >= 0, got {r}")
    return _ball_size(_k(tp), r)


def sphere_size(tp, n):
    """|S_n(x)|: 1 for n = 0, (k+1) k^(n-1) otherwise."""
    if n < 0:
        raise ParameterError(f"radius must be >= 0, got {n}")
    k = _k(tp)
    return 1 if n == 0 else (k + 1) * k ** (n - 1)


def _common_prefix(a, b):
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def distance(x, y):
    if x.k != y.k:
        raise ParameterError(f"vertices belong to different trees (k={x.k} vs k={y.k})")
    return x.norm + y.norm - 2 * _common_prefix(x.path, y.path)


@dataclass(frozen=True)
class SphereDecomposition:
    """Counts of S_n(x) by distance from the root, for a center of norm m.

    ``entries`` is a tuple of ``(norm, count)`` sorted by decreasing norm,
    i.e. by increasing number ``j`` of steps taken toward the root.
    """

    k: int
    m: int
    n: int
    entries: tuple

    def steps(self):
        """Yield ``(j, norm, count)`` with ``norm == m + n - 2 j``."""
        for norm, count in self.entries:
            yield (self.m + self.n - norm) // 2, norm, count

    @property
    def total(self):
        return sum(c for _, c in self.entries)


@lru_cache(maxsize=65536)
def _decomposition(k, m, n):
    if n == 0:
        return ((m, 1),)
    if m == 0:
        return ((n, (k + 1) * k ** (n - 1)),)
    entries = [(m + n, k**n)]
    for j in range(1, min(n, m)):
        entries.append((m + n - 2 * j, (k - 1) * k ** (n - j - 1)))
    if n <= m:
        entries.append((m - n, 1))
    else:
        entries.append((n - m, k ** (n - m)))
    return tuple(entries)


def sphere_decomposition(tp, m, n):
    """Split S_n(x), with ||x|| = m, by distance from the root.

    Walking ``j`` steps toward the root and then ``n - j`` steps away:
    j = 0 gives the k^n descendants (|S_n(o)| if x is the root); an
    intermediate ancestor branches into k - 1 fresh children, giving
    (k-1) k^(n-j-1); j = n <= m is the single ancestor at norm m - n; and
    j = m < n passes through the root, which offers k fresh branches,
    giving k^(n-m).
    """
    if m < 0 or n < 0:
        raise ParameterError(f"center norm and radius must be >= 0, got m={m}, n={n}")
    k = _k(tp)
    return SphereDecomposition(k, m, n, _decomposition(k, m, n))


def enumerate_ball(tp, R, budget=DEFAULT_BUDGET):
    """Yield every vertex of B_R(o) once, by nondecreasing norm then path."""
    if R < 0:
        raise ParameterError(f"truncation radius must be >= 0, got {R}")
    k = _k(tp)
    size = ball_size(k, R)
    if size > budget:
        raise ResourceBudgetError(size, budget)
    return _bfs(k, R)


def _bfs(k, R):
    queue = deque([()])
    while queue:
        path = queue.popleft()
        yield VertexAddress(path, k)
        if len(path) < R:
            fanout = k + 1 if not path else k
            queue.extend(path + (i,) for i in range(fanout))


@lru_cache(maxsize=16)
def ball_vertices(k, R, budget=DEFAULT_BUDGET):
    """Cached tuple of :func:`enumerate_ball` output."""
    return tuple(enumerate_ball(k, R, budget))


def first_vertex(k, m):
    """A representative vertex of norm m (all-zero path)."""
    return VertexAddress((0,) * m, k)
