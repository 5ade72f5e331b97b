"""Desk-scale experiments for the quantitative claims about M^gamma.

Each runner returns an :class:`ExperimentResult` whose rows hold exact
values (LogScalar, int, str) and whose ``verdicts`` summarise the checks.
Nothing here raises on a failed check; failures are reported as data.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DivergenceError, ParameterError
from .geometry import ball_size, ball_vertices, sphere_size
from .lorentz import (
    INF,
    FiniteFunction,
    LorentzIndex,
    RadialFunction,
    inv,
    lebesgue_norm,
    lorentz_norm,
    pytlik_certificate,
)
from .maximal import (
    _log_ball,
    RadialKernel,
    convolve,
    maximal_at,
    maximal_bruteforce,
    maximal_radial,
    maximal_weak_norm,
    maximal_weak_norm_bounds,
    uncentered_bruteforce,
)
from .numerics import LogScalar, as_fraction, ctx, get_precision, set_precision, to_mpf
from .theory import (
    VecaParams,
    make_ball_indicator,
    make_dirac,
    make_geometric_profile,
    make_sphere_indicator,
    make_veca_g,
    make_veca_m,
    restricted_verdict,
)


@dataclass
class ExperimentResult:
    experiment: str
    params: dict
    citation: str
    columns: list
    rows: list
    verdicts: dict = field(default_factory=dict)
    seed: int | None = None


@dataclass(frozen=True)
class ZClassParams:
    epsilon: object
    gamma: object
    p: object
    q: object

    def __post_init__(self):
        eps = as_fraction(self.epsilon)
        if not 0 < eps < 1:
            raise ParameterError(f"epsilon must lie in (0, 1), got {eps}")
        gamma = as_fraction(self.gamma)
        if gamma == INF or gamma <= 0:
            raise ParameterError(f"gamma must be positive, got {gamma}")
        idx = LorentzIndex(self.p, self.q)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "p", idx.p)
        object.__setattr__(self, "q", idx.s)


def _unit_gamma(gamma):
    gamma = as_fraction(gamma)
    if gamma == INF or not 0 < gamma < 1:
        raise ParameterError(f"gamma must lie in (0, 1), got {gamma}")
    return gamma


def _slope(xs, ys):
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    a, b = np.polyfit(xs, ys, 1)
    pred = a * xs + b
    ss_res = float(((ys - pred) ** 2).sum())
    ss_tot = float(((ys - ys.mean()) ** 2).sum())
    return float(a), float(b), 1.0 if ss_tot == 0 else 1 - ss_res / ss_tot


def _label(x):
    return "inf" if x == INF else str(x)


def _worker_init(digits):
    set_precision(digits)


def parallel_map(fn, items, jobs=1):
    """Order-preserving map; ``jobs > 1`` uses worker processes.

    Workers run at the parent's precision so results do not depend on the
    degree of parallelism.
    """
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(
        max_workers=jobs, initializer=_worker_init, initargs=(get_precision(),)
    ) as pool:
        return list(pool.map(fn, items))


def spawn_rngs(seed, n):
    """One independent generator per family index."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


# ---------------------------------------------------------------------------
# growth of the ball counterexample


def _profile_on_ball(f, gamma, n):
    return RadialFunction(f.k, tuple(maximal_radial(f, gamma, m) for m in range(n + 1)))


def growth_row(k, gamma, s, t, n):
    gamma = _unit_gamma(gamma)
    p = 1 / (1 - gamma)
    f = make_ball_indicator(k, n)
    num = lorentz_norm(_profile_on_ball(f, gamma, n), LorentzIndex(p, t))
    den = lorentz_norm(f, LorentzIndex(p, s))
    return n, num, den, num / den


def run_growth(gamma, s, t, n_max, k=2, n_min=0, fit_from=8, jobs=1):
    """||M^gamma f_n||_{p,t} / ||f_n||_{p,s} for f_n = chi_{B_n}, p = 1/(1-gamma).

    The numerator is the norm of M^gamma f_n restricted to B_n(o), the
    region the lower bound lives on.  On the whole tree M^gamma f_n decays
    like k^(-gamma ||x||), which is outside L^{p,t} when gamma <= 1/2.
    """
    gamma = _unit_gamma(gamma)
    s, t = as_fraction(s), as_fraction(t)
    if t == INF or t < 1:
        raise ParameterError(f"t must lie in [1, inf), got {t}")
    LorentzIndex(1, s)
    if not 0 <= n_min <= n_max <= 64:
        raise ParameterError("need 0 <= n_min <= n_max <= 64")
    ns = list(range(n_min, n_max + 1))
    rows = parallel_map(_GrowthTask(k, gamma, s, t), ns, jobs)
    tt = float(t)
    pos = [(n, r) for n, _, _, r in rows if n >= 1]
    c = min(float(r) / n ** (1 / tt) for n, r in pos) if pos else None
    ratios = {n: r for n, _, _, r in rows}
    fit = [(n, r) for n, r in pos if n >= fit_from]
    slope = None
    if len(fit) >= 2:
        slope = _slope([math.log(n) for n, _ in fit], [float(r.log10()) * math.log(10) for _, r in fit])[0]
    verdicts = {"c_lower": c, "slope": slope, "slope_target": 1 / tt}
    if 12 in ratios and 48 in ratios:
        verdicts["ratio_48_over_12"] = float(ratios[48] / ratios[12])
    full = "finite" if gamma > Fraction(1, 2) else "infinite"
    return ExperimentResult(
        "growth",
        {"gamma": gamma, "s": s, "t": t, "n_max": n_max, "k": k, "p": 1 / (1 - gamma),
         "full_tree_norm": full},
        "Proposition: ball counterexample (ratio >~ n^(1/t))",
        ["n", "maximal_norm_on_ball", "input_norm", "ratio"],
        [list(r) for r in rows],
        verdicts,
    )


@dataclass(frozen=True)
class _GrowthTask:
    k: int
    gamma: Fraction
    s: object
    t: object

    def __call__(self, n):
        return growth_row(self.k, self.gamma, self.s, self.t, n)


# ---------------------------------------------------------------------------
# Dirac divergence


def run_delta_divergence(gamma, t, N, k=2):
    """Partial sums of the surrogate of ||M^gamma delta_o||_{1/gamma,t}.

    ``g(j) = |B_j|^(-gamma) k^(j gamma)`` tends to ((k-1)/(k+1))^gamma, so
    the t-th power sums grow affinely and the norm is infinite.
    """
    gamma = _unit_gamma(gamma)
    t = as_fraction(t)
    if t != INF and t < 1:
        raise ParameterError(f"t must lie in [1, inf], got {t}")
    g = to_mpf(gamma)
    p = 1 / gamma
    rows = []
    partial = LogScalar.zero(k)
    terms = []
    for j in range(N + 1):
        term = LogScalar(k, g * (j - _log_ball(k, j)))
        terms.append(term)
        if t != INF:
            partial = partial + term ** t
        trunc = RadialFunction(k, tuple(LogScalar(k, -g * _log_ball(k, m)) for m in range(j + 1)))
        tn = lorentz_norm(trunc, LorentzIndex(p, t))
        rows.append([j, term, partial if t != INF else max(terms), tn])
    limit = LogScalar.from_fraction(k, Fraction(k - 1, k + 1)) ** gamma
    verdicts = {"term_limit": limit.to_sci(), "max_term": max(terms).to_sci()}
    if t != INF:
        verdicts["term_limit_power_t"] = (limit ** t).to_sci()
        if N >= 1:
            xs = list(range(N + 1))
            ys = [float(r[2]) for r in rows]
            a, b, r2 = _slope(xs, ys)
            verdicts.update(fit_slope=a, fit_intercept=b, r_squared=r2,
                            c_lower=min(ys[j] / j for j in range(1, N + 1)))
    else:
        verdicts["sup_finite"] = max(terms) <= LogScalar.one(k)
    return ExperimentResult(
        "delta-divergence",
        {"gamma": gamma, "t": t, "N": N, "k": k},
        "Proposition: Dirac counterexample (||M^gamma delta_o||_{1/gamma,t} = inf)",
        ["j", "surrogate_term", "partial_sum", "truncated_norm"],
        rows,
        verdicts,
    )


# ---------------------------------------------------------------------------
# Veca's function


def run_veca(vp, N, k=2, direct_radius=40, direct_support=80):
    """Checks behind the unboundedness of M^(1/2) from L^{2,s} to L^{2,inf}."""
    if not isinstance(vp, VecaParams):
        vp = VecaParams(*vp)
    if not 0 <= N <= 400:
        raise ParameterError(f"N must lie in [0, 400], got {N}")
    g = make_veca_g(k, vp, N)
    m = make_veca_m(k, vp, N)
    s = vp.s
    idx = LorentzIndex(2, s)
    cert = pytlik_certificate(g, idx)
    half = Fraction(1, 2)
    sup_terms = [m.values[n] * LogScalar(k, to_mpf(half) * n) for n in range(N + 1)]
    sup = max(sup_terms)
    target = LogScalar.from_integer(k, 1 + N) ** (1 - vp.beta)
    closed = LogScalar.from_mpf(k, ctx.zeta(to_mpf(vp.beta * s))) ** (1 / s)
    surrogate = cert.total ** (1 / s)
    # direct check on a truncation of g
    R = min(direct_radius, N)
    gt = g.truncated(min(direct_support, max(N, 2 * R)))
    head = []
    running = LogScalar.zero(k)
    rows = []
    c = None
    for n in range(N + 1):
        running = running + LogScalar(k, g.values[n].exponent * to_mpf(s) + to_mpf(s) * n / 2)
        row = [n, g.values[n], m.values[n], sup_terms[n], running]
        if n <= R:
            Mg = maximal_radial(gt, half, n)
            ratio = Mg / m.values[n]
            c = ratio if c is None or ratio < c else c
            row += [Mg, ratio]
        else:
            row += ["", ""]
        rows.append(row)
        head.append(running)
    verdicts = {
        "sup_weighted_m": sup.to_sci(),
        "sup_target": target.to_sci(),
        "sup_exact": sup.leq(target) and target.leq(sup),
        "surrogate_norm": surrogate.to_sci(),
        "surrogate_closed_form": closed.to_sci(),
        "tail_relative_width": cert.relative_width,
        "tail_certified": cert.relative_width < 0.01,
        "direct_c": c.to_sci() if c is not None else None,
        "direct_positive": c is not None and not c.is_zero,
    }
    return ExperimentResult(
        "veca",
        {"s": s, "beta": vp.beta, "N": N, "k": k, "direct_radius": R, "direct_support": gt.N},
        "Theorem: M^(1/2) unbounded from L^(2,s) to L^(2,inf)",
        ["n", "g", "m", "m_times_k_n_half", "surrogate_partial_power_s", "maximal_g", "maximal_over_m"],
        rows,
        verdicts,
    )


# ---------------------------------------------------------------------------
# radial boundedness


def radial_combinations(gamma):
    """(p, target q) pairs covered by the radial boundedness statement."""
    gamma = _unit_gamma(gamma)
    a, b = 1 / gamma, 1 / (1 - gamma)
    if gamma > Fraction(1, 2):
        return [(a, a), (b, b)]
    if gamma < Fraction(1, 2):
        return [(b, a)]
    raise ParameterError("the radial statement distinguishes gamma > 1/2 and gamma < 1/2")


def radial_family(k, seed, F, max_support=30):
    fam = [("dirac", 0, make_dirac(k))]
    for n in range(1, max_support + 1):
        fam.append(("ball", n, make_ball_indicator(k, n)))
    for n in range(1, max_support + 1):
        fam.append(("sphere", n, make_sphere_indicator(k, n)))
    for n in range(1, max_support + 1):
        fam.append(("geometric", n, make_geometric_profile(k, Fraction(1, 2), n)))
    for i, rng in enumerate(spawn_rngs(seed, F)):
        n = int(rng.integers(1, max_support + 1))
        vals = [int(v) for v in rng.integers(0, 10, size=n + 1)]
        vals[-1] = max(vals[-1], 1)
        fam.append((f"random{i}", n, RadialFunction.from_values(k, vals)))
    return fam


@dataclass(frozen=True)
class _RadialTask:
    gamma: Fraction
    combos: tuple
    s_values: tuple

    def __call__(self, member):
        name, n, f = member
        out = []
        for p, q in self.combos:
            num = maximal_weak_norm(f, self.gamma, q)
            for s in self.s_values:
                den = lorentz_norm(f, LorentzIndex(p, s))
                out.append((name, n, p, s, q, num, den, num / den))
        return out


def run_radial_bounded(gamma, F=20, seed=0, k=2, max_support=30, s_values=(1, 2, INF), jobs=1):
    """||M^gamma f||_{q,inf} / ||f||_{p,s} over radial families; the sup must not grow."""
    gamma = _unit_gamma(gamma)
    combos = tuple(radial_combinations(gamma))
    s_values = tuple(as_fraction(s) for s in s_values)
    fam = radial_family(k, seed, F, max_support)
    rows = [r for chunk in parallel_map(_RadialTask(gamma, combos, s_values), fam, jobs) for r in chunk]
    verdicts = {}
    for p, q in combos:
        for s in s_values:
            sel = [r for r in rows if r[2] == p and r[3] == s]
            cut = 2 * max_support // 3
            stable = True
            for fam_name in ("ball", "sphere", "geometric"):
                part = [r for r in sel if r[0] == fam_name]
                early = max(r[7] for r in part if r[1] <= cut)
                late = max(r[7] for r in part)
                stable = stable and late.leq(early * Fraction(101, 100))
            full = max(r[7] for r in sel)
            key = f"p={_label(p)},s={_label(s)},q={_label(q)}"
            verdicts[key] = {
                "constant": full.to_sci(),
                "random_sup": max((r[7] for r in sel if r[0].startswith("random")),
                                  default=LogScalar.zero(k)).to_sci(),
                "stable": stable,
            }
    return ExperimentResult(
        "radial-bounded",
        {"gamma": gamma, "F": F, "k": k, "max_support": max_support,
         "s_values": [_label(s) for s in s_values]},
        "Proposition: radial functions, weak-type bounds",
        ["function", "support", "p", "s", "q", "maximal_weak_norm", "input_norm", "ratio"],
        [[a, b, _label(c), _label(d), _label(e), f, g, h] for a, b, c, d, e, f, g, h in rows],
        verdicts,
        seed,
    )


# ---------------------------------------------------------------------------
# restricted weak type probes

RWT_FAMILIES = ("balls", "spheres", "ball-plus-far-sphere", "random")


def _set_radial(kind, k, n):
    if kind == "balls":
        return make_ball_indicator(k, n)
    if kind == "spheres":
        return make_sphere_indicator(k, n)
    if kind == "ball-plus-far-sphere":
        return RadialFunction.from_values(k, [1] * (n + 1) + [0] * n + [1])
    raise ParameterError(f"unknown set family {kind!r}")


def random_subsets(k, R, seed, count):
    """Seeded random subsets of B_R(o); member i has its own generator and density."""
    verts = ball_vertices(k, R)
    out = []
    for rng in spawn_rngs(seed, count):
        density = rng.uniform(0.05, 0.95)
        mask = rng.random(len(verts)) < density
        if not mask.any():
            mask[int(rng.integers(len(verts)))] = True
        out.append(FiniteFunction.indicator(k, [v for v, keep in zip(verts, mask) if keep]))
    return out


@dataclass(frozen=True)
class _RwtTask:
    gamma: Fraction
    p: Fraction
    q: Fraction

    def __call__(self, member):
        label, f = member
        size = _size(f)
        den = LogScalar.from_fraction(f.k, self.p) * LogScalar.from_integer(f.k, size) ** (1 / self.p)
        try:
            if isinstance(f, RadialFunction):
                lo = hi = maximal_weak_norm(f, self.gamma, self.q)
            else:
                lo, hi = maximal_weak_norm_bounds(f, self.gamma, self.q)
        except DivergenceError:
            return label, size, None, None, den
        return label, size, lo, hi, den


def _size(f):
    if isinstance(f, RadialFunction):
        return sum(sphere_size(f.k, n) for n in range(f.N + 1) if not f.values[n].is_zero)
    return len(f.values)


def run_rwt_probe(gamma, p, q, family, n_max=40, seed=0, k=2, R=7, window=10, jobs=1):
    """||M^gamma chi_E||_{q,inf} / ||chi_E||_{p,1} along a family of sets E.

    ``||chi_E||_{p,1} = p |E|^(1/p)``.  Random subsets are not radial; their
    numerator is a certified bracket and the ratio uses its lower end.
    """
    gamma = as_fraction(gamma)
    p, q = as_fraction(p), as_fraction(q)
    if p == INF or q == INF:
        raise ParameterError("the probe needs finite p and q")
    LorentzIndex(p, q)
    if family not in RWT_FAMILIES:
        raise ParameterError(f"family must be one of {RWT_FAMILIES}, got {family!r}")
    if family == "random":
        members = [(str(i + 1), f) for i, f in enumerate(random_subsets(k, R, seed, n_max))]
    else:
        members = [(str(n), _set_radial(family, k, n)) for n in range(n_max + 1)]
    results = parallel_map(_RwtTask(gamma, p, q), members, jobs)
    rows = []
    ratios = []
    running = None
    for label, size, lo, hi, den in results:
        if lo is None:
            rows.append([label, size, "divergent", "divergent", den, "inf", "inf"])
            ratios.append(None)
            continue
        r = lo / den
        running = r if running is None or r > running else running
        ratios.append(r)
        rows.append([label, size, lo, hi, den, r, running])
    verdict = restricted_verdict(gamma, p, q)
    verdicts = {"verdict": verdict.status.value, "verdict_citation": verdict.citation}
    finite = [r for r in ratios if r is not None]
    if len(finite) == len(ratios) and len(finite) > window:
        before = ls_running_max(finite[: len(finite) - window])
        after = ls_running_max(finite)
        change = float(after / before) - 1
        verdicts["running_sup"] = after.to_sci()
        verdicts["last_window_change"] = change
        verdicts["stable"] = change < 0.01
        tail = finite[-window:]
        verdicts["monotone_growth"] = all(a < b for a, b in zip(tail, tail[1:]))
        verdicts["growth_factor"] = float(finite[-1] / finite[0]) if not finite[0].is_zero else None
    else:
        verdicts["stable"] = False
        verdicts["divergent_members"] = sum(r is None for r in ratios)
    return ExperimentResult(
        "rwt-probe",
        {"gamma": gamma, "p": p, "q": q, "family": family, "n_max": n_max, "k": k,
         "R": R if family == "random" else None},
        verdict.citation,
        ["member", "size", "maximal_weak_lower", "maximal_weak_upper", "input_norm", "ratio", "running_sup"],
        rows,
        verdicts,
        seed if family == "random" else None,
    )


def ls_running_max(values):
    best = values[0]
    for v in values[1:]:
        if v > best:
            best = v
    return best


# ---------------------------------------------------------------------------
# Z-class probe


def zclass_slope(zp):
    """Asymptotic slope of log_k C_n: 2/q - epsilon gamma - 1/p."""
    return 2 * inv(zp.q) - zp.epsilon * zp.gamma - inv(zp.p)


def run_zclass(zp, n_max=20, k=2, fit_from=None):
    """Constant C_n of the Z-class inequality for E = B_n, F = B_2n, r = n.

    Every S_n(x) with x in B_n lies in B_2n, so the left side is |B_n| |S_n|.
    """
    if not isinstance(zp, ZClassParams):
        zp = ZClassParams(*zp)
    if not 0 <= n_max <= 20:
        raise ParameterError(f"n_max must lie in [0, 20], got {n_max}")
    ip, iq = to_mpf(inv(zp.p)), to_mpf(inv(zp.q))
    eg = to_mpf(zp.epsilon * zp.gamma)
    rows = []
    for n in range(n_max + 1):
        lhs = ball_size(k, n) * sphere_size(k, n)
        logC = (
            LogScalar.from_integer(k, lhs).exponent
            - eg * n
            - ip * LogScalar.from_integer(k, ball_size(k, n)).exponent
            - (1 - iq) * LogScalar.from_integer(k, ball_size(k, 2 * n)).exponent
        )
        rows.append([n, lhs, LogScalar(k, logC), logC])
    theory = zclass_slope(zp)
    fit_from = max(1, n_max // 2) if fit_from is None else fit_from
    pts = [(r[0], float(r[2].exponent)) for r in rows if r[0] >= fit_from]
    slope = _slope(*zip(*pts))[0] if len(pts) >= 2 else None
    rel = abs(slope - float(theory)) / abs(float(theory)) if slope is not None and theory else None
    return ExperimentResult(
        "zclass",
        {"epsilon": zp.epsilon, "gamma": zp.gamma, "p": zp.p, "q": zp.q, "n_max": n_max, "k": k},
        "Z-class condition with counting measure (E = B_n, F = B_2n, r = n)",
        ["n", "lhs", "C_n", "log_k_C_n"],
        rows,
        {"slope": slope, "slope_theory": float(theory), "relative_error": rel,
         "theory_positive": theory > 0, "within_5_percent": rel is not None and rel <= 0.05},
    )


# ---------------------------------------------------------------------------
# pointwise invariants on truncated trees


def random_finite(k, R, rng, support_radius=None):
    """Random nonnegative integer function on B_r(o), r = support_radius (default R)."""
    r = R if support_radius is None else support_radius
    verts = ball_vertices(k, r)
    mask = rng.random(len(verts)) < rng.uniform(0.02, 0.5)
    vals = rng.integers(1, 10, size=len(verts))
    mapping = {v: int(c) for v, c, keep in zip(verts, vals, mask) if keep}
    if not mapping:
        mapping[verts[int(rng.integers(len(verts)))]] = 1
    return FiniteFunction.from_mapping(k, mapping)


def random_radial(k, N, rng):
    vals = [int(v) for v in rng.integers(0, 10, size=N + 1)]
    vals[int(rng.integers(N + 1))] += 1
    return RadialFunction.from_values(k, vals)


@dataclass(frozen=True)
class _PointwiseTask:
    k: int
    R: int
    gamma: Fraction
    support_radius: int

    def __call__(self, seed_seq):
        rng = np.random.default_rng(seed_seq)
        f = random_finite(self.k, self.R, rng, self.support_radius)
        return pointwise_violations(f, self.gamma, self.R)


def pointwise_violations(f, gamma, R):
    """Counts of violated pointwise inequalities on B_R(o).

    Left sides use interior-safe radii; right sides are exact values on the
    whole tree, so every inequality is a theorem for the truncated sup too.
    """
    k = f.k
    gamma = as_fraction(gamma)
    M = maximal_bruteforce(f, gamma, R)
    Mu = uncentered_bruteforce(f, gamma, R)
    kern = RadialKernel(gamma)
    hold = lebesgue_norm(f, 1 / (1 - gamma)) if gamma < 1 else None
    counts = {"identity": 0, "convolution": 0, "holder": 0, "uncentered": 0, "checked": 0}
    for x in ball_vertices(k, R):
        mx = M.value(x)
        counts["checked"] += 1
        if not f.value(x).leq(mx):
            counts["identity"] += 1
        if not mx.leq(convolve(f, kern, x)):
            counts["convolution"] += 1
        if hold is not None and not mx.leq(hold):
            counts["holder"] += 1
        if not Mu.value(x).leq(maximal_at(f, x, gamma / 2)):
            counts["uncentered"] += 1
    return counts


def run_invariants(gamma, count=100, seed=0, k=2, R=5, support_radius=3, jobs=1):
    """Pointwise inequalities for ``count`` seeded functions on B_R(o)."""
    gamma = as_fraction(gamma)
    seqs = np.random.SeedSequence(seed).spawn(count)
    results = parallel_map(_PointwiseTask(k, R, gamma, support_radius), seqs, jobs)
    rows = [[i, r["checked"], r["identity"], r["convolution"], r["holder"], r["uncentered"]]
            for i, r in enumerate(results)]
    totals = {key: sum(r[key] for r in results) for key in ("identity", "convolution", "holder", "uncentered")}
    return ExperimentResult(
        "invariants",
        {"gamma": gamma, "count": count, "k": k, "R": R, "support_radius": support_radius},
        "Pointwise bounds: M f >= |f|, M f <= A|f|, Hoelder, uncentered <= M^(gamma/2)",
        ["function", "vertices", "identity", "convolution", "holder", "uncentered"],
        rows,
        {"violations": totals, "all_hold": not any(totals.values())},
        seed,
    )


@dataclass(frozen=True)
class _OracleTask:
    k: int
    R: int
    gamma: Fraction
    N: int

    def __call__(self, seed_seq):
        rng = np.random.default_rng(seed_seq)
        f = random_radial(self.k, self.N, rng)
        return oracle_mismatch(f, self.gamma, self.R)


def oracle_mismatch(f, gamma, R):
    """Largest relative difference between the radial fast path and brute force on B_R(o)."""
    bf = maximal_bruteforce(f.to_finite(), gamma, R)
    fast = [maximal_radial(f, gamma, m, r_max=R - m) for m in range(R + 1)]
    worst = ctx.mpf(0)
    for x in ball_vertices(f.k, R):
        d = fast[x.norm].rel_diff(bf.value(x))
        worst = max(worst, d)
    return float(worst)


def run_oracle(gamma, count=50, seed=0, k=2, R=7, support_radius=3, jobs=1):
    gamma = as_fraction(gamma)
    seqs = np.random.SeedSequence(seed).spawn(count)
    worst = parallel_map(_OracleTask(k, R, gamma, support_radius), seqs, jobs)
    return ExperimentResult(
        "oracle",
        {"gamma": gamma, "count": count, "k": k, "R": R, "support_radius": support_radius},
        "Maximal operator definition (fast path vs brute force)",
        ["function", "max_relative_difference"],
        [[i, w] for i, w in enumerate(worst)],
        {"max_relative_difference": max(worst), "within_1e-10": max(worst) <= 1e-10},
        seed,
    )
