"""Command line interface.

Exit codes: 0 success, 2 parameter error, 3 resource budget exceeded,
4 divergence reported as a result without ``--expect-divergence``.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from .errors import DivergenceError, ParameterError, ResourceBudgetError
from .numerics import as_fraction, set_precision

EXIT_PARAM = 2
EXIT_BUDGET = 3
EXIT_DIVERGENCE = 4


class Rational(click.ParamType):
    """Exact rational parameter: ``0.75``, ``3/4`` or ``inf``."""

    name = "rational"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return as_fraction(value)
        try:
            return as_fraction(value)
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number or 'inf'", param, ctx)


RATIONAL = Rational()


@dataclass
class Settings:
    k: int
    seed: int
    out: str | None
    jobs: int
    expect_divergence: bool


def _load_config(ctx, param, value):
    if value is None:
        return
    try:
        data = json.loads(Path(value).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise click.BadParameter(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise click.BadParameter("config must be a JSON object")
    ctx.default_map = {key.replace("-", "_"): v for key, v in data.items()}


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", type=click.Path(exists=True, dir_okay=False), callback=_load_config,
              is_eager=True, expose_value=False, help="JSON file mirroring the CLI flags.")
@click.option("--k", default=2, show_default=True, type=click.IntRange(min=2), help="Branching parameter.")
@click.option("--precision-digits", type=click.IntRange(min=20), default=None,
              help="Working precision (default 40 or TREEMAX_PRECISION_DIGITS).")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", default=None, type=click.Path(dir_okay=False), help="Output file.")
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--expect-divergence", is_flag=True, help="Report divergence with exit code 0.")
@click.pass_context
def main(ctx, k, precision_digits, seed, out, jobs, expect_divergence):
    """Exact fractional maximal operators on homogeneous trees."""
    if precision_digits is not None:
        set_precision(precision_digits)
    ctx.obj = Settings(k, seed, out, jobs, expect_divergence)


def _emit(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _read_function(k, radial, finite, tail=None):
    from .fileio import read_finite, read_radial
    from .lorentz import GeometricTail, RadialFunction

    if (radial is None) == (finite is None):
        raise ParameterError("give exactly one of --radial or --finite")
    if finite is not None:
        if tail is not None:
            raise ParameterError("--tail applies to radial tables only")
        return read_finite(finite, k)
    f = read_radial(radial, k)
    if tail is not None:
        lr, _, deg = tail.partition(":")
        f = RadialFunction.from_values(k, f.values, GeometricTail(lr, deg or 0))
    return f


_input_options = [
    click.option("--radial", type=click.Path(exists=True, dir_okay=False), help="CSV norm,value."),
    click.option("--finite", type=click.Path(exists=True, dir_okay=False), help="CSV path,value."),
]


def _with(options):
    def deco(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn

    return deco


@main.command()
@_with(_input_options)
@click.option("--tail", default=None, help="Geometric tail LOG_RATIO[:DEGREE] after the last norm.")
@click.option("--p", "p", required=True, type=RATIONAL)
@click.option("--s", "s", default=None, type=RATIONAL, help="Second index (default p; inf = weak).")
@click.option("--kind", type=click.Choice(["lorentz", "weak", "lebesgue", "surrogate"]), default="lorentz",
              show_default=True)
@click.pass_obj
def norm(st, radial, finite, tail, p, s, kind):
    """Print an exact norm of a function literal."""
    from .lorentz import LorentzIndex, lebesgue_norm, lorentz_norm, pytlik_surrogate, weak_norm

    f = _read_function(st.k, radial, finite, tail)
    if kind == "weak":
        v = weak_norm(f, p)
    elif kind == "lebesgue":
        v = lebesgue_norm(f, p)
    elif kind == "surrogate":
        v = pytlik_surrogate(f, LorentzIndex(p, s))
    else:
        v = lorentz_norm(f, LorentzIndex(p, s))
    _emit(v.to_sci() + "\n", st.out)


@main.command()
@_with(_input_options)
@click.option("--gamma", required=True, type=RATIONAL)
@click.option("--m-max", type=click.IntRange(min=0), default=None,
              help="Radial input: tabulate norms 0..m-max (default: support radius).")
@click.option("--R", "R", type=click.IntRange(min=0), default=None,
              help="Finite input: truncation radius of the brute-force evaluation.")
@click.option("--uncentered", is_flag=True, help="Finite input: uncentered operator.")
@click.option("--weak-norm", "weak_q", type=RATIONAL, default=None,
              help="Print ||M^gamma f||_{q,inf} instead of the values.")
@click.option("--out", default=None, type=click.Path(dir_okay=False))
@click.pass_obj
def maximal(st, radial, finite, gamma, m_max, R, uncentered, weak_q, out):
    """Evaluate M^gamma f (radial fast path or brute force)."""
    from .fileio import format_finite, format_radial
    from .lorentz import RadialFunction
    from .maximal import (
        maximal_bruteforce,
        maximal_radial_profile,
        maximal_weak_norm,
        maximal_weak_norm_bounds,
        uncentered_bruteforce,
    )

    out = out or st.out
    f = _read_function(st.k, radial, finite)
    if weak_q is not None:
        if isinstance(f, RadialFunction):
            text = maximal_weak_norm(f, gamma, weak_q).to_sci() + "\n"
        else:
            lo, hi = maximal_weak_norm_bounds(f, gamma, weak_q)
            text = f"{lo.to_sci()} {hi.to_sci()}\n"
        _emit(text, out)
        return
    if isinstance(f, RadialFunction):
        m_max = max(f.support_radius, 0) if m_max is None else m_max
        _emit(format_radial(maximal_radial_profile(f, gamma, m_max)), out)
        return
    if R is None:
        raise ParameterError("finite input needs --R")
    op = uncentered_bruteforce if uncentered else maximal_bruteforce
    _emit(format_finite(op(f, gamma, R)), out)


@main.command()
@click.option("--gamma", "gammas", required=True, multiple=True, type=RATIONAL)
@click.option("--grid", default=200, show_default=True, type=click.IntRange(1, 512))
@click.option("--out", default=None, type=click.Path(dir_okay=False), help="SVG path.")
@click.option("--csv", "csv_path", default=None, type=click.Path(dir_okay=False),
              help="CSV companion (default: next to the SVG).")
@click.pass_obj
def region(st, gammas, grid, out, csv_path):
    """Draw the strong-type verdict map for each gamma."""
    from .figure import emit_region_figure, region_csv

    out = out or st.out
    if out is None:
        click.echo(region_csv(gammas, grid), nl=False)
        return
    svg, table = emit_region_figure(gammas, grid, out, csv_path)
    click.echo(f"wrote {svg} and {table}", err=True)


# ---------------------------------------------------------------------------
# experiments


@main.group()
def experiment():
    """Run one of the reproducibility experiments."""


def _finish(st, result, out, json_path):
    from .report import to_csv, to_json

    out = out or st.out
    _emit(to_csv(result), out)
    if json_path is None and out is not None:
        json_path = Path(out).with_suffix(".json")
    if json_path is not None:
        Path(json_path).write_text(to_json(result), encoding="utf-8")
    click.echo(json.dumps({"experiment": result.experiment, "verdicts": _plain(result.verdicts)},
                          sort_keys=True), err=True)


def _plain(v):
    from .report import _jsonable

    return _jsonable(v)


_out_options = [
    click.option("--out", default=None, type=click.Path(dir_okay=False), help="CSV path."),
    click.option("--json", "json_path", default=None, type=click.Path(dir_okay=False),
                 help="JSON report path (default: CSV path with .json)."),
]


@experiment.command("growth")
@click.option("--gamma", required=True, type=RATIONAL)
@click.option("--s", "s", default="1", type=RATIONAL)
@click.option("--t", "t", default="1", type=RATIONAL)
@click.option("--n-max", default=48, show_default=True, type=click.IntRange(0, 64))
@_with(_out_options)
@click.pass_obj
def exp_growth(st, gamma, s, t, n_max, out, json_path):
    """Ball counterexample: ratio growth in n."""
    from .experiments import run_growth

    _finish(st, run_growth(gamma, s, t, n_max, k=st.k, jobs=st.jobs), out, json_path)


@experiment.command("delta-divergence")
@click.option("--gamma", required=True, type=RATIONAL)
@click.option("--t", "t", default="1", type=RATIONAL)
@click.option("--N", "N", default=60, show_default=True, type=click.IntRange(min=0))
@_with(_out_options)
@click.pass_obj
def exp_delta(st, gamma, t, N, out, json_path):
    """Dirac counterexample: partial sums of the surrogate norm."""
    from .experiments import run_delta_divergence

    _finish(st, run_delta_divergence(gamma, t, N, k=st.k), out, json_path)


@experiment.command("veca")
@click.option("--s", "s", default="2", type=RATIONAL)
@click.option("--beta", default="0.75", type=RATIONAL)
@click.option("--N", "N", default=255, show_default=True, type=click.IntRange(0, 400))
@_with(_out_options)
@click.pass_obj
def exp_veca(st, s, beta, N, out, json_path):
    """Optimality of the (2, inf) endpoint at gamma = 1/2."""
    from .experiments import run_veca
    from .theory import VecaParams

    _finish(st, run_veca(VecaParams(s, beta), N, k=st.k), out, json_path)


@experiment.command("radial-bounded")
@click.option("--gamma", required=True, type=RATIONAL)
@click.option("--family-size", "F", default=20, show_default=True, type=click.IntRange(min=0))
@_with(_out_options)
@click.pass_obj
def exp_radial(st, gamma, F, out, json_path):
    """Weak-type bounds for radial functions."""
    from .experiments import run_radial_bounded

    _finish(st, run_radial_bounded(gamma, F, st.seed, k=st.k, jobs=st.jobs), out, json_path)


@experiment.command("rwt-probe")
@click.option("--gamma", required=True, type=RATIONAL)
@click.option("--p", "p", required=True, type=RATIONAL)
@click.option("--q", "q", required=True, type=RATIONAL)
@click.option("--family", type=click.Choice(["balls", "spheres", "ball-plus-far-sphere", "random"]),
              default="balls", show_default=True)
@click.option("--n-max", default=40, show_default=True, type=click.IntRange(min=1))
@click.option("--R", "R", default=7, show_default=True, type=click.IntRange(1, 7))
@_with(_out_options)
@click.pass_obj
def exp_rwt(st, gamma, p, q, family, n_max, R, out, json_path):
    """Restricted weak type ratios along a family of sets."""
    from .experiments import run_rwt_probe

    res = run_rwt_probe(gamma, p, q, family, n_max, st.seed, k=st.k, R=R, jobs=st.jobs)
    _finish(st, res, out, json_path)


@experiment.command("zclass")
@click.option("--epsilon", required=True, type=RATIONAL)
@click.option("--gamma", required=True, type=RATIONAL)
@click.option("--p", "p", default=None, type=RATIONAL, help="Default 1/(1-gamma).")
@click.option("--q", "q", required=True, type=RATIONAL)
@click.option("--n-max", default=20, show_default=True, type=click.IntRange(0, 20))
@_with(_out_options)
@click.pass_obj
def exp_zclass(st, epsilon, gamma, p, q, n_max, out, json_path):
    """Constants of the Z-class inequality on balls."""
    from .experiments import ZClassParams, run_zclass

    p = 1 / (1 - gamma) if p is None else p
    _finish(st, run_zclass(ZClassParams(epsilon, gamma, p, q), n_max, k=st.k), out, json_path)


@experiment.command("invariants")
@click.option("--gamma", required=True, type=RATIONAL)
@click.option("--count", default=100, show_default=True, type=click.IntRange(min=1))
@click.option("--R", "R", default=5, show_default=True, type=click.IntRange(0, 7))
@click.option("--support-radius", default=3, show_default=True, type=click.IntRange(min=0))
@_with(_out_options)
@click.pass_obj
def exp_invariants(st, gamma, count, R, support_radius, out, json_path):
    """Pointwise inequalities on a truncated tree."""
    from .experiments import run_invariants

    res = run_invariants(gamma, count, st.seed, k=st.k, R=R, support_radius=support_radius, jobs=st.jobs)
    _finish(st, res, out, json_path)


@experiment.command("region-figure")
@click.option("--gamma", "gammas", multiple=True, type=RATIONAL,
              default=("0.25", "0.5", "0.6", "0.75", "1", "1.5"))
@click.option("--grid", default=200, show_default=True, type=click.IntRange(1, 512))
@click.option("--out", default=None, type=click.Path(dir_okay=False), help="SVG path.")
@click.pass_obj
def exp_region(st, gammas, grid, out):
    """All panels of the region figure."""
    from .figure import emit_region_figure

    out = out or st.out or "region.svg"
    svg, table = emit_region_figure(gammas, grid, out)
    click.echo(f"wrote {svg} and {table}", err=True)


def cli_dispatch(argv=None):
    """Run the CLI and return its exit code instead of exiting."""
    expect = "--expect-divergence" in (argv if argv is not None else sys.argv[1:])
    try:
        rv = main.main(args=argv, prog_name="treemax", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except ResourceBudgetError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_BUDGET
    except DivergenceError as exc:
        click.echo(f"divergent: {exc}", err=True)
        return 0 if expect else EXIT_DIVERGENCE
    except ParameterError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_PARAM
    return rv if isinstance(rv, int) else 0


def run():
    sys.exit(cli_dispatch())
