"""Region figure: verdict maps in the (1/p, 1/q) square.

A grid parameter G samples the points ``i/G`` for ``i = 0..G`` on both
axes, so the lines ``1/p = 1 - gamma`` and ``1/q = gamma`` are hit exactly
whenever gamma is a multiple of 1/G.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from pathlib import Path

from .errors import ParameterError
from .numerics import as_fraction
from .theory import Status, strong_verdict

COLORS = {
    Status.BOUNDED: "#4daf4a",
    Status.UNBOUNDED: "#e6e6e6",
    Status.UNKNOWN: "#e41a1c",
}
STATUS_CHAR = {Status.BOUNDED: "B", Status.UNBOUNDED: "U", Status.UNKNOWN: "?"}
MAX_GRID = 512


def _check_grid(grid):
    if not 1 <= grid <= MAX_GRID:
        raise ParameterError(f"grid must lie in [1, {MAX_GRID}], got {grid}")


def verdict_grid(gamma, grid):
    """``rows[j][i]`` is the strong verdict at 1/p = i/G, 1/q = j/G."""
    _check_grid(grid)
    gamma = as_fraction(gamma)
    inv = [Fraction(i, grid) for i in range(grid + 1)]
    recip = [1 / x if x else "inf" for x in inv]
    return [[strong_verdict(gamma, recip[i], recip[j]) for i in range(grid + 1)] for j in range(grid + 1)]


def status_rows(gamma, grid):
    """Compact form: one string of status characters per 1/q row."""
    return ["".join(STATUS_CHAR[v.status] for v in row) for row in verdict_grid(gamma, grid)]


def region_csv(gammas, grid):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["gamma", "inv_p", "inv_q", "status", "citation"])
    for gamma in gammas:
        g = float(as_fraction(gamma))
        for j, row in enumerate(verdict_grid(gamma, grid)):
            for i, v in enumerate(row):
                w.writerow([f"{g:.14e}", f"{i / grid:.14e}", f"{j / grid:.14e}", v.status.value, v.citation])
    return out.getvalue()


def region_svg(gammas, grid, cell=2, gap=40):
    """Static SVG, one panel per gamma; runs of equal status become one rect."""
    size = (grid + 1) * cell
    width = len(gammas) * (size + gap) + gap
    height = size + 2 * gap
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for n, gamma in enumerate(gammas):
        x0 = gap + n * (size + gap)
        y0 = gap
        parts.append(f'<g id="panel-{n}">')
        parts.append(
            f'<text x="{x0}" y="{y0 - 10}" font-family="sans-serif" font-size="14">'
            f"gamma = {as_fraction(gamma)}</text>"
        )
        for j, row in enumerate(verdict_grid(gamma, grid)):
            y = y0 + (grid - j) * cell  # 1/q grows upwards
            i = 0
            while i <= grid:
                status = row[i].status
                start = i
                while i <= grid and row[i].status is status:
                    i += 1
                parts.append(
                    f'<rect x="{x0 + start * cell}" y="{y}" width="{(i - start) * cell}" '
                    f'height="{cell}" fill="{COLORS[status]}"/>'
                )
        parts.append(
            f'<rect x="{x0}" y="{y0}" width="{size}" height="{size}" fill="none" stroke="#000000"/>'
        )
        parts.append(
            f'<text x="{x0 + size // 2}" y="{y0 + size + 20}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">1/p</text>'
        )
        parts.append(
            f'<text x="{x0 - 8}" y="{y0 + size // 2}" font-family="sans-serif" '
            f'font-size="12" text-anchor="end">1/q</text>'
        )
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_region_figure(gammas, grid, out_path, csv_path=None):
    """Write the SVG (and its CSV companion, next to it by default)."""
    _check_grid(grid)
    out_path = Path(out_path)
    csv_path = out_path.with_suffix(".csv") if csv_path is None else Path(csv_path)
    out_path.write_text(region_svg(gammas, grid), encoding="utf-8")
    csv_path.write_text(region_csv(gammas, grid), encoding="utf-8")
    return out_path, csv_path
