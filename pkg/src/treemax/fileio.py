"""Text formats for function literals.

Radial tables are two-column CSV files ``norm,value``; finite functions are
``path,value`` with slash-separated child indices (empty path for the root).
Values are parsed as exact rationals when they are written as decimals or
fractions, so ``0.1`` means 1/10 and not the nearest double.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from pathlib import Path

from .errors import ParameterError
from .geometry import VertexAddress
from .lorentz import FiniteFunction, RadialFunction


def parse_value(text):
    text = text.strip()
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse function value {text!r}") from exc
    if v < 0:
        raise ParameterError(f"function values must be nonnegative, got {text}")
    return v


def _rows(text):
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].lstrip().startswith("#")]
    if rows and rows[0][0].strip().lower() in ("norm", "path"):
        rows = rows[1:]
    for r in rows:
        if len(r) != 2:
            raise ParameterError(f"expected two columns, got {r!r}")
    return rows


def parse_radial(text, k):
    """Radial table; norms must be 0..N without gaps."""
    table = {}
    for norm, value in _rows(text):
        try:
            n = int(norm)
        except ValueError as exc:
            raise ParameterError(f"bad norm {norm!r}") from exc
        if n < 0 or n in table:
            raise ParameterError(f"norm {n} is negative or repeated")
        table[n] = parse_value(value)
    if sorted(table) != list(range(len(table))):
        raise ParameterError("radial table must list every norm from 0 to N")
    return RadialFunction.from_values(k, [table[n] for n in range(len(table))])


def parse_finite(text, k):
    mapping = {}
    for path, value in _rows(text):
        x = VertexAddress.from_text(path, k)
        if x in mapping:
            raise ParameterError(f"vertex {x} listed twice")
        mapping[x] = parse_value(value)
    return FiniteFunction.from_mapping(k, mapping)


def read_radial(path, k):
    return parse_radial(Path(path).read_text(encoding="utf-8"), k)


def read_finite(path, k):
    return parse_finite(Path(path).read_text(encoding="utf-8"), k)


def format_radial(f):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["norm", "value"])
    for n, v in enumerate(f.values):
        w.writerow([n, v.to_sci()])
    return out.getvalue()


def format_finite(f):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["path", "value"])
    for x in f.support:
        w.writerow([x.to_text(), f.values[x].to_sci()])
    return out.getvalue()
