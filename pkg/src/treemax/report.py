"""CSV and JSON emitters for experiment results.

Numbers are written in decimal scientific notation with 15 significant
digits, so outputs are byte-stable for a fixed precision.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

from . import __version__
from .numerics import LogScalar, ctx


def format_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, LogScalar):
        return v.to_sci(15)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.14e}"
    if isinstance(v, type(ctx.mpf(0))):
        return _sci(v)
    return str(v)


def _sci(v):
    if v == 0:
        return LogScalar.zero(2).to_sci(15)
    sign = "-" if v < 0 else ""
    return sign + LogScalar.from_mpf(2, abs(v)).to_sci(15)


def to_csv(result):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(result.columns)
    for row in result.rows:
        w.writerow([format_cell(v) for v in row])
    return out.getvalue()


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v if math.isfinite(v) else format_cell(v)
    return format_cell(v)


def to_json(result):
    doc = {
        "experiment": result.experiment,
        "params": _jsonable(result.params),
        "citation": result.citation,
        "rows": [dict(zip(result.columns, (format_cell(v) for v in row))) for row in result.rows],
        "verdicts": _jsonable(result.verdicts),
        "seed": result.seed,
        "version": __version__,
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def write_result(result, csv_path=None, json_path=None):
    if csv_path is not None:
        Path(csv_path).write_text(to_csv(result), encoding="utf-8")
    if json_path is not None:
        Path(json_path).write_text(to_json(result), encoding="utf-8")
