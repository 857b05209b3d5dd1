"""CSV form of sweep records.

Floats are written as ``%.4e`` (five significant digits), so reading a
file back gives each value rounded to five digits.  A failed row has the
literal ``ERROR`` in the ``err`` column; empty ``err_deriv``/``cond``
fields mean "not computed".
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Iterable

from ..errors import ValidationError
from ..metrics import ErrorRecord
from .runner import record_sort_key

HEADER = ("function", "node_kind", "activation", "scheme", "mode", "M", "N",
          "seed", "err", "err_deriv", "cond", "metric_mode")
ERROR_MARK = "ERROR"


def format_float(v: float | None) -> str:
    if v is None:
        return ""
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.4e}"


def round_sig5(v: float | None) -> float | None:
    """The value a CSV round trip yields for `v`."""
    return None if v is None else float(format_float(v))


def _row(r: ErrorRecord) -> list[str]:
    return [r.function_id, r.node_kind, r.activation, r.scheme, r.mode, str(r.M), str(r.N),
            str(r.seed), ERROR_MARK if r.failed else format_float(r.err),
            format_float(r.err_deriv), format_float(r.collocation_condition), r.metric_mode]


def records_to_csv(records: Iterable[ErrorRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in sorted(records, key=record_sort_key):
        w.writerow(_row(r))
    return buf.getvalue()


def emit_csv(records: Iterable[ErrorRecord], path) -> Path:
    """Write `records` sorted by (M, activation, ...) with LF line endings."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(records_to_csv(records))
    return path


def _opt(s: str) -> float | None:
    return float(s) if s else None


def parse_csv(text: str) -> list[ErrorRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != HEADER:
        raise ValidationError("missing or unexpected CSV header")
    out = []
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != len(HEADER):
            raise ValidationError(f"line {n}: expected {len(HEADER)} fields, got {len(row)}")
        fn, nk, act, scheme, mode, M, N, seed, err, derr, cond, metric = row
        failed = err == ERROR_MARK
        out.append(ErrorRecord(
            fn, nk, act, scheme, mode, int(M), int(N), int(seed),
            float("nan") if failed else float(err), _opt(derr), _opt(cond), metric,
            error=ERROR_MARK if failed else None,
        ))
    return out


def read_csv(path) -> list[ErrorRecord]:
    return parse_csv(Path(path).read_text(encoding="utf-8"))
