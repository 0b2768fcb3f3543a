"""Per-iteration trace records and their file formats.

Traces are comma-separated with a fixed header; reals carry 17 significant
digits so files round-trip losslessly.  Fields that do not apply (eta/alpha
for subgradient baselines, delta_k without a reference minimum, elapsed_ms in
reproducible mode) are left blank.  Summaries are flat ``key: value`` text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

TRACE_COLUMNS = ("iter", "f_best", "eta", "alpha", "elapsed_ms", "delta_k")


@dataclass
class IterationTrace:
    iter: int
    f_best: float
    eta: float | None = None
    alpha: float | None = None
    elapsed_ms: float | None = None
    delta_k: float | None = None


def format_real(x: float) -> str:
    return f"{x:.17g}"


def _cell(x: float | None) -> str:
    return "" if x is None else format_real(x)


def write_trace(path, records: Iterable[IterationTrace], *,
                include_timing: bool = False) -> None:
    """Write records as CSV; timing is opt-in because wall-clock values break
    byte-for-byte reproducibility of the artifact."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(TRACE_COLUMNS) + "\n")
        for r in records:
            ms = r.elapsed_ms if include_timing else None
            fh.write(",".join([
                str(r.iter),
                format_real(r.f_best),
                _cell(r.eta),
                _cell(r.alpha),
                _cell(ms),
                _cell(r.delta_k),
            ]) + "\n")


def read_trace(path) -> list[IterationTrace]:
    records = []
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != ",".join(TRACE_COLUMNS):
            raise ValueError(f"unexpected trace header: {header!r}")
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(TRACE_COLUMNS):
                raise ValueError(f"malformed trace row: {line!r}")
            records.append(IterationTrace(
                iter=int(parts[0]),
                f_best=float(parts[1]),
                eta=float(parts[2]) if parts[2] else None,
                alpha=float(parts[3]) if parts[3] else None,
                elapsed_ms=float(parts[4]) if parts[4] else None,
                delta_k=float(parts[5]) if parts[5] else None,
            ))
    return records


def write_summary(path, fields: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(summary_text(fields))


def summary_text(fields: dict) -> str:
    lines = []
    for key, value in fields.items():
        if isinstance(value, float):
            value = format_real(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def read_summary(path) -> dict:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            key, _, value = line.partition(": ")
            out[key] = value
    return out
