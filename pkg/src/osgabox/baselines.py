"""Projected subgradient baselines with diminishing steps.

Two variants of ``x_{k+1} = clip(x_k - alpha_k * g_k)``, ``k`` starting at 1:

* ``step_size``   (PSGA-1): alpha_k = scale / (sqrt(k) * ||g_k||), scale 5
* ``step_length`` (PSGA-2): alpha_k = scale / sqrt(k),             scale 0.1

Subgradient methods are not descent methods, so the reported value tracks the
minimum over all evaluated points.  A zero subgradient certifies optimality
and stops the run.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import BoxDomain, FirstOrderOracle, Vector, project_to_box
from .osga import SolveResult
from .trace import IterationTrace

_DEFAULT_SCALE = {"step_size": 5.0, "step_length": 0.1}


@dataclass(frozen=True)
class PsgaParams:
    variant: str = "step_size"
    scale: float | None = None
    max_iters: int = 100
    max_time: float = math.inf

    def __post_init__(self):
        if self.variant not in _DEFAULT_SCALE:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.scale is not None and not self.scale > 0:
            raise ValueError("scale must be positive")
        if self.max_iters < 0:
            raise ValueError("max_iters must be nonnegative")

    @property
    def effective_scale(self) -> float:
        return self.scale if self.scale is not None else _DEFAULT_SCALE[self.variant]


def psga_solve(oracle: FirstOrderOracle, box: BoxDomain, x0: Vector,
               params: PsgaParams,
               trace_sink: Optional[Callable[[IterationTrace], None]] = None,
               ) -> SolveResult:
    x = np.asarray(x0, dtype=float).copy()
    if not box.contains(x):
        raise ValueError("start point must lie in the box")
    scale = params.effective_scale

    t0 = time.perf_counter()
    f, g = oracle(x)
    g = np.asarray(g, dtype=float)
    best_f = f
    best_x = x.copy()
    n_evals = 1
    elapsed = time.perf_counter() - t0

    records: list[IterationTrace] = []
    reason = "max_iters"
    for k in range(1, params.max_iters + 1):
        if elapsed > params.max_time:
            reason = "max_time"
            break
        t1 = time.perf_counter()
        gnorm = float(np.linalg.norm(g))
        if gnorm == 0.0:
            reason = "stationary"
            break
        if params.variant == "step_size":
            alpha = scale / (math.sqrt(k) * gnorm)
        else:
            alpha = scale / math.sqrt(k)
        x = project_to_box(x - alpha * g, box)
        f, g = oracle(x)
        g = np.asarray(g, dtype=float)
        n_evals += 1
        if f < best_f:
            best_f = f
            best_x = x.copy()
        elapsed += time.perf_counter() - t1
        rec = IterationTrace(iter=k, f_best=best_f, elapsed_ms=elapsed * 1e3)
        records.append(rec)
        if trace_sink is not None:
            trace_sink(rec)
    return SolveResult(x=best_x, f=best_f, trace=records, n_iters=len(records),
                       n_oracle_evals=n_evals, reason=reason, elapsed_s=elapsed)
