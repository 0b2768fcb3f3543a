"""Restoration quality metrics and the relative-error convergence measure."""

from __future__ import annotations

import math

import numpy as np


def psnr(x: np.ndarray, x_t: np.ndarray) -> float:
    """Peak signal-to-noise ratio, 20*log10(sqrt(mn)/||x - x_t||_F), for
    pixel values in [0, 1] (the caller clips).  +inf when x equals x_t."""
    x = np.asarray(x, dtype=np.float64)
    x_t = np.asarray(x_t, dtype=np.float64)
    err = float(np.linalg.norm(x - x_t))
    if err == 0.0:
        return math.inf
    return 20.0 * math.log10(math.sqrt(x.size) / err)


def isnr(x: np.ndarray, y: np.ndarray, x_t: np.ndarray) -> float:
    """Improvement in signal-to-noise ratio of the restoration x over the
    observation y, both against the true image x_t."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    x_t = np.asarray(x_t, dtype=np.float64)
    err = float(np.linalg.norm(x - x_t))
    if err == 0.0:
        return math.inf
    return 20.0 * math.log10(float(np.linalg.norm(y - x_t)) / err)


def delta_rel(f_k: float, f_0: float, f_hat: float) -> float:
    """Relative objective error (f_k - f_hat)/(f_0 - f_hat)."""
    if not f_0 > f_hat:
        raise ValueError("need f_0 > f_hat")
    return (f_k - f_hat) / (f_0 - f_hat)
