"""Discrete total variation of a grayscale image, isotropic and anisotropic.

For an m x n image the interior terms couple the down- and right-neighbor
differences; the last column contributes its vertical differences and the
last row its horizontal ones.  Subgradients use 0 wherever a term's magnitude
vanishes (0 is a valid subgradient element at the kink).
"""

from __future__ import annotations

import numpy as np


def _diffs(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2 or x.shape[1] < 2:
        raise ValueError("total variation needs an image of at least 2x2")
    dv = x[1:, :] - x[:-1, :]   # down-neighbor differences, (m-1, n)
    dh = x[:, 1:] - x[:, :-1]   # right-neighbor differences, (m, n-1)
    return dv, dh


def itv_value(x: np.ndarray) -> float:
    dv, dh = _diffs(x)
    interior = np.sqrt(dv[:, :-1] ** 2 + dh[:-1, :] ** 2)
    return float(interior.sum() + np.abs(dv[:, -1]).sum() + np.abs(dh[-1, :]).sum())


def itv_subgradient(x: np.ndarray) -> np.ndarray:
    dv, dh = _diffs(x)
    g = np.zeros_like(np.asarray(x, dtype=np.float64))
    mag = np.sqrt(dv[:, :-1] ** 2 + dh[:-1, :] ** 2)
    safe = np.where(mag > 0.0, mag, 1.0)
    tv_ = np.where(mag > 0.0, dv[:, :-1] / safe, 0.0)
    th_ = np.where(mag > 0.0, dh[:-1, :] / safe, 0.0)
    g[1:, :-1] += tv_
    g[:-1, 1:] += th_
    g[:-1, :-1] -= tv_ + th_
    s = np.sign(dv[:, -1])
    g[1:, -1] += s
    g[:-1, -1] -= s
    s = np.sign(dh[-1, :])
    g[-1, 1:] += s
    g[-1, :-1] -= s
    return g


def atv_value(x: np.ndarray) -> float:
    dv, dh = _diffs(x)
    return float(np.abs(dv).sum() + np.abs(dh).sum())


def atv_subgradient(x: np.ndarray) -> np.ndarray:
    dv, dh = _diffs(x)
    g = np.zeros_like(np.asarray(x, dtype=np.float64))
    s = np.sign(dv)
    g[1:, :] += s
    g[:-1, :] -= s
    s = np.sign(dh)
    g[:, 1:] += s
    g[:, :-1] -= s
    return g
