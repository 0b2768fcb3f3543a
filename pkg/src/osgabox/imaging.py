"""Image degradation pipeline and a deterministic test phantom.

Images are 2-D float arrays with pixel values in [0, 1], row-major.  The
degraded observation ``y = blur(x) + noise`` is NOT clipped; metrics clip
their inputs instead.
"""

from __future__ import annotations

import numpy as np

from .operators import BlurOperator
from .rng import SplitMix64


def make_test_image(rows: int, cols: int, seed: int = 0) -> np.ndarray:
    """Piecewise-constant phantom (rectangles and a disk on a flat background)
    with seeded geometry; values in [0, 1]."""
    if rows < 8 or cols < 8:
        raise ValueError("phantom needs at least 8x8 pixels")
    rng = SplitMix64(seed)
    img = np.full((rows, cols), 0.15)
    ii, jj = np.mgrid[0:rows, 0:cols]
    for level in (0.45, 0.75):
        r0 = int(rng.uniform() * rows * 0.5)
        c0 = int(rng.uniform() * cols * 0.5)
        r1 = r0 + max(2, int(rng.uniform() * rows * 0.4))
        c1 = c0 + max(2, int(rng.uniform() * cols * 0.4))
        img[r0:min(r1, rows), c0:min(c1, cols)] = level
    cy = rows * (0.3 + 0.4 * rng.uniform())
    cx = cols * (0.3 + 0.4 * rng.uniform())
    rad = min(rows, cols) * (0.12 + 0.12 * rng.uniform())
    img[(ii - cy) ** 2 + (jj - cx) ** 2 <= rad ** 2] = 0.95
    return img


def degrade(x_t: np.ndarray, blur: BlurOperator, noise: tuple[str, float],
            seed: int) -> np.ndarray:
    """Blur the clean image and add seeded noise.

    noise: ("gaussian", sigma) adds iid N(0, sigma^2);
    ("salt_pepper", level) replaces exactly round(level*m*n) distinct pixels
    by 0 or 1 with equal probability (partial Fisher-Yates selection).
    """
    x_t = np.asarray(x_t, dtype=np.float64)
    y = blur.apply(x_t.ravel()).reshape(x_t.shape)
    kind, level = noise
    rng = SplitMix64(seed)
    if kind == "gaussian":
        if level < 0:
            raise ValueError("gaussian noise needs sigma >= 0")
        if level > 0:
            y = y + level * rng.normal(y.size).reshape(y.shape)
    elif kind == "salt_pepper":
        if not 0.0 <= level <= 1.0:
            raise ValueError("salt-and-pepper level must lie in [0, 1]")
        total = y.size
        count = int(round(level * total))
        flat = y.ravel()
        idx = np.arange(total)
        for j in range(count):
            k = j + rng.integers(total - j)
            idx[j], idx[k] = idx[k], idx[j]
            flat[idx[j]] = 1.0 if rng.uniform() < 0.5 else 0.0
        y = flat.reshape(y.shape)
    else:
        raise ValueError(f"unknown noise kind {kind!r}")
    return y
