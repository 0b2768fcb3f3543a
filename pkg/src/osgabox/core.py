"""Shared domain types: boxes, prox terms, oracles, and the rational objective.

The solver stack minimizes a convex ``f`` over an axis-parallel box.  First-order
information comes from a black-box oracle returning ``(f(x), g(x))`` with ``g`` a
subgradient.  The auxiliary maximization at the heart of the method maximizes

    E(x) = -(gamma + <h, x>) / Q(x),      Q(x) = Q0 + 0.5 * ||x - x0||^2

over the box, where ``Q`` is a strongly convex prox term with ``Q >= Q0 > 0``.
All vectors are dense 1-D float64 arrays; images are flattened row-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.typing import NDArray

Vector = NDArray[np.float64]

# Maps a feasible point to (value, subgradient).  Oracles must be pure and
# deterministic; solvers count their own evaluations.
FirstOrderOracle = Callable[[Vector], tuple[float, Vector]]


class NonpositiveSupremumError(RuntimeError):
    """Raised when the auxiliary maximum is required to be positive but is not."""


def _vector(x) -> Vector:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"expected a vector, got array of shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class BoxDomain:
    """Box [lower, upper]; entries may be -inf (lower) or +inf (upper)."""

    lower: Vector
    upper: Vector

    def __post_init__(self):
        lo, up = _vector(self.lower), _vector(self.upper)
        if lo.shape != up.shape:
            raise ValueError("lower and upper bounds differ in length")
        if np.any(lo > up):
            raise ValueError("some lower bound exceeds its upper bound")
        if np.any(lo == np.inf) or np.any(up == -np.inf):
            raise ValueError("box contains no finite point")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)

    @property
    def dim(self) -> int:
        return self.lower.size

    def contains(self, x: Vector) -> bool:
        x = _vector(x)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass(frozen=True)
class ProxState:
    """Prox term Q(x) = q0 + 0.5*||x - center||^2 with q0 > 0."""

    center: Vector
    q0: float

    def __post_init__(self):
        object.__setattr__(self, "center", _vector(self.center))
        if not self.q0 > 0:
            raise ValueError("q0 must be positive")


@dataclass(frozen=True)
class SubproblemInput:
    """Coefficients (gamma, h) of the rational objective E."""

    gamma: float
    h: Vector

    def __post_init__(self):
        object.__setattr__(self, "h", _vector(self.h))


@dataclass(frozen=True)
class SubproblemSolution:
    """Maximizer ``u`` of E over the box, its value ``e``, and the scalar ``lam``.

    At a positive maximum with h != 0 the scalar satisfies lam * e = 1.
    ``converged`` is False only when an iterative solve hit its iteration cap.
    """

    u: Vector
    e: float
    lam: float
    converged: bool = True


def _check_len(x: Vector, n: int, what: str):
    if x.size != n:
        raise ValueError(f"{what}: length {x.size} does not match dimension {n}")


def project_to_box(y: Vector, box: BoxDomain) -> Vector:
    """Componentwise projection max(lower, min(y, upper))."""
    y = _vector(y)
    _check_len(y, box.dim, "project_to_box")
    return np.clip(y, box.lower, box.upper)


def prox_value(x: Vector, prox: ProxState) -> float:
    x = _vector(x)
    _check_len(x, prox.center.size, "prox_value")
    d = x - prox.center
    return prox.q0 + 0.5 * float(d @ d)


def prox_gradient(x: Vector, prox: ProxState) -> Vector:
    x = _vector(x)
    _check_len(x, prox.center.size, "prox_gradient")
    return x - prox.center


def e_value(inp: SubproblemInput, x: Vector, prox: ProxState) -> float:
    """E(x) = -(gamma + <h, x>)/Q(x); the denominator is always >= q0 > 0."""
    x = _vector(x)
    _check_len(x, inp.h.size, "e_value")
    return -(inp.gamma + float(inp.h @ x)) / prox_value(x, prox)
