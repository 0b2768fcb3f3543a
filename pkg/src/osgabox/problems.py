"""Test-problem zoo: regularized regression objectives and deblurring models.

Synthetic instances use a seeded ill-conditioned dense matrix A = G D H^T
(orthonormalized Gaussian factors, geometric singular spectrum from 1 down to
1e-6) with data ``b = A x_true + 0.1 * uniform`` and the box
[0.05, 0.95]^n.  Deblurring instances pair a periodic blur with a total
variation regularizer over the box [0, 1]^(mn).

Objective kinds combine a data term with a regularizer, f = data + w * reg:

    l22l22r  0.5||Ax-b||^2 + w * 0.5||x||^2      l22itv  0.5||Ax-b||^2 + w*ITV
    l22l1r   0.5||Ax-b||^2 + w * ||x||_1         l1itv   ||Ax-b||_1    + w*ITV
    l1l22r   ||Ax-b||_1    + w * 0.5||x||^2      l22atv  0.5||Ax-b||^2 + w*ATV
    l1l1r    ||Ax-b||_1    + w * ||x||_1         l1atv   ||Ax-b||_1    + w*ATV

``sign(0) = 0`` throughout, so every returned vector is a valid subgradient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BoxDomain, FirstOrderOracle, Vector
from .operators import DenseOperator, LinearOperator
from .rng import SplitMix64
from .tv import atv_subgradient, atv_value, itv_subgradient, itv_value

SYNTHETIC_KINDS = ("l22l22r", "l22l1r", "l1l22r", "l1l1r")
TV_KINDS = ("l22itv", "l1itv", "l22atv", "l1atv")
ALL_KINDS = SYNTHETIC_KINDS + TV_KINDS

_CONDITION_DECADES = 6
_SPECTRUM_TOP = 20.0  # singular values span 20 .. 2e-5 (ratio 1e6)


@dataclass(frozen=True)
class ProblemInstance:
    op: LinearOperator
    b: Vector
    reg_weight: float
    objective_kind: str
    box: BoxDomain
    f_hat: float | None = None
    image_shape: tuple[int, int] | None = None

    def __post_init__(self):
        if self.objective_kind not in ALL_KINDS:
            raise ValueError(f"unknown objective kind {self.objective_kind!r}")
        if self.reg_weight < 0:
            raise ValueError("regularization weight must be nonnegative")
        if self.objective_kind in TV_KINDS and self.image_shape is None:
            raise ValueError("total-variation objectives need image_shape")


def _orthonormal(rng: SplitMix64, n: int) -> np.ndarray:
    m = rng.normal(n * n).reshape(n, n)
    q, r = np.linalg.qr(m)
    # fix the column signs so the factor is a deterministic function of m
    return q * np.where(np.diag(r) < 0.0, -1.0, 1.0)


def ill_conditioned_matrix(n: int, rng: SplitMix64) -> np.ndarray:
    """Dense n x n matrix with geometrically decaying singular values, ratio
    exactly 10^6 between the largest and the smallest.

    The spectrum top is scaled so the data term dominates the unit-weight
    regularizers; with a unit top singular value the least-squares pull is so
    weak that every objective collapses to its regularizer over the box.
    """
    g = _orthonormal(rng, n)
    h = _orthonormal(rng, n)
    sv = _SPECTRUM_TOP * 10.0 ** (-_CONDITION_DECADES * np.arange(n) / (n - 1))
    return (g * sv) @ h.T


def make_synthetic(kind: str, n: int, seed: int) -> ProblemInstance:
    """Deterministic regression instance of the given kind and dimension.

    Stream layout (one generator, sequential): entries of the two orthonormal
    factors, then x_true (uniform in [0,1)), then the noise uniforms.
    """
    if kind not in SYNTHETIC_KINDS:
        raise ValueError(f"unknown synthetic kind {kind!r}")
    if n < 2:
        raise ValueError("need dimension n >= 2")
    rng = SplitMix64(seed)
    a = ill_conditioned_matrix(n, rng)
    x_true = rng.uniform(n)
    b = a @ x_true + 0.1 * rng.uniform(n)
    box = BoxDomain(np.full(n, 0.05), np.full(n, 0.95))
    return ProblemInstance(op=DenseOperator(a), b=b, reg_weight=1.0,
                           objective_kind=kind, box=box)


def _data_l22(op: LinearOperator, b: Vector, x: Vector) -> tuple[float, Vector]:
    r = op.apply(x) - b
    return 0.5 * float(r @ r), op.adjoint(r)


def _data_l1(op: LinearOperator, b: Vector, x: Vector) -> tuple[float, Vector]:
    r = op.apply(x) - b
    return float(np.abs(r).sum()), op.adjoint(np.sign(r))


def objective_oracle(inst: ProblemInstance) -> FirstOrderOracle:
    """First-order oracle (value, subgradient) for the instance's objective."""
    kind = inst.objective_kind
    op, b, w = inst.op, inst.b, inst.reg_weight
    data = _data_l22 if kind.startswith("l22") else _data_l1
    shape = inst.image_shape

    if kind in TV_KINDS:
        tv_val = itv_value if kind.endswith("itv") else atv_value
        tv_sub = itv_subgradient if kind.endswith("itv") else atv_subgradient

        def oracle(x: Vector) -> tuple[float, Vector]:
            fd, gd = data(op, b, x)
            img = x.reshape(shape)
            return fd + w * tv_val(img), gd + w * tv_sub(img).ravel()
        return oracle

    if kind.endswith("l22r"):
        def oracle(x: Vector) -> tuple[float, Vector]:
            fd, gd = data(op, b, x)
            return fd + w * 0.5 * float(x @ x), gd + w * x
        return oracle

    def oracle(x: Vector) -> tuple[float, Vector]:
        fd, gd = data(op, b, x)
        return fd + w * float(np.abs(x).sum()), gd + w * np.sign(x)
    return oracle
