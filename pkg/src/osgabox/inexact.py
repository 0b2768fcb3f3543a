"""Inexact subproblem solver: scalar root finding along the projected ray.

With ``x(lam) = clip(x0 - lam*h)`` the maximizer of E solves the scalar
equation

    phi(lam) = Q(x(lam))/lam + gamma + <h, x(lam)> = 0,

and the maximum value is e = 1/lam.  ``phi`` is strictly decreasing on
(0, inf) and diverges to +inf as lam -> 0+, so the root is bracketed by
geometric expansion and then located with alternating secant/bisection steps
(bisection whenever the secant iterate leaves the bracket).

On the nonnegative orthant with center x0 = 0 the equation collapses to a
quadratic in e and is solved in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    BoxDomain,
    NonpositiveSupremumError,
    ProxState,
    SubproblemInput,
    SubproblemSolution,
    project_to_box,
    prox_value,
)

_MAX_EXPANSIONS = 512


class NoRootError(RuntimeError):
    """Bracket expansion found no sign change."""


@dataclass(frozen=True)
class ZeroFinderConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_iters: int = 200
    bracket_growth: float = 2.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not self.bracket_growth > 1:
            raise ValueError("bracket_growth must exceed 1")


def phi(lam: float, inp: SubproblemInput, prox: ProxState, box: BoxDomain) -> float:
    """Scalar function whose positive root gives the maximizer of E."""
    if not lam > 0:
        raise ValueError("phi is defined for lam > 0 only")
    x = project_to_box(prox.center - lam * inp.h, box)
    return prox_value(x, prox) / lam + inp.gamma + float(inp.h @ x)


def solve_phi_root(inp: SubproblemInput, prox: ProxState, box: BoxDomain,
                   cfg: ZeroFinderConfig = ZeroFinderConfig()) -> SubproblemSolution:
    """Find lam with phi(lam) = 0; return u = x(lam), e = 1/lam.

    A sign change exists whenever the supremum of E is positive.  Convergence:
    |phi| below abs_tol, or bracket width below rel_tol * lam.  If the
    iteration cap is hit the bracket midpoint is returned flagged
    ``converged=False``.
    """
    f = lambda lam: phi(lam, inp, prox, box)

    lam = 1.0
    val = f(lam)
    if val == 0.0:
        return _solution_at(lam, inp, prox, box, True)
    lo = hi = lam
    f_lo = f_hi = val
    if val > 0.0:
        for _ in range(_MAX_EXPANSIONS):
            lo, f_lo = hi, f_hi
            hi = hi * cfg.bracket_growth
            f_hi = f(hi)
            if f_hi <= 0.0:
                break
        else:
            raise NoRootError("no sign change found while expanding upward")
    else:
        for _ in range(_MAX_EXPANSIONS):
            hi, f_hi = lo, f_lo
            lo = lo / cfg.bracket_growth
            f_lo = f(lo)
            if f_lo >= 0.0:
                break
        else:
            raise NoRootError("no sign change found while expanding downward")

    if f_lo == 0.0:
        return _solution_at(lo, inp, prox, box, True)
    if f_hi == 0.0:
        return _solution_at(hi, inp, prox, box, True)

    cand = 0.5 * (lo + hi)
    for it in range(cfg.max_iters):
        if it % 2 == 0:
            cand = hi - f_hi * (hi - lo) / (f_hi - f_lo)
            if not lo < cand < hi:
                cand = 0.5 * (lo + hi)
        else:
            cand = 0.5 * (lo + hi)
        f_c = f(cand)
        if abs(f_c) <= cfg.abs_tol:
            return _solution_at(cand, inp, prox, box, True)
        if f_c > 0.0:  # phi is decreasing: root lies to the right
            lo, f_lo = cand, f_c
        else:
            hi, f_hi = cand, f_c
        if hi - lo <= cfg.rel_tol * cand:
            return _solution_at(cand, inp, prox, box, True)
    return _solution_at(0.5 * (lo + hi), inp, prox, box, False)


def _solution_at(lam: float, inp: SubproblemInput, prox: ProxState,
                 box: BoxDomain, converged: bool) -> SubproblemSolution:
    u = project_to_box(prox.center - lam * inp.h, box)
    return SubproblemSolution(u=u, e=1.0 / lam, lam=lam, converged=converged)


def nonneg_closed_form(inp: SubproblemInput, prox: ProxState) -> SubproblemSolution:
    """Closed form on the nonnegative orthant with prox center at the origin.

    Along the ray, x(lam) = -lam * min(h, 0); substituting into phi = 0 gives
    q0*e^2 + gamma*e - 0.5*||min(h,0)||^2 = 0 and the maximum is the larger
    root.
    """
    if np.any(prox.center != 0.0):
        raise ValueError("closed form requires the prox center at the origin")
    h_neg = np.minimum(inp.h, 0.0)
    b1 = prox.q0
    b2 = inp.gamma
    b3 = 0.5 * float(h_neg @ h_neg) - float(inp.h @ h_neg)
    disc = b2 * b2 - 4.0 * b1 * b3
    if disc < 0.0:
        raise NonpositiveSupremumError("no positive maximum: negative discriminant")
    e = (-b2 + math.sqrt(disc)) / (2.0 * b1)
    if e <= 0.0:
        raise NonpositiveSupremumError("no positive maximum on the orthant")
    lam = 1.0 / e
    return SubproblemSolution(u=-h_neg / e, e=e, lam=lam)
