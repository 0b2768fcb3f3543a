"""Exact solver (BCSS) for the box-constrained rational maximization.

The maximizer of E over the box lies on the projected ray
``x(lam) = clip(x0 - lam*h)``, ``lam >= 0``.  Each coordinate leaves the
moving regime and pins to a bound at a single breakpoint ``lam~_i``; between
consecutive distinct breakpoints the path is affine, ``x(lam) = p + lam*q``,
and ``E(x(lam))`` is a rational function

    (a + b*lam) / (c + d*lam + s*lam^2)

whose global maximizer has a closed form.  BCSS scans the segments, maximizes
each restricted rational, and keeps the best.  At a positive maximum with
h != 0 the winning ``lam`` equals ``1/e``.
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
    Vector,
    project_to_box,
)


class InvalidSegmentError(ValueError):
    """Rational coefficients violate the segment preconditions."""


@dataclass(frozen=True)
class BreakpointList:
    """Distinct breakpoints 0 = lam_1 < ... < lam_m < lam_{m+1} = +inf.

    ``raw`` keeps the per-coordinate values (``+inf`` where h_i = 0 or the
    relevant bound is infinite).  ``lambdas`` has at most n + 2 entries.
    """

    lambdas: Vector
    raw: Vector

    @property
    def segments(self) -> int:
        return self.lambdas.size - 1


@dataclass(frozen=True)
class SegmentCoeffs:
    """Affine path (p, q) on one segment and its rational coefficients."""

    p: Vector
    q: Vector
    a: float
    b: float
    c: float
    d: float
    s: float


def coordinate_breakpoint(i: int, x0: Vector, h: Vector, box: BoxDomain) -> float:
    """Value of lam at which coordinate i of clip(x0 - lam*h) pins to a bound.

    +inf when h_i = 0 (the coordinate never moves).  Nonnegative because the
    center x0 is feasible.
    """
    hi = h[i]
    if hi == 0.0:
        return math.inf
    if hi < 0.0:
        return -(box.upper[i] - x0[i]) / hi
    return -(box.lower[i] - x0[i]) / hi


def _raw_breakpoints(x0: Vector, h: Vector, box: BoxDomain) -> Vector:
    raw = np.full(x0.size, math.inf)
    neg = h < 0
    pos = h > 0
    with np.errstate(invalid="ignore"):
        raw[neg] = -(box.upper[neg] - x0[neg]) / h[neg]
        raw[pos] = -(box.lower[pos] - x0[pos]) / h[pos]
    return raw


def build_breakpoints(x0: Vector, h: Vector, box: BoxDomain) -> BreakpointList:
    """Sorted distinct breakpoints augmented with the sentinels 0 and +inf.

    Coordinates with a zero breakpoint merge into the leading 0, infinite ones
    into the trailing +inf.  Duplicates are merged exactly (no tolerance);
    near-duplicates stay as distinct, harmless tiny segments.
    """
    raw = _raw_breakpoints(x0, h, box)
    finite = raw[(raw > 0.0) & np.isfinite(raw)]
    inner = np.unique(finite)
    lambdas = np.concatenate(([0.0], inner, [math.inf]))
    return BreakpointList(lambdas=lambdas, raw=raw)


def segment_path(k: int, bp: BreakpointList, x0: Vector, h: Vector,
                 box: BoxDomain) -> tuple[Vector, Vector]:
    """Affine representation x(lam) = p + lam*q on segment k (1-based).

    Moving coordinates (breakpoint at or beyond the segment's right end) keep
    p_i = x0_i, q_i = -h_i; pinned ones sit at the bound h_i pushes against.
    """
    if not 1 <= k <= bp.segments:
        raise IndexError(f"segment index {k} out of range 1..{bp.segments}")
    lam_lo = bp.lambdas[k - 1]
    lam_hi = bp.lambdas[k]
    moving = (h == 0.0) | (lam_hi <= bp.raw)
    pin = np.where(h > 0.0, box.lower, box.upper)
    p = np.where(moving, x0, pin)
    q = np.where(moving, -h, 0.0)
    # consistency guard for direct calls with a foreign breakpoint list
    if np.any(~moving & (bp.raw > lam_lo)):
        raise IndexError("segment bounds straddle a coordinate breakpoint")
    return p, q


def rational_coeffs(p: Vector, q: Vector, inp: SubproblemInput,
                    prox: ProxState) -> tuple[float, float, float, float, float]:
    """Coefficients of E(p + lam*q) = (a + b*lam)/(c + d*lam + s*lam^2)."""
    dp = p - prox.center
    a = -inp.gamma - float(inp.h @ p)
    b = -float(inp.h @ q)
    c = prox.q0 + 0.5 * float(dp @ dp)
    d = float(dp @ q)
    s = 0.5 * float(q @ q)
    return a, b, c, d, s


def _phi_at(a: float, b: float, c: float, d: float, s: float, lam: float) -> float:
    if math.isinf(lam):
        # limit for lam -> inf: degree of the denominator wins unless the
        # segment is constant
        if s > 0.0 or d != 0.0:
            return 0.0
        return a / c
    return (a + b * lam) / (c + lam * (d + s * lam))


def maximize_rational(a: float, b: float, c: float, d: float, s: float,
                      lam_lo: float, lam_hi: float) -> tuple[float, float]:
    """Maximize (a + b*lam)/(c + d*lam + s*lam^2) over [lam_lo, lam_hi].

    Requires c > 0 and either s > 0 with 4*s*c > d^2 (denominator positive on
    all of R) or the degenerate constant segment s = d = b = 0.  The
    unconstrained maximizer is computed in closed form and clamped: when it
    falls outside the segment the better endpoint wins (ties toward the
    smaller lam).
    """
    if not c > 0.0:
        raise InvalidSegmentError("denominator coefficient c must be positive")
    if s < 0.0 or (s == 0.0 and (d != 0.0 or b != 0.0)):
        raise InvalidSegmentError("need s > 0, or a constant segment (s=d=b=0)")
    if s == 0.0:
        return lam_lo, a / c
    if 4.0 * s * c <= d * d:
        raise InvalidSegmentError("denominator not bounded away from zero")

    if b != 0.0:
        w = math.sqrt(max(a * a - b * (a * d - b * c) / s, 0.0))
        if b < 0.0 and a > 0.0:
            # rationalized form; (-a + w) cancels when a*d ~ b*c
            lam_hat = (b * c - a * d) / (s * (a + w))
        else:
            lam_hat = (-a + w) / b
        if lam_lo <= lam_hat <= lam_hi:
            return lam_hat, b / (2.0 * s * lam_hat + d)
    elif a > 0.0:
        lam_hat = -d / (2.0 * s)
        if lam_lo <= lam_hat <= lam_hi:
            return lam_hat, 4.0 * a * s / (4.0 * c * s - d * d)
    # b = 0, a <= 0 has supremum 0 toward infinity; endpoint comparison
    # below covers it (value at +inf is the limit 0)
    v_lo = _phi_at(a, b, c, d, s, lam_lo)
    v_hi = _phi_at(a, b, c, d, s, lam_hi)
    if v_hi > v_lo:
        return lam_hi, v_hi
    return lam_lo, v_lo


def _path_point(x0: Vector, h: Vector, lam: float, box: BoxDomain) -> Vector:
    if math.isinf(lam):
        y = np.where(h > 0.0, -math.inf, np.where(h < 0.0, math.inf, x0))
    else:
        y = x0 - lam * h
    return project_to_box(y, box)


def bcss(inp: SubproblemInput, prox: ProxState, box: BoxDomain,
         *, require_positive: bool = False) -> SubproblemSolution:
    """Globally maximize E over the box by scanning breakpoint segments.

    The per-segment coefficients are accumulated with prefix sums over the
    coordinates sorted by breakpoint, so a call costs O(n log n) regardless of
    the segment count.  Ties between segment maxima break toward the smaller
    lam.  With ``require_positive`` a nonpositive maximum raises (the outer
    algorithm guarantees a positive supremum).
    """
    x0, q0 = prox.center, prox.q0
    gamma, h = inp.gamma, inp.h
    n = x0.size
    if h.size != n or box.dim != n:
        raise ValueError("bcss: mismatched dimensions")

    if not np.any(h):
        # E = -gamma/Q(x) is maximized where Q is smallest, at the center
        e = -gamma / q0
        if require_positive and e <= 0.0:
            raise NonpositiveSupremumError("maximum of E is nonpositive")
        lam = 1.0 / e if e > 0.0 else math.inf
        return SubproblemSolution(u=x0.copy(), e=e, lam=lam)

    bp = build_breakpoints(x0, h, box)
    lambdas = bp.lambdas

    order = np.argsort(bp.raw, kind="stable")
    raw_sorted = bp.raw[order]
    h_sorted = h[order]
    x0_sorted = x0[order]
    pin = np.where(h > 0.0, box.lower, np.where(h < 0.0, box.upper, x0))[order]
    # coordinates with an infinite breakpoint never pin; zero their (unused)
    # contributions so the prefix sums stay finite
    fin = np.isfinite(raw_sorted)

    zeros = np.zeros(1)
    pin_hv = np.concatenate((zeros, np.cumsum(np.where(fin, h_sorted * pin, 0.0))))
    pin_v2 = np.concatenate((zeros, np.cumsum(np.where(fin, (pin - x0_sorted) ** 2, 0.0))))
    pre_h2 = np.concatenate((zeros, np.cumsum(h_sorted * h_sorted)))
    pre_hx = np.concatenate((zeros, np.cumsum(h_sorted * x0_sorted)))
    tot_h2 = pre_h2[-1]
    tot_hx = pre_hx[-1]

    # pinned coordinates of segment k are exactly those with breakpoint <= lam_k
    counts = np.searchsorted(raw_sorted, lambdas[:-1], side="right")

    best_e = -math.inf
    best_lam = math.inf
    for k in range(bp.segments):
        cnt = counts[k]
        a = -gamma - (pin_hv[cnt] + (tot_hx - pre_hx[cnt]))
        b = tot_h2 - pre_h2[cnt]
        c = q0 + 0.5 * pin_v2[cnt]
        s = 0.5 * b
        # d = <p - x0, q> vanishes identically: moving coordinates have
        # p_i = x0_i, pinned ones have q_i = 0
        lam_k, e_k = maximize_rational(a, b, c, 0.0, s, lambdas[k], lambdas[k + 1])
        if e_k > best_e or (e_k == best_e and lam_k < best_lam):
            best_e, best_lam = e_k, lam_k

    if require_positive and best_e <= 0.0:
        raise NonpositiveSupremumError("maximum of E is nonpositive")
    u = _path_point(x0, h, best_lam, box)
    return SubproblemSolution(u=u, e=best_e, lam=best_lam)
