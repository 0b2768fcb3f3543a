"""OSGA: the optimal subgradient iteration over a box, generic in the
auxiliary-subproblem solver.

Each iteration takes two trial steps built from the maximizer of the rational
model, keeps the best point seen, and lets the update scheme adapt the step
parameter ``alpha`` and accept improved model data ``(h, gamma, eta, u)``.
``eta`` is a certified upper bound on the remaining objective gap (for mu = 0)
and decreases monotonically over accepted updates; the method needs no
Lipschitz or strong-convexity constants.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .core import (
    BoxDomain,
    FirstOrderOracle,
    ProxState,
    SubproblemInput,
    SubproblemSolution,
    Vector,
    project_to_box,
    prox_gradient,
    prox_value,
)
from .exact import bcss
from .inexact import NoRootError, ZeroFinderConfig, solve_phi_root
from .trace import IterationTrace

# Subproblem solver: (gamma, h, progress in [0,1]) -> solution.
Subsolver = Callable[[float, Vector, float], SubproblemSolution]


@dataclass(frozen=True)
class OsgaParams:
    delta: float = 0.9
    alpha_max: float = 0.7
    kappa: float = 0.5
    kappa_prime: float = 0.5
    mu: float = 0.0
    f_target: float = -math.inf
    max_iters: int = 100
    max_time: float = math.inf
    eta_tol: float | None = None  # optional extra stop on eta <= eta_tol

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if not 0.0 < self.alpha_max < 1.0:
            raise ValueError("alpha_max must lie in (0, 1)")
        if not 0.0 < self.kappa_prime <= self.kappa:
            raise ValueError("need 0 < kappa_prime <= kappa")
        if self.mu < 0.0:
            raise ValueError("mu must be nonnegative")
        if self.max_iters < 0:
            raise ValueError("max_iters must be nonnegative")


@dataclass
class OsgaState:
    x_b: Vector
    f_xb: float
    g_xb: Vector
    alpha: float
    h: Vector
    gamma: float
    eta: float
    u: Vector
    iter: int = 0
    n_evals: int = 0
    terminal: bool = False


@dataclass
class SolveResult:
    x: Vector
    f: float
    trace: list[IterationTrace]
    n_iters: int
    n_oracle_evals: int
    reason: str
    elapsed_s: float


def default_prox(x0: Vector, q0: float | None = None) -> ProxState:
    """Prox term centered at the start point; q0 defaults to
    ``0.5*||x0||_2 + machine epsilon`` (note: unsquared norm)."""
    if q0 is None:
        q0 = 0.5 * float(np.linalg.norm(np.asarray(x0, dtype=float))) \
            + np.finfo(np.float64).eps
    return ProxState(center=x0, q0=q0)


def exact_subsolver(prox: ProxState, box: BoxDomain) -> Subsolver:
    def solve(gamma: float, h: Vector, progress: float = 0.0) -> SubproblemSolution:
        return bcss(SubproblemInput(gamma, h), prox, box)
    return solve


def inexact_subsolver(prox: ProxState, box: BoxDomain,
                      cfg: ZeroFinderConfig = ZeroFinderConfig()) -> Subsolver:
    # tightened near the end of the budget: eta-based error estimates degrade
    # when the last subsolves are loose
    tight = replace(cfg, rel_tol=min(cfg.rel_tol, 1e-12))

    def solve(gamma: float, h: Vector, progress: float = 0.0) -> SubproblemSolution:
        use = tight if progress >= 0.9 else cfg
        try:
            return solve_phi_root(SubproblemInput(gamma, h), prox, box, use)
        except NoRootError:
            # phi stayed positive out to lam ~ 2^512: the supremum of E is
            # zero at float precision, i.e. the remaining gap has collapsed;
            # report it so the iteration stops cleanly
            return SubproblemSolution(u=prox.center.copy(), e=0.0,
                                      lam=math.inf)
    return solve


def pus_update(alpha: float, eta: float, h: Vector, gamma: float, u: Vector,
               h_new: Vector, gamma_new: float, eta_new: float, u_new: Vector,
               params: OsgaParams) -> tuple[float, Vector, float, float, Vector]:
    """Parameter update: adapt alpha from the progress ratio R and accept the
    candidate model data whenever it improves the error bound.

    R < 1 (too little progress) contracts alpha by exp(-kappa); otherwise
    alpha grows by exp(kappa'(R-1)) capped at alpha_max.  The model tuple
    (h, gamma, eta, u) is only ever replaced as a whole: a partial swap would
    leave eta describing a pair it no longer belongs to, after which the
    candidate bound can never undercut it and the step size collapses.
    """
    den = params.delta * alpha * eta
    if den > 0.0:
        r = (eta - eta_new) / den
    else:
        # underflow guard: with eta this small any finite ratio is meaningless
        r = math.inf if eta_new < eta else 0.0
    if r < 1.0:
        alpha = alpha * math.exp(-params.kappa)
    else:
        alpha = min(alpha * math.exp(params.kappa_prime * (r - 1.0)), params.alpha_max)
    if eta_new < eta:
        h, gamma, eta, u = h_new, gamma_new, eta_new, u_new
    return alpha, h, gamma, eta, u


def osga_init(oracle: FirstOrderOracle, prox: ProxState, box: BoxDomain,
              params: OsgaParams, subsolver: Subsolver) -> OsgaState:
    """Initial state at the prox center; terminal immediately if the target
    value is already met or the gap bound is already closed."""
    x_b = prox.center.copy()
    if not box.contains(x_b):
        raise ValueError("prox center must lie in the box")
    f_xb, g_xb = oracle(x_b)
    g_xb = np.asarray(g_xb, dtype=float)
    if f_xb <= params.f_target:
        return OsgaState(x_b=x_b, f_xb=f_xb, g_xb=g_xb, alpha=params.alpha_max,
                         h=g_xb.copy(), gamma=0.0, eta=0.0, u=x_b.copy(),
                         n_evals=1, terminal=True)
    h = g_xb - params.mu * prox_gradient(x_b, prox)
    gamma = f_xb - params.mu * prox_value(x_b, prox) - float(h @ x_b)
    gamma_b = gamma - f_xb
    sol = subsolver(gamma_b, h, 0.0)
    eta = sol.e - params.mu
    return OsgaState(x_b=x_b, f_xb=f_xb, g_xb=g_xb, alpha=params.alpha_max,
                     h=h, gamma=gamma, eta=eta, u=sol.u, n_evals=1,
                     terminal=eta <= 0.0)


def osga_step(state: OsgaState, oracle: FirstOrderOracle, prox: ProxState,
              box: BoxDomain, params: OsgaParams, subsolver: Subsolver,
              progress: float = 0.0) -> OsgaState:
    """One full iteration: two model-driven trial points, best-point update,
    then the parameter update scheme."""
    if state.terminal:
        raise ValueError("osga_step called on a terminal state")
    mu = params.mu
    alpha = state.alpha
    x_b, f_xb, g_xb = state.x_b, state.f_xb, state.g_xb

    # trial point from the current model maximizer (projection only trims
    # float round-off: the convex combination is feasible in exact arithmetic)
    x = project_to_box(x_b + alpha * (state.u - x_b), box)
    f_x, g_x = oracle(x)
    g_x = np.asarray(g_x, dtype=float)
    g = g_x - mu * prox_gradient(x, prox)
    h_bar = state.h + alpha * (g - state.h)
    gamma_bar = state.gamma + alpha * (
        f_x - mu * prox_value(x, prox) - float(g @ x) - state.gamma)

    if f_x < f_xb:
        xb1, f_xb1, g_xb1 = x, f_x, g_x
    else:
        xb1, f_xb1, g_xb1 = x_b, f_xb, g_xb

    sol1 = subsolver(gamma_bar - f_xb1, h_bar, progress)
    x_p = project_to_box(x_b + alpha * (sol1.u - x_b), box)
    f_xp, g_xp = oracle(x_p)
    g_xp = np.asarray(g_xp, dtype=float)

    if f_xp < f_xb1:
        xb2, f_xb2, g_xb2 = x_p, f_xp, g_xp
    else:
        xb2, f_xb2, g_xb2 = xb1, f_xb1, g_xb1

    sol2 = subsolver(gamma_bar - f_xb2, h_bar, progress)
    eta_bar = sol2.e - mu

    if f_xb2 <= params.f_target:
        return OsgaState(x_b=xb2, f_xb=f_xb2, g_xb=g_xb2, alpha=alpha,
                         h=h_bar, gamma=gamma_bar, eta=eta_bar, u=sol2.u,
                         iter=state.iter + 1, n_evals=state.n_evals + 2,
                         terminal=True)

    alpha2, h2, gamma2, eta2, u2 = pus_update(
        alpha, state.eta, state.h, state.gamma, state.u,
        h_bar, gamma_bar, eta_bar, sol2.u, params)
    return OsgaState(x_b=xb2, f_xb=f_xb2, g_xb=g_xb2, alpha=alpha2, h=h2,
                     gamma=gamma2, eta=eta2, u=u2, iter=state.iter + 1,
                     n_evals=state.n_evals + 2, terminal=eta2 <= 0.0)


def osga_solve(oracle: FirstOrderOracle, prox: ProxState, box: BoxDomain,
               params: OsgaParams, subsolver: Subsolver,
               trace_sink: Optional[Callable[[IterationTrace], None]] = None,
               ) -> SolveResult:
    """Run the iteration until f_target, the gap bound closes, max_iters, or
    max_time; one trace record per step.  Deterministic for identical inputs
    (unless max_time cuts the run, which depends on the wall clock)."""
    t0 = time.perf_counter()
    state = osga_init(oracle, prox, box, params, subsolver)
    elapsed = time.perf_counter() - t0
    records: list[IterationTrace] = []
    reason = "max_iters"
    if state.terminal:
        reason = "f_target" if state.f_xb <= params.f_target else "gap_closed"
    eta_floor = 0.0 if params.eta_tol is None else max(0.0, params.eta_tol)

    while not state.terminal and state.iter < params.max_iters:
        if elapsed > params.max_time:
            reason = "max_time"
            break
        progress = state.iter / max(params.max_iters, 1)
        t1 = time.perf_counter()
        state = osga_step(state, oracle, prox, box, params, subsolver, progress)
        elapsed += time.perf_counter() - t1
        rec = IterationTrace(iter=state.iter, f_best=state.f_xb, eta=state.eta,
                             alpha=state.alpha, elapsed_ms=elapsed * 1e3)
        records.append(rec)
        if trace_sink is not None:
            trace_sink(rec)
        if state.f_xb <= params.f_target:
            reason = "f_target"
            break
        if state.eta <= eta_floor:
            reason = "eta_tol" if params.eta_tol is not None else "gap_closed"
            break
    return SolveResult(x=state.x_b, f=state.f_xb, trace=records,
                       n_iters=state.iter, n_oracle_evals=state.n_evals,
                       reason=reason, elapsed_s=elapsed)
