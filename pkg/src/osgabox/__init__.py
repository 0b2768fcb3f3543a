"""Bound-constrained convex optimization with the optimal subgradient
algorithm (OSGA), exact and inexact solvers for its rational auxiliary
subproblem, projected-subgradient baselines, and a benchmark problem zoo."""

from .baselines import PsgaParams, psga_solve
from .core import (BoxDomain, FirstOrderOracle, NonpositiveSupremumError,
                   ProxState, SubproblemInput, SubproblemSolution, e_value,
                   project_to_box, prox_gradient, prox_value)
from .exact import (BreakpointList, InvalidSegmentError, SegmentCoeffs, bcss,
                    build_breakpoints, coordinate_breakpoint,
                    maximize_rational, rational_coeffs, segment_path)
from .inexact import (NoRootError, ZeroFinderConfig, nonneg_closed_form, phi,
                      solve_phi_root)
from .metrics import delta_rel, isnr, psnr
from .operators import (BlurOperator, DenseOperator, LinearOperator,
                        gaussian_kernel, make_blur, uniform_kernel)
from .osga import (OsgaParams, OsgaState, SolveResult, default_prox,
                   exact_subsolver, inexact_subsolver, osga_init, osga_solve,
                   osga_step, pus_update)
from .problems import (ProblemInstance, SYNTHETIC_KINDS, TV_KINDS,
                       make_synthetic, objective_oracle)
from .rng import SplitMix64
from .trace import IterationTrace, read_summary, read_trace, write_summary, write_trace
from .tv import atv_subgradient, atv_value, itv_subgradient, itv_value

__all__ = [name for name in dir() if not name.startswith("_")]
