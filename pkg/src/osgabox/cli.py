"""Benchmark CLI: build a problem, run one solver, write trace and summary.

Example:

    osgabox run --problem l22l22r --n 200 --seed 7 --solver osga-exact \\
        --max-iters 100 --trace trace.csv --summary summary.txt

Regression kinds (l22l22r, l22l1r, l1l22r, l1l1r) take a dimension ``--n``;
deblurring kinds (l22itv, l1itv, l22atv, l1atv) take ``--image`` (graymap) or
generate an ``--n`` x ``--n`` phantom, degrade it with the configured kernel
and noise, and require ``--lambda``.

Output files are byte-reproducible for a fixed configuration and seed; wall
times therefore go to stdout only, unless ``--wall-time`` opts into recording
them in the files.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from dataclasses import dataclass, replace

import numpy as np

from .baselines import PsgaParams, psga_solve
from .core import BoxDomain, FirstOrderOracle, Vector, project_to_box
from .imaging import degrade, make_test_image
from .metrics import delta_rel, isnr, psnr
from .operators import gaussian_kernel, make_blur, uniform_kernel
from .osga import (OsgaParams, SolveResult, default_prox, exact_subsolver,
                   inexact_subsolver, osga_solve)
from .pgm import read_image
from .problems import (SYNTHETIC_KINDS, TV_KINDS, ProblemInstance,
                       make_synthetic, objective_oracle)
from .trace import IterationTrace, summary_text, write_summary, write_trace

SOLVERS = ("osga-exact", "osga-inexact", "psga1", "psga2")

# degradation defaults: uniform 9x9 blur with white Gaussian noise of
# sigma = 10^(-3/2) for the squared-error models, 7x7 Gaussian blur
# (sigma 5) with 40% salt-and-pepper noise for the absolute-error models
_GAUSS_SIGMA = 10.0 ** -1.5


@dataclass
class RunConfig:
    problem: str
    solver: str
    n: int = 200
    image: str | None = None
    seed: int = 0
    reg_weight: float | None = None
    mu: float = 0.0
    max_iters: int = 100
    max_time: float = math.inf
    f_target: float = -math.inf
    q0: float | None = None
    noise: tuple[str, float] | None = None
    kernel: tuple = ()
    trace_path: str | None = None
    summary_path: str | None = None
    ref_min_path: str | None = None
    wall_time: bool = False

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.problem not in SYNTHETIC_KINDS + TV_KINDS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.max_iters < 1:
            raise ValueError("max-iters must be at least 1")


@dataclass
class PreparedRun:
    instance: ProblemInstance
    oracle: FirstOrderOracle
    x0: Vector
    truth: np.ndarray | None  # clean image, deblurring runs only
    observed: np.ndarray | None


def _parse_noise(text: str) -> tuple[str, float]:
    kind, _, level = text.partition(":")
    kind = {"saltpepper": "salt_pepper", "salt_pepper": "salt_pepper",
            "gaussian": "gaussian"}.get(kind)
    if kind is None or not level:
        raise argparse.ArgumentTypeError(
            "noise must be gaussian:SIGMA or saltpepper:LEVEL")
    return kind, float(level)


def _parse_kernel(text: str):
    parts = text.split(":")
    if parts[0] == "uniform" and len(parts) == 2:
        return ("uniform", int(parts[1]))
    if parts[0] == "gaussian" and len(parts) == 3:
        return ("gaussian", int(parts[1]), float(parts[2]))
    raise argparse.ArgumentTypeError(
        "kernel must be uniform:SIZE or gaussian:SIZE:SIGMA")


def _build_kernel(spec) -> np.ndarray:
    if spec[0] == "uniform":
        return uniform_kernel(spec[1])
    return gaussian_kernel(spec[1], spec[2])


def prepare_run(cfg: RunConfig) -> PreparedRun:
    if cfg.problem in SYNTHETIC_KINDS:
        inst = make_synthetic(cfg.problem, cfg.n, cfg.seed)
        if cfg.reg_weight is not None:
            inst = replace(inst, reg_weight=cfg.reg_weight)
        x0 = 0.5 * (inst.box.lower + inst.box.upper)
        return PreparedRun(inst, objective_oracle(inst), x0, None, None)

    if cfg.reg_weight is None:
        raise ValueError("deblurring problems require --lambda")
    if cfg.image is not None:
        x_t = read_image(cfg.image)
    else:
        x_t = make_test_image(cfg.n, cfg.n, cfg.seed)
    rows, cols = x_t.shape
    l1_model = cfg.problem.startswith("l1")
    kernel_spec = cfg.kernel or (("gaussian", 7, 5.0) if l1_model else ("uniform", 9))
    noise = cfg.noise or (("salt_pepper", 0.4) if l1_model else ("gaussian", _GAUSS_SIGMA))
    blur = make_blur(_build_kernel(kernel_spec), rows, cols)
    y = degrade(x_t, blur, noise, cfg.seed)
    n = rows * cols
    box = BoxDomain(np.zeros(n), np.ones(n))
    inst = ProblemInstance(op=blur, b=y.ravel(), reg_weight=cfg.reg_weight,
                           objective_kind=cfg.problem, box=box,
                           image_shape=(rows, cols))
    x0 = project_to_box(y.ravel(), box)
    return PreparedRun(inst, objective_oracle(inst), x0, x_t, y)


def _solve(cfg: RunConfig, run: PreparedRun) -> SolveResult:
    if cfg.solver.startswith("osga"):
        prox = default_prox(run.x0, cfg.q0)
        params = OsgaParams(mu=cfg.mu, f_target=cfg.f_target,
                            max_iters=cfg.max_iters, max_time=cfg.max_time)
        make_sub = exact_subsolver if cfg.solver == "osga-exact" else inexact_subsolver
        return osga_solve(run.oracle, prox, run.instance.box, params,
                          make_sub(prox, run.instance.box))
    params = PsgaParams(variant="step_size" if cfg.solver == "psga1" else "step_length",
                        max_iters=cfg.max_iters, max_time=cfg.max_time)
    return psga_solve(run.oracle, run.instance.box, run.x0, params)


def instance_key(cfg: RunConfig, run: PreparedRun) -> str:
    blob = hashlib.sha256()
    blob.update(run.instance.objective_kind.encode())
    blob.update(np.float64(run.instance.reg_weight).tobytes())
    blob.update(run.instance.op.fingerprint())
    blob.update(run.instance.b.tobytes())
    blob.update(run.instance.box.lower.tobytes())
    blob.update(run.instance.box.upper.tobytes())
    blob.update(run.x0.tobytes())
    return blob.hexdigest()


def reference_minimum(oracle: FirstOrderOracle, box: BoxDomain, x0: Vector,
                      budget: int, *, factor: int = 50, q0: float | None = None,
                      cache_path: str | None = None,
                      cache_key: str | None = None) -> float:
    """Best objective value over all four solvers run for factor*budget
    iterations; cached per instance key when a cache path is given."""
    key = None
    cache: dict[str, float] = {}
    if cache_path is not None and cache_key is not None:
        key = f"{cache_key}:{budget * factor}"
        try:
            with open(cache_path, "r", encoding="utf-8") as fh:
                cache = json.load(fh)
        except FileNotFoundError:
            cache = {}
        if key in cache:
            return float(cache[key])

    iters = budget * factor
    best = math.inf
    prox = default_prox(x0, q0)
    osga_params = OsgaParams(max_iters=iters)
    for sub in (exact_subsolver(prox, box), inexact_subsolver(prox, box)):
        best = min(best, osga_solve(oracle, prox, box, osga_params, sub).f)
    for variant in ("step_size", "step_length"):
        res = psga_solve(oracle, box, x0, PsgaParams(variant=variant, max_iters=iters))
        best = min(best, res.f)

    if key is not None:
        cache[key] = best
        with open(cache_path, "w", encoding="utf-8") as fh:
            json.dump(cache, fh, indent=0, sort_keys=True)
    return best


def run(cfg: RunConfig) -> dict:
    """Execute one configured run; returns the summary fields."""
    prep = prepare_run(cfg)
    result = _solve(cfg, prep)

    f_hat = None
    if cfg.ref_min_path is not None:
        f_hat = reference_minimum(prep.oracle, prep.instance.box, prep.x0,
                                  cfg.max_iters, q0=cfg.q0,
                                  cache_path=cfg.ref_min_path,
                                  cache_key=instance_key(cfg, prep))
    f_0 = prep.oracle(prep.x0)[0]
    if f_hat is not None and f_0 > f_hat:
        for rec in result.trace:
            rec.delta_k = delta_rel(rec.f_best, f_0, f_hat)

    summary: dict = {
        "problem": cfg.problem,
        "dimension": (f"{prep.truth.shape[0]}x{prep.truth.shape[1]}"
                      if prep.truth is not None else str(prep.instance.box.dim)),
        "solver": cfg.solver,
        "seed": cfg.seed,
        "lambda": float(prep.instance.reg_weight),
        "max_iters": cfg.max_iters,
        "iters_run": result.n_iters,
        "oracle_evals": result.n_oracle_evals,
        "stop_reason": result.reason,
        "f_best": result.f,
    }
    if cfg.wall_time:
        summary["time_s"] = result.elapsed_s
    if prep.truth is not None:
        restored = np.clip(result.x.reshape(prep.truth.shape), 0.0, 1.0)
        observed = np.clip(prep.observed, 0.0, 1.0)
        summary["psnr"] = psnr(restored, prep.truth)
        summary["isnr"] = isnr(restored, observed, prep.truth)
    if f_hat is not None:
        summary["f_hat"] = f_hat
        if f_0 > f_hat:
            summary["delta_final"] = delta_rel(result.f, f_0, f_hat)

    if cfg.trace_path is not None:
        write_trace(cfg.trace_path, result.trace, include_timing=cfg.wall_time)
    if cfg.summary_path is not None:
        write_summary(cfg.summary_path, summary)

    sys.stdout.write(summary_text(summary))
    sys.stdout.write(f"wall_time_s: {result.elapsed_s:.3f}\n")
    return summary


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="osgabox",
        description="benchmarks for box-constrained convex solvers")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run one solver on one problem")
    p.add_argument("--problem", required=True, type=str.lower,
                   choices=SYNTHETIC_KINDS + TV_KINDS)
    p.add_argument("--n", type=int, default=200,
                   help="dimension (regression) or phantom side (deblurring)")
    p.add_argument("--image", help="graymap file with the clean image")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--solver", required=True, choices=SOLVERS)
    p.add_argument("--lambda", dest="reg_weight", type=float, default=None,
                   help="regularization weight (required for deblurring)")
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--max-time", type=float, default=math.inf)
    p.add_argument("--f-target", type=float, default=-math.inf)
    p.add_argument("--q0", type=float, default=None,
                   help="override the prox constant")
    p.add_argument("--noise", type=_parse_noise, default=None,
                   metavar="gaussian:SIGMA|saltpepper:LEVEL")
    p.add_argument("--kernel", type=_parse_kernel, default=None,
                   metavar="uniform:SIZE|gaussian:SIZE:SIGMA")
    p.add_argument("--trace", dest="trace_path")
    p.add_argument("--summary", dest="summary_path")
    p.add_argument("--ref-min", dest="ref_min_path",
                   help="reference-minimum cache file; enables delta_k")
    p.add_argument("--wall-time", action="store_true",
                   help="record wall-clock times in trace/summary files "
                        "(breaks byte-for-byte reproducibility)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(problem=args.problem, solver=args.solver, n=args.n,
                    image=args.image, seed=args.seed,
                    reg_weight=args.reg_weight, mu=args.mu,
                    max_iters=args.max_iters, max_time=args.max_time,
                    f_target=args.f_target, q0=args.q0, noise=args.noise,
                    kernel=args.kernel or (), trace_path=args.trace_path,
                    summary_path=args.summary_path,
                    ref_min_path=args.ref_min_path, wall_time=args.wall_time)
    try:
        run(cfg)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
