#!/usr/bin/env python3

"""
`baryopt verify-bounds`: Monte-Carlo check of the concentration and
convexity inequalities on a temperature grid.

For every temperature one long chain is started at x*. The row compares
the expected distance to x* with the concentration bound and the smallest
Hessian form of E_T over a mesh of B(x*, delta) with the convexity bound,
both at `sigmas` standard errors. For objectives symmetric about x*, the
gradient of E_T at x* must also vanish within `sigmas` noise norms.
"""

import logging
import math
from typing import Any, Dict, List

import numpy as np

from ..barycentre.estimators import (
    FunctionalEstimate,
    estimate_gradient,
    estimate_hessian_forms,
    hessian_form_fd,
    log_log_slope,
    wasserstein_to_dirac,
)
from ..core.config import RunConfig
from ..core.exceptions import BaryOptError, VerificationFailedError
from ..manifolds.base import Manifold, Point, Tangent
from ..manifolds.sphere import Sphere
from ..sampling.chain import run_chain
from ..temperature.bounds import (
    barycentre_radius_bound,
    concentration_rhs,
    convexity_rhs,
    partition_lower_bound,
    tail_mass_bound,
)
from ..temperature.solvers import TemperatureReport
from ..utils.artifacts import write_csv, write_json
from .common import (
    RunContext,
    build_context,
    ergodicity_summary,
    fan_out,
    require_oracle,
    temperature_report,
)

logger = logging.getLogger("BaryOpt.Commands.VerifyBounds")

ROW_FIELDS = [
    "T", "applicable", "W", "W_se", "W_rhs", "W_pass",
    "hessian_min", "hessian_min_se", "hessian_rhs", "hessian_pass",
    "gradient_norm", "gradient_noise", "stationary",
    "certified_radius", "partition_lower_bound", "tail_mass_bound", "acceptance_rate",
    "p_T", "convergence_factor",
]

SLOPE_RANGE = (0.4, 0.6)
MIN_SLOPE_ROWS = 3


def temperature_grid(config: RunConfig, report: TemperatureReport) -> List[float]:
    """
    Configured temperatures, or T_o / ratio^i for i < grid_size together
    with T_delta / 2, ascending.
    """
    spec = config.verify
    if spec.temperatures:
        return sorted(float(t) for t in spec.temperatures)
    grid = {report.T_o / spec.grid_ratio ** i for i in range(spec.grid_size)}
    grid.add(0.5 * report.T_delta)
    return sorted(grid)


def hessian_mesh(manifold: Manifold, x_star: Point, delta: float, points: int, directions: int,
               seed: int) -> List[Dict[str, Any]]:
    """
    Mesh points of B(x*, delta), x* first, each with unit tangent directions.

    Radii are delta * V^{1/dim} for uniform V, which spreads points evenly in
    normal coordinates.
    """
    rng = np.random.Generator(np.random.Philox(int(seed)).jumped(2))
    mesh = []
    for i in range(points):
        if i == 0:
            x = x_star
        else:
            radius = delta * rng.uniform() ** (1.0 / manifold.dim)
            x = manifold.exp_map(x_star, manifold.random_unit_tangent(x_star, rng).scaled(radius))
        mesh.append({"x": x, "directions": [manifold.random_unit_tangent(x, rng) for _ in range(directions)]})
    return mesh


def _hessian_estimates(manifold: Manifold, x: Point, directions: List[Tangent], samples: np.ndarray,
                       fd_step: float) -> List[FunctionalEstimate]:
    if isinstance(manifold, Sphere):
        return estimate_hessian_forms(manifold, x, directions, samples)
    return [hessian_form_fd(manifold, x, u, samples, fd_step) for u in directions]


def verify_temperature(ctx: RunContext, report: TemperatureReport, mesh: List[Dict[str, Any]],
                       temperature: float, seed: int) -> Dict[str, Any]:
    """One row of the verification table."""
    spec = ctx.config.verify
    manifold, profile = ctx.manifold, report.profile
    x_star = profile.x_star
    run = run_chain(x_star, ctx.objective, temperature, ctx.kernel, spec.steps, spec.burn_in, seed)
    samples = run.samples

    applicable = temperature <= report.T_o
    w = wasserstein_to_dirac(manifold, x_star, samples)
    w_rhs = concentration_rhs(temperature, profile, manifold, report.constants)
    w_pass = w.value - spec.sigmas * w.std_error <= w_rhs

    try:
        h_rhs = convexity_rhs(temperature, report.delta, profile, manifold, report.A_M)
        tail_mass = tail_mass_bound(temperature, report.delta, profile, manifold)
    except OverflowError:
        # f(T) exceeds float range only for vanishing T; both bounds are vacuous there
        h_rhs, tail_mass = -math.inf, math.inf
    worst = None
    for node in mesh:
        for estimate in _hessian_estimates(manifold, node["x"], node["directions"], samples, spec.fd_step):
            margin = estimate.value + spec.sigmas * estimate.std_error - h_rhs
            if worst is None or margin < worst[0]:
                worst = (margin, estimate)
    h_margin, h_estimate = worst
    gradient = estimate_gradient(manifold, x_star, samples)
    ergodicity = ergodicity_summary(ctx, temperature, spec.steps, seed)

    row = {
        "T": temperature,
        "applicable": applicable,
        "W": w.value,
        "W_se": w.std_error,
        "W_rhs": w_rhs,
        "W_pass": bool(w_pass),
        "hessian_min": h_estimate.value,
        "hessian_min_se": h_estimate.std_error,
        "hessian_rhs": h_rhs,
        "hessian_pass": bool(h_margin >= 0.0),
        "gradient_norm": gradient.norm,
        "gradient_noise": gradient.noise_norm,
        "stationary": bool(gradient.norm < spec.sigmas * gradient.noise_norm),
        "certified_radius": barycentre_radius_bound(w.value, manifold.diameter),
        "partition_lower_bound": partition_lower_bound(temperature, profile, manifold),
        "tail_mass_bound": tail_mass,
        "acceptance_rate": run.acceptance_rate,
        "p_T": ergodicity["p_T"],
        "convergence_factor": ergodicity["convergence_factor"],
    }
    logger.info(f"T={temperature:.4g}: W={w.value:.4g}±{w.std_error:.2g} (rhs {w_rhs:.4g}), "
                f"min Hessian {h_estimate.value:.4g} (rhs {h_rhs:.4g})")
    return row


def slope_in_range(slope: float) -> bool:
    low, high = SLOPE_RANGE
    return bool(math.isfinite(slope) and low <= slope <= high)


def collect_failures(rows: List[Dict[str, Any]], slope: float, require_stationary: bool) -> List[str]:
    """
    Labels of the failed checks among rows with T <= T_o.

    A row fails on either inequality, and on stationarity when the objective
    is symmetric about x*. The log-log slope of W against T fails outside
    SLOPE_RANGE once at least MIN_SLOPE_ROWS rows are applicable.
    """
    failed = []
    in_range = [r for r in rows if r["applicable"]]
    for row in in_range:
        ok = row["W_pass"] and row["hessian_pass"]
        if require_stationary:
            ok = ok and row["stationary"]
        if not ok:
            failed.append(f"T={row['T']:.6g}")
    if len(in_range) >= MIN_SLOPE_ROWS and not slope_in_range(slope):
        failed.append(f"sqrt_T_slope={slope:.4g}")
    return failed


def cmd_verify_bounds(config: RunConfig) -> Dict[str, Any]:
    """
    Write verification.csv and verification.json.

    Raises:
        VerificationFailedError: if a row with T <= T_o fails a check, or the
            W-against-T slope leaves SLOPE_RANGE
    """
    ctx = build_context(config)
    x_star = require_oracle(ctx, "verify-bounds")
    report = temperature_report(ctx)
    temperatures = temperature_grid(config, report)
    spec = config.verify
    mesh = hessian_mesh(ctx.manifold, x_star, report.delta, spec.hessian_points, spec.hessian_directions,
                      spec.seed)

    def job(index: int) -> Dict[str, Any]:
        return verify_temperature(ctx, report, mesh, temperatures[index], spec.seed + index)

    result = fan_out(ctx, "verify", job, range(len(temperatures)))
    if result.failed:
        raise BaryOptError(f"verification runs failed: {result.error}", component="cli")
    rows = result.outputs

    in_range = [r for r in rows if r["applicable"]]
    slope = log_log_slope(np.array([r["T"] for r in in_range]), np.array([r["W"] for r in in_range]))
    failed = collect_failures(rows, slope, ctx.objective.symmetric)

    write_csv(ctx.path("verification.csv"), ROW_FIELDS, ([r[k] for k in ROW_FIELDS] for r in rows))
    payload = {
        "config": config.resolved(),
        "temperature_report": report.to_dict(),
        "rows": rows,
        "sqrt_T_slope": slope,
        "slope_in_range": slope_in_range(slope),
        "stationarity_checked": ctx.objective.symmetric,
        "failed_rows": failed,
        "passed": not failed,
    }
    write_json(ctx.path("verification.json"), payload)
    if failed:
        raise VerificationFailedError(f"{len(failed)} rows failed", component="cli", failed_rows=failed)
    return payload
