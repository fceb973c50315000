#!/usr/bin/env python3

"""
Pieces shared by the CLI verbs: building the run context, resolving the
temperature, and running one seeded barycentre optimization.
"""

import logging
import math
import os
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..barycentre.tracker import BarycentreTracker, TrajectoryRecorder
from ..core.config import RunConfig
from ..core.exceptions import ConfigurationError
from ..manifolds.base import Manifold, Point
from ..manifolds.factory import get_manifold
from ..objectives.base import Objective, objective_value_range
from ..objectives.factory import get_objective
from ..objectives.profile import estimate_minimizer_profile
from ..sampling.chain import run_chain, write_samples_csv
from ..sampling.kernels import ProposalKernel, get_kernel
from ..telemetry.metrics import get_metrics_collector
from ..temperature.bounds import convergence_factor, ergodicity_floor
from ..temperature.solvers import TemperatureReport, compute_temperature_report
from ..workflows.base import FanoutResult
from ..workflows.fanout import SeedFanout, resolve_threads

logger = logging.getLogger("BaryOpt.Commands.Common")


@dataclass
class RunContext:
    """Objects built once per CLI invocation and shared by every seed."""
    config: RunConfig
    manifold: Manifold
    objective: Objective
    kernel: ProposalKernel

    @property
    def x_star(self) -> Optional[Point]:
        return self.objective.known_minimizer

    @property
    def output_dir(self) -> str:
        return self.config.output_dir

    def path(self, name: str) -> str:
        return os.path.join(self.output_dir, name)


def build_context(config: RunConfig) -> RunContext:
    manifold = get_manifold(config.manifold_config())
    objective = get_objective(config.objective_config(), manifold)
    kernel = get_kernel(config.kernel.model_dump(), objective.manifold)
    os.makedirs(config.output_dir, exist_ok=True)
    return RunContext(config=config, manifold=objective.manifold, objective=objective, kernel=kernel)


def require_oracle(ctx: RunContext, verb: str) -> Point:
    """x* for verbs that only make sense when the minimiser is known."""
    if ctx.config.mode != "oracle":
        raise ConfigurationError(f"'{verb}' needs mode: oracle", component="cli", paths=["mode"])
    if ctx.x_star is None:
        raise ConfigurationError(f"'{verb}' needs an objective with a known minimiser",
                                 component="cli", paths=["objective"])
    return ctx.x_star


def resolve_delta(ctx: RunContext) -> float:
    """Configured delta, or delta_fraction * r_cx; must lie in (0, r_cx/2)."""
    r_cx = ctx.manifold.r_cx
    delta = ctx.config.delta if ctx.config.delta is not None else ctx.config.verify.delta_fraction * r_cx
    if not 0.0 < delta < r_cx / 2.0:
        raise ConfigurationError(f"delta must lie in (0, r_cx/2) = (0, {r_cx / 2.0:.6g}), got {delta}",
                                 component="cli", paths=["delta"])
    return delta


def temperature_report(ctx: RunContext) -> TemperatureReport:
    """Profile the objective at x* and solve both thresholds."""
    require_oracle(ctx, "temperatures")
    delta = resolve_delta(ctx)
    params = ctx.config.profile.model_dump()
    params.pop("curve_points")
    profile = estimate_minimizer_profile(ctx.objective, **params)
    return compute_temperature_report(profile, ctx.manifold, delta, ctx.config.epsilon)


def resolve_temperature(ctx: RunContext, report: Optional[TemperatureReport]) -> float:
    """The configured temperature; in oracle mode T_delta when none is set."""
    if ctx.config.temperature is not None:
        return ctx.config.temperature
    if report is None:
        raise ConfigurationError("no temperature configured", component="cli", paths=["temperature"])
    logger.info(f"Using T = T_delta = {report.T_delta:.6g}")
    return report.T_delta


def initial_point(ctx: RunContext, seed: int) -> Point:
    """Configured init, or a uniform point from a stream independent of the chain's."""
    if ctx.config.init is not None:
        return ctx.manifold.make_point(np.asarray(ctx.config.init), reproject=True)
    rng = np.random.Generator(np.random.Philox(int(seed)).jumped())
    return ctx.manifold.random_point(rng)


def distance_to_minimizer(ctx: RunContext, x: Point) -> Optional[float]:
    return None if ctx.x_star is None else ctx.manifold.distance(x, ctx.x_star)


def optimize_seed(ctx: RunContext, temperature: float, seed: int, prefix: str = "") -> Dict[str, Any]:
    """
    One run of the sampler plus streaming barycentre.

    Writes `{prefix}trajectory_seed{seed}.csv` (and the sample CSV when
    chain.write_samples is set) and returns the per-seed summary.
    """
    chain_spec = ctx.config.chain
    manifold = ctx.manifold
    init = initial_point(ctx, seed)
    tracker = BarycentreTracker(manifold)
    recorder = TrajectoryRecorder(manifold, ctx.objective, ctx.x_star, chain_spec.trajectory_stride)
    recorder.record(0, init, force=True)

    def consume(state) -> None:
        tracker.update(state.z)
        recorder.record(state.step, tracker.x_hat)

    run = run_chain(init, ctx.objective, temperature, ctx.kernel, chain_spec.steps,
                    chain_spec.effective_burn_in, seed, consumer=consume,
                    record=chain_spec.write_samples)
    x_hat = tracker.x_hat if tracker.x_hat is not None else init
    recorder.finish(run.final_state.step, x_hat)

    trajectory_path = recorder.write(ctx.path(f"{prefix}trajectory_seed{seed}.csv"))
    artifacts = {"trajectory": trajectory_path}
    if chain_spec.write_samples:
        artifacts["samples"] = write_samples_csv(ctx.path(f"{prefix}samples_seed{seed}.csv"), run, manifold)

    distance = distance_to_minimizer(ctx, x_hat)
    if distance is not None:
        get_metrics_collector().record_histogram("run.final_distance", distance, {"method": "barycentre"})
    return {
        "seed": seed,
        "temperature": temperature,
        "init": init.to_list(),
        "x_hat": x_hat.to_list(),
        "distance_to_minimizer": distance,
        "U_x_hat": ctx.objective.evaluate(x_hat),
        "acceptance_rate": run.acceptance_rate,
        "steps": run.final_state.step,
        "burn_in": run.burn_in,
        "tracked_samples": tracker.count,
        "runtime": run.runtime,
        "artifacts": artifacts,
    }


def fan_out(ctx: RunContext, name: str, job, seeds) -> FanoutResult:
    threads = resolve_threads(ctx.config.threads, len(seeds))
    return SeedFanout(name, max_concurrency=threads).run(job, list(seeds))


def finite_or_nan(value: Optional[float]) -> float:
    return math.nan if value is None else float(value)


def ergodicity_summary(ctx: RunContext, temperature: float, steps: int, seed: int = 0) -> Dict[str, Any]:
    """
    Minorization constant p_T of the chain and the contraction (1 - p_T)^steps.

    The oscillation of U comes from the objective's exact range when it has
    one and from uniform samples otherwise. p_T is capped at 1.
    """
    rng = np.random.Generator(np.random.Philox(int(seed)).jumped(3))
    low, high, source = objective_value_range(ctx.objective, rng)
    q_inf = ctx.kernel.min_density()
    p_t = min(ergodicity_floor(temperature, q_inf, high - low, ctx.manifold.volume), 1.0)
    if p_t == 0.0:
        logger.info(f"No uniform minorization at T={temperature:.4g} (q_inf={q_inf:.3g}); "
                    f"the convergence factor is vacuous")
    return {
        "q_inf": q_inf,
        "oscillation": high - low,
        "oscillation_source": source,
        "p_T": p_t,
        "convergence_factor": convergence_factor(p_t, steps),
    }
