#!/usr/bin/env python3

"""
`baryopt compare`: barycentre method against simulated annealing over the
same seeds, start points and proposal kernel.
"""

import logging
from typing import Any, Dict, List

from ..baseline.annealing import run_annealing, summarize_runs, write_annealing_csv
from ..baseline.schedules import get_schedule
from ..core.config import RunConfig
from ..core.exceptions import BaryOptError, ConfigurationError
from ..telemetry.metrics import get_metrics_collector
from ..utils.artifacts import write_json
from .common import (
    RunContext,
    build_context,
    fan_out,
    finite_or_nan,
    initial_point,
    optimize_seed,
    resolve_temperature,
    temperature_report,
)

logger = logging.getLogger("BaryOpt.Commands.Compare")


def method_names(config: RunConfig) -> List[str]:
    return ["barycentre"] + [f"annealing_{i}_{s.kind}" for i, s in enumerate(config.compare.schedules)]


def compare_seed(ctx: RunContext, temperature: float, seed: int) -> Dict[str, Any]:
    """Every method on one seed; annealing reports its best-so-far point."""
    config = ctx.config
    outcome = {"barycentre": optimize_seed(ctx, temperature, seed, prefix="barycentre_")}
    init = initial_point(ctx, seed)
    for name, spec in zip(method_names(config)[1:], config.compare.schedules):
        schedule = get_schedule(spec.model_dump(exclude_none=True))
        result = run_annealing(init, ctx.objective, schedule, ctx.kernel, config.chain.steps, seed,
                               stride=config.compare.trajectory_stride, x_star=ctx.x_star)
        path = write_annealing_csv(ctx.path(f"{name}_trajectory_seed{seed}.csv"), result, ctx.manifold)
        distance = ctx.manifold.distance(result.best, ctx.x_star)
        get_metrics_collector().record_histogram("run.final_distance", distance, {"method": name})
        outcome[name] = {
            "seed": seed,
            "schedule": result.schedule,
            "best": result.best.to_list(),
            "best_U": result.best_value,
            "distance_to_minimizer": distance,
            "final_distance_to_minimizer": ctx.manifold.distance(result.final, ctx.x_star),
            "acceptance_rate": result.acceptance_rate,
            "runtime": result.runtime,
            "artifacts": {"trajectory": path},
        }
    return outcome


def cmd_compare(config: RunConfig) -> Dict[str, Any]:
    """
    Write per-run trajectories and comparison.json.

    Success means ending within `success_tolerance` of x*; the summary
    records rates and distance distributions, it does not rank methods.
    """
    ctx = build_context(config)
    if ctx.x_star is None:
        raise ConfigurationError("'compare' needs an objective with a known minimiser",
                                 component="cli", paths=["objective"])
    report = temperature_report(ctx) if config.mode == "oracle" else None
    temperature = resolve_temperature(ctx, report)

    result = fan_out(ctx, "compare", lambda seed: compare_seed(ctx, temperature, seed), config.seeds)
    outcomes = result.outputs
    methods = {}
    for name in method_names(config):
        distances = [finite_or_nan(o[name]["distance_to_minimizer"]) for o in outcomes]
        distances += [float("nan")] * len(result.failed)
        methods[name] = summarize_runs(distances, config.success_tolerance)
        methods[name]["runs_detail"] = [o[name] for o in outcomes]

    payload = {
        "config": config.resolved(),
        "seeds": list(config.seeds),
        "temperature": temperature,
        "methods": methods,
        "failed_runs": [r.to_dict() for r in result.failed],
    }
    write_json(ctx.path("comparison.json"), payload)
    for name, summary in methods.items():
        logger.info(f"{name}: success rate {summary['success_rate']:.2f}, "
                    f"median distance {summary['median_final_distance']}")
    if result.failed:
        raise BaryOptError(f"{len(result.failed)} of {len(result.runs)} runs failed: {result.error}",
                           component="cli")
    return payload
