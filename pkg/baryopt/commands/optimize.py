#!/usr/bin/env python3

"""
`baryopt optimize`: sampler plus streaming barycentre for every seed.
"""

import logging
from typing import Any, Dict

import numpy as np

from ..baseline.annealing import summarize_runs
from ..core.config import RunConfig
from ..core.exceptions import BaryOptError
from ..manifolds.sphere import Sphere
from ..objectives.profile import objective_profile_curve
from ..telemetry.metrics import get_metrics_collector
from ..utils.artifacts import write_csv, write_json
from .common import (
    build_context,
    ergodicity_summary,
    fan_out,
    finite_or_nan,
    optimize_seed,
    resolve_temperature,
    temperature_report,
)

logger = logging.getLogger("BaryOpt.Commands.Optimize")


def cmd_optimize(config: RunConfig) -> Dict[str, Any]:
    """
    Run the optimization loop per seed and write trajectories and summary.json.

    In oracle mode the temperature report is written to temperatures.json
    first; sphere objectives with a known minimiser also get
    objective_profile.csv.

    Raises:
        BaryOptError: if any seed failed (after summary.json is written)
    """
    ctx = build_context(config)
    report = temperature_report(ctx) if config.mode == "oracle" else None
    if report is not None:
        write_json(ctx.path("temperatures.json"), {"config": config.resolved(), "report": report.to_dict()})
    temperature = resolve_temperature(ctx, report)

    if isinstance(ctx.manifold, Sphere) and ctx.x_star is not None:
        grid = np.linspace(0.0, np.pi, config.profile.curve_points)
        write_csv(ctx.path("objective_profile.csv"), ["theta", "height", "U"],
                  objective_profile_curve(ctx.objective, grid))

    logger.info(f"Optimizing {ctx.objective!r} at T={temperature:.6g} over {len(config.seeds)} seeds")
    result = fan_out(ctx, "optimize", lambda seed: optimize_seed(ctx, temperature, seed), config.seeds)

    runs = result.outputs
    summary: Dict[str, Any] = {
        "config": config.resolved(),
        "seeds": list(config.seeds),
        "temperature": temperature,
        "runs": runs,
        "failed_runs": [r.to_dict() for r in result.failed],
        "ergodicity": ergodicity_summary(ctx, temperature, config.chain.steps,
                                         config.seeds[0] if config.seeds else 0),
        "metrics": get_metrics_collector().snapshot(),
    }
    if ctx.x_star is not None:
        distances = [finite_or_nan(r.get("distance_to_minimizer")) for r in runs]
        distances += [float("nan")] * len(result.failed)
        summary["success"] = summarize_runs(distances, config.success_tolerance)
    if report is not None:
        summary["temperature_report"] = report.to_dict()
    write_json(ctx.path("summary.json"), summary)

    if result.failed:
        raise BaryOptError(f"{len(result.failed)} of {len(result.runs)} runs failed: {result.error}",
                           component="cli")
    return summary
