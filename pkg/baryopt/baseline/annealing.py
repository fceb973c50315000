#!/usr/bin/env python3

"""
Simulated annealing: the Metropolis-Hastings chain of baryopt.sampling with a
time-varying temperature, tracking the best point seen.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..core.exceptions import InvalidParameterError
from ..manifolds.base import Manifold, Point
from ..objectives.base import Objective
from ..sampling.chain import VALIDATE_EVERY, ChainState, initial_state, make_rng, mh_step
from ..sampling.kernels import ProposalKernel
from ..telemetry.metrics import get_metrics_collector
from ..telemetry.tracer import Span
from ..utils.artifacts import write_csv
from .schedules import AnnealingSchedule

logger = logging.getLogger("BaryOpt.Baseline.Annealing")


@dataclass
class AnnealingResult:
    """Final and best-so-far points of one annealing run, with trajectories."""
    final: Point
    final_value: float
    best: Point
    best_value: float
    steps: int
    accepted: int
    seed: int
    runtime: float
    schedule: Dict[str, Any]
    trajectory: List[List[Any]] = field(default_factory=list)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.steps if self.steps else 1.0


def run_annealing(init: Point, objective: Objective, schedule: AnnealingSchedule,
                  kernel: ProposalKernel, steps: int, seed: int, stride: int = 1,
                  x_star: Optional[Point] = None) -> AnnealingResult:
    """
    Anneal from `init` for `steps` transitions.

    Trajectory rows are (n, T_n, current coords, U(current), best U, d(best, x*))
    every `stride` steps and at the last step; the distance is empty when x*
    is unknown. Under a ConstantSchedule the chain equals run_chain with the
    same seed.

    Raises:
        InvalidParameterError: for negative steps or stride < 1
    """
    if steps < 0 or stride < 1:
        raise InvalidParameterError("need steps >= 0 and stride >= 1", component="baseline",
                                    parameter="steps", value=steps)
    manifold = kernel.manifold
    manifold.validate_point(init)
    rng = make_rng(seed)
    state: ChainState = initial_state(init, objective)
    best, best_value = state.z, state.value
    trajectory: List[List[Any]] = []

    def row(n: int, temperature: float) -> List[Any]:
        distance: Any = "" if x_star is None else manifold.distance(best, x_star)
        return [n, temperature] + manifold.to_row(state.z.coords) + [state.value, best_value, distance]

    trajectory.append(row(0, schedule(0)))
    with Span("annealing", attributes={"seed": seed, "schedule": schedule.kind}) as span:
        for n in range(1, steps + 1):
            temperature = schedule(n)
            state = mh_step(state, objective, temperature, kernel, rng)
            if state.step % VALIDATE_EVERY == 0:
                manifold.validate_point(state.z)
            if state.value < best_value:
                best, best_value = state.z, state.value
            if n % stride == 0 or n == steps:
                trajectory.append(row(n, temperature))

    get_metrics_collector().record_chain("annealing", state.step, state.accepted, span.elapsed)
    logger.debug(f"Annealing seed={seed} ({schedule.kind}): best U {best_value:.6g}")
    return AnnealingResult(final=state.z, final_value=state.value, best=best, best_value=best_value,
                           steps=state.step, accepted=state.accepted, seed=seed, runtime=span.elapsed,
                           schedule=schedule.describe(), trajectory=trajectory)


def annealing_header(manifold: Manifold) -> List[str]:
    return ["n", "T"] + manifold.coordinate_labels() + ["U", "best_U", "best_distance"]


def write_annealing_csv(path: str, result: AnnealingResult, manifold: Manifold) -> str:
    return write_csv(path, annealing_header(manifold), result.trajectory)


def summarize_runs(distances: Sequence[float], tolerance: float) -> Dict[str, Any]:
    """
    Success rate (distance < tolerance) and distance distribution of one method.

    Distances of failed runs are passed as NaN and count as failures.
    """
    values = np.asarray(list(distances), dtype=float)
    finite = values[np.isfinite(values)]
    runs = len(values)
    successes = int(np.count_nonzero(finite < tolerance))
    return {
        "runs": runs,
        "successes": successes,
        "success_rate": successes / runs if runs else 0.0,
        "median_final_distance": float(np.median(finite)) if len(finite) else None,
        "distances": [float(v) if np.isfinite(v) else None for v in values],
        "tolerance": tolerance,
    }
