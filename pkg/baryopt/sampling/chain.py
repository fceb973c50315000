#!/usr/bin/env python3

"""
Symmetric Metropolis-Hastings chain targeting the Gibbs distribution
P_T(dz) proportional to exp(-U(z)/T) vol(dz).
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterator, List, Optional

import numpy as np

from ..core.exceptions import InvalidParameterError, NonFiniteObjectiveError
from ..manifolds.base import Manifold, Point
from ..objectives.base import Objective
from ..telemetry.metrics import get_metrics_collector
from ..telemetry.tracer import Span
from ..utils.artifacts import write_csv
from .kernels import ProposalKernel

logger = logging.getLogger("BaryOpt.Sampling.Chain")

VALIDATE_EVERY = 1000
ACCEPTANCE_WARN_RANGE = (0.05, 0.95)


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator owned by a single run."""
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class ChainState:
    """
    Current chain position.

    `step` counts proposals made so far and `accepted` the moves among them.
    """
    z: Point
    value: float
    step: int = 0
    accepted: int = 0
    last_accepted: bool = True


def rejection_probability(current: float, proposed: float, temperature: float) -> float:
    """r = 1 - min(1, exp((U(z) - U(z')) / T))."""
    delta = (current - proposed) / temperature
    if delta >= 0.0:
        return 0.0
    return 1.0 - math.exp(delta)


def initial_state(init: Point, objective: Objective) -> ChainState:
    value = float(objective.evaluate(init))
    if not math.isfinite(value):
        raise NonFiniteObjectiveError(f"U(init) = {value}", component="sampling", step=0)
    return ChainState(z=init, value=value)


def mh_step(state: ChainState, objective: Objective, temperature: float,
            kernel: ProposalKernel, rng: np.random.Generator) -> ChainState:
    """
    One Metropolis-Hastings transition.

    The uniform variate is drawn on every step, so the random stream does not
    depend on the objective values.

    Raises:
        InvalidParameterError: if temperature <= 0
        NonFiniteObjectiveError: if U at the proposal is NaN or infinite
    """
    if not temperature > 0:
        raise InvalidParameterError("temperature must be positive", component="sampling",
                                    parameter="T", value=temperature)
    proposal = kernel.propose(state.z, rng)
    proposed_value = float(objective.evaluate(proposal))
    step = state.step + 1
    if not math.isfinite(proposed_value):
        raise NonFiniteObjectiveError(f"U(z) = {proposed_value} at step {step}",
                                      component="sampling", step=step)
    reject = rng.uniform() < rejection_probability(state.value, proposed_value, temperature)
    if reject:
        return replace(state, step=step, last_accepted=False)
    return ChainState(z=proposal, value=proposed_value, step=step,
                      accepted=state.accepted + 1, last_accepted=True)


def iterate_chain(state: ChainState, objective: Objective, temperature: float,
                  kernel: ProposalKernel, steps: int,
                  rng: np.random.Generator) -> Iterator[ChainState]:
    """Yield the state after each of `steps` transitions."""
    manifold = kernel.manifold
    for _ in range(steps):
        state = mh_step(state, objective, temperature, kernel, rng)
        if state.step % VALIDATE_EVERY == 0:
            manifold.validate_point(state.z)
        yield state


@dataclass
class ChainRun:
    """Outcome of run_chain; sample arrays hold post-burn-in steps only."""
    samples: np.ndarray
    values: np.ndarray
    accepted: np.ndarray
    steps: np.ndarray
    final_state: ChainState
    acceptance_rate: float
    runtime: float
    burn_in: int
    seed: int
    temperature: float

    @property
    def n_samples(self) -> int:
        return len(self.steps)


def run_chain(init: Point, objective: Objective, temperature: float, kernel: ProposalKernel,
              steps: int, burn_in: int, seed: int,
              consumer: Optional[Callable[[ChainState], None]] = None,
              record: bool = True) -> ChainRun:
    """
    Run a seeded chain.

    Args:
        init: Starting point
        objective: Objective U
        temperature: Gibbs temperature T > 0
        kernel: Symmetric proposal kernel
        steps: Number of transitions
        burn_in: Transitions discarded before samples are recorded or streamed
        seed: Seed of the run's Philox generator
        consumer: Called with every post-burn-in state
        record: Keep post-burn-in samples in the result (disable for very long
            chains whose samples are consumed on the fly)

    Returns:
        ChainRun: samples, values and diagnostics

    Raises:
        InvalidParameterError: unless 0 <= burn_in < steps (steps = burn_in = 0 is allowed)
    """
    if steps < 0 or burn_in < 0 or (steps > 0 and burn_in >= steps):
        raise InvalidParameterError("need steps > burn_in >= 0", component="sampling",
                                    parameter="burn_in", value=burn_in)
    kernel.manifold.validate_point(init)
    rng = make_rng(seed)
    state = initial_state(init, objective)

    points: List[np.ndarray] = []
    values: List[float] = []
    flags: List[bool] = []
    indices: List[int] = []

    with Span("chain", attributes={"seed": seed, "T": temperature, "steps": steps}) as span:
        for state in iterate_chain(state, objective, temperature, kernel, steps, rng):
            if state.step <= burn_in:
                continue
            if consumer is not None:
                consumer(state)
            if record:
                points.append(state.z.coords)
                values.append(state.value)
                flags.append(state.last_accepted)
                indices.append(state.step)

    rate = state.accepted / state.step if state.step else 1.0
    low, high = ACCEPTANCE_WARN_RANGE
    if state.step and not low <= rate <= high:
        logger.warning(f"Acceptance rate {rate:.3f} outside [{low}, {high}] (seed {seed}, T={temperature:g})")
    get_metrics_collector().record_chain("mh", state.step, state.accepted, span.elapsed)
    logger.debug(f"Chain seed={seed} T={temperature:g}: {state.step} steps, acceptance {rate:.3f}, "
                 f"{span.elapsed:.2f}s")

    shape = (0,) + kernel.manifold.point_shape
    return ChainRun(
        samples=np.array(points) if points else np.zeros(shape, dtype=init.coords.dtype),
        values=np.array(values, dtype=float),
        accepted=np.array(flags, dtype=bool),
        steps=np.array(indices, dtype=int),
        final_state=state,
        acceptance_rate=rate,
        runtime=span.elapsed,
        burn_in=burn_in,
        seed=seed,
        temperature=temperature,
    )


def write_samples_csv(path: str, run: ChainRun, manifold: Manifold) -> str:
    """Persist post-burn-in samples as rows (step, coords..., U, accepted)."""
    header = ["step"] + manifold.coordinate_labels() + ["U", "accepted"]
    rows = (
        [int(step)] + manifold.to_row(coords) + [float(value), bool(flag)]
        for step, coords, value, flag in zip(run.steps, run.samples, run.values, run.accepted)
    )
    return write_csv(path, header, rows)
