#!/usr/bin/env python3

"""
Minimizer data at a known global minimum x*.

The temperature thresholds need an open interval (mu_min, mu_max) around the
Hessian spectrum at x*, a radius rho on which the quadratic sandwich

    mu_min d^2(x, x*) <= 2 (U(x) - U(x*)) <= mu_max d^2(x, x*)

holds, and the gap function U_delta(delta) = inf{U(x) - U(x*) : d(x, x*) >= delta}.
For a black-box U the infimum is estimated from a sample cloud and adjusted
downwards, so computed temperatures err on the small side.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import InvalidParameterError, ProfileEstimationError, UnsupportedManifoldError
from ..manifolds.base import Manifold, Point, Tangent
from ..manifolds.sphere import Sphere
from .base import Objective

logger = logging.getLogger("BaryOpt.Objectives.Profile")

SANDWICH_ABS_TOL = 1e-12
MAX_HALVINGS = 60
_CHUNK = 50_000


def unit_tangents(manifold: Manifold, x: Point, rng: np.random.Generator, count: int) -> np.ndarray:
    """Stacked uniformly distributed unit tangent vectors at x."""
    basis = np.stack([b.vec for b in manifold.tangent_basis(x)])
    weights = rng.standard_normal((count, len(basis)))
    weights /= np.linalg.norm(weights, axis=1, keepdims=True)
    return np.tensordot(weights, basis, axes=1)


class GapFunction:
    """
    Monotone, conservative estimate of U_delta.

    Built from (distance, excess) pairs of a point cloud and from geodesic
    shells sampled on a radius grid. A query at delta takes the minimum
    excess over cloud points with d >= delta together with every shell at or
    beyond the grid radius just below delta, then subtracts the slack found
    by local refinement. The result is nondecreasing in delta and never
    negative.
    """

    def __init__(self, distances: np.ndarray, excess: np.ndarray,
                 shell_radii: np.ndarray, shell_excess: np.ndarray, slack: float):
        order = np.argsort(distances)
        self.distances = np.asarray(distances, dtype=float)[order]
        # suffix minimum: best excess among points at least this far away
        self._suffix = np.minimum.accumulate(np.asarray(excess, dtype=float)[order][::-1])[::-1]
        self.shell_radii = np.asarray(shell_radii, dtype=float)
        self._shell_suffix = np.minimum.accumulate(np.asarray(shell_excess, dtype=float)[::-1])[::-1]
        self.slack = float(max(slack, 0.0))

    def __call__(self, delta: float) -> float:
        if delta < 0:
            raise InvalidParameterError("delta must be nonnegative", component="objectives",
                                        parameter="delta", value=delta)
        candidates = [math.inf]
        i = int(np.searchsorted(self.distances, delta, side="left"))
        if i < len(self.distances):
            candidates.append(float(self._suffix[i]))
        if len(self.shell_radii):
            j = max(int(np.searchsorted(self.shell_radii, delta, side="right")) - 1, 0)
            candidates.append(float(self._shell_suffix[j]))
        best = min(candidates)
        if not math.isfinite(best):
            return 0.0
        return max(0.0, best - self.slack)

    @property
    def n_points(self) -> int:
        return int(len(self.distances))


@dataclass
class MinimizerProfile:
    """Minimizer data (x*, mu_min, mu_max, rho, U_rho, U_delta)."""
    x_star: Point
    u_star: float
    mu_min: float
    mu_max: float
    rho: float
    gap: GapFunction
    hessian_eigenvalues: np.ndarray = field(default_factory=lambda: np.empty(0))
    pad: float = 0.05

    def u_delta(self, delta: float) -> float:
        return self.gap(delta)

    @property
    def u_rho(self) -> float:
        return self.gap(self.rho)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x_star": self.x_star.to_list(),
            "u_star": self.u_star,
            "mu_min": self.mu_min,
            "mu_max": self.mu_max,
            "rho": self.rho,
            "U_rho": self.u_rho,
            "hessian_eigenvalues": [float(v) for v in self.hessian_eigenvalues],
            "pad": self.pad,
            "gap_slack": self.gap.slack,
            "gap_points": self.gap.n_points,
        }


def normal_coordinate_hessian(objective: Objective, x: Point, h: float = 1e-4) -> np.ndarray:
    """
    Hessian of v -> U(exp_x(v)) at v = 0 in an orthonormal tangent basis,
    by central second differences with step h.
    """
    manifold = objective.manifold
    basis = [b.vec for b in manifold.tangent_basis(x)]
    dim = len(basis)

    def f(vec: np.ndarray) -> float:
        return objective.evaluate(manifold.exp_map(x, Tangent(x, vec)))

    f0 = objective.evaluate(x)
    hessian = np.zeros((dim, dim))
    for i in range(dim):
        hessian[i, i] = (f(h * basis[i]) - 2.0 * f0 + f(-h * basis[i])) / (h * h)
        for j in range(i + 1, dim):
            plus, minus = basis[i] + basis[j], basis[i] - basis[j]
            value = (f(h * plus) - f(h * minus) - f(-h * minus) + f(-h * plus)) / (4.0 * h * h)
            hessian[i, j] = hessian[j, i] = value
    return hessian


def sandwich_holds(objective: Objective, x_star: Point, u_star: float, mu_min: float,
                   mu_max: float, radius: float, rng: np.random.Generator,
                   samples: int = 10_000) -> bool:
    """Check the quadratic sandwich on seeded samples of the ball B(x*, radius)."""
    manifold = objective.manifold
    radii = radius * rng.uniform(0.0, 1.0, samples)
    directions = unit_tangents(manifold, x_star, rng, samples)
    vectors = directions * radii.reshape((-1,) + (1,) * (directions.ndim - 1))
    points = manifold.exp_many(x_star, vectors)
    excess2 = 2.0 * (objective.evaluate_many(points) - u_star)
    d2 = radii ** 2
    lower_ok = np.all(mu_min * d2 <= excess2 + SANDWICH_ABS_TOL)
    upper_ok = np.all(excess2 <= mu_max * d2 + SANDWICH_ABS_TOL)
    return bool(lower_ok and upper_ok)


def _refine(objective: Objective, x_star: Point, start: Point, floor: float,
            rng: np.random.Generator, iterations: int) -> float:
    """Stochastic local descent constrained to d(x, x*) >= floor; returns the best value."""
    manifold = objective.manifold
    current, value = start, objective.evaluate(start)
    step = 0.05
    failures = 0
    for _ in range(iterations):
        direction = manifold.random_unit_tangent(current, rng)
        candidate = manifold.exp_map(current, direction.scaled(step))
        if manifold.distance(candidate, x_star) >= floor:
            candidate_value = objective.evaluate(candidate)
            if candidate_value < value:
                current, value = candidate, candidate_value
                failures = 0
                continue
        failures += 1
        if failures >= 20:
            step *= 0.5
            failures = 0
            if step < 1e-7:
                break
    return value


def build_gap_function(objective: Objective, x_star: Point, u_star: float,
                       rng: np.random.Generator, cloud_size: int = 1_000_000,
                       shell_radii: int = 400, shell_directions: int = 32,
                       refine_bands: int = 16, refine_iterations: int = 200) -> GapFunction:
    """
    Sample-based U_delta.

    Args:
        objective: Objective with minimizer x_star
        x_star: Global minimizer
        u_star: U(x_star)
        rng: Seeded generator
        cloud_size: Number of uniform samples
        shell_radii: Number of radii in the shell grid over (0, diameter]
        shell_directions: Points per shell
        refine_bands: Distance bands whose best point is locally refined
        refine_iterations: Descent iterations per refined point

    Returns:
        GapFunction: The monotone gap estimate
    """
    manifold = objective.manifold
    distances: List[np.ndarray] = []
    excess: List[np.ndarray] = []
    remaining = int(cloud_size)
    best_coords: Dict[int, Tuple[float, float, np.ndarray]] = {}
    band_width = manifold.diameter / max(refine_bands, 1)
    while remaining > 0:
        chunk = min(remaining, _CHUNK)
        coords = manifold.random_points(rng, chunk)
        d = manifold.distance_many(x_star, coords)
        e = objective.evaluate_many(coords) - u_star
        distances.append(d)
        excess.append(e)
        bands = np.minimum((d / band_width).astype(int), refine_bands - 1)
        for band in np.unique(bands):
            mask = bands == band
            idx = int(np.flatnonzero(mask)[np.argmin(e[mask])])
            if band not in best_coords or e[idx] < best_coords[band][1]:
                best_coords[int(band)] = (float(d[idx]), float(e[idx]), coords[idx].copy())
        remaining -= chunk

    radii = np.linspace(manifold.diameter / shell_radii, manifold.diameter, shell_radii)
    shell_excess = np.empty(shell_radii)
    directions = unit_tangents(manifold, x_star, rng, shell_directions)
    for j, r in enumerate(radii):
        shell = manifold.exp_many(x_star, r * directions)
        shell_excess[j] = float(np.min(objective.evaluate_many(shell))) - u_star

    slack = 0.0
    refined_d, refined_e = [], []
    for band, (d0, e0, coords) in sorted(best_coords.items()):
        value = _refine(objective, x_star, Point(coords), d0, rng, refine_iterations) - u_star
        slack = max(slack, e0 - value)
        refined_d.append(d0)
        refined_e.append(value)
    logger.debug(f"Gap function from {cloud_size} samples, {len(refined_d)} refined points, slack {slack:.3e}")

    return GapFunction(
        np.concatenate(distances + [np.array(refined_d)]),
        np.concatenate(excess + [np.array(refined_e)]),
        radii, shell_excess, slack,
    )


def estimate_minimizer_profile(objective: Objective, x_star: Optional[Point] = None,
                               pad: float = 0.05, seed: int = 0, fd_step: float = 1e-4,
                               sandwich_samples: int = 10_000, cloud_size: int = 1_000_000,
                               shell_radii: int = 400, shell_directions: int = 32,
                               refine_bands: int = 16, refine_iterations: int = 200) -> MinimizerProfile:
    """
    Estimate the minimizer data of an objective at its known minimizer.

    Args:
        objective: Objective to profile
        x_star: Minimizer; defaults to objective.known_minimizer
        pad: Spectral padding, giving (min eig (1 - pad), max eig (1 + pad))
        seed: Seed for every sampling step
        fd_step: Finite-difference step in normal coordinates

    Returns:
        MinimizerProfile: The estimated data

    Raises:
        ProfileEstimationError: if a Hessian eigenvalue is nonpositive or no
            admissible rho is found
    """
    if pad <= 0 or pad >= 1:
        raise InvalidParameterError("pad must lie in (0, 1)", component="objectives",
                                    parameter="pad", value=pad)
    x_star = x_star or objective.known_minimizer
    if x_star is None:
        raise ProfileEstimationError("no minimizer supplied and the objective has none",
                                     component="objectives")
    manifold = objective.manifold
    rng = np.random.Generator(np.random.Philox(seed))
    u_star = objective.evaluate(x_star)

    hessian = normal_coordinate_hessian(objective, x_star, fd_step)
    eigenvalues = np.linalg.eigvalsh(0.5 * (hessian + hessian.T))
    if eigenvalues[0] <= 0:
        raise ProfileEstimationError("x* is not a nondegenerate minimum",
                                     component="objectives", eigenvalues=eigenvalues)
    mu_min = float(eigenvalues[0]) * (1.0 - pad)
    mu_max = float(eigenvalues[-1]) * (1.0 + pad)
    logger.info(f"Hessian spectrum at x* in [{eigenvalues[0]:.6g}, {eigenvalues[-1]:.6g}]")

    rho = min(manifold.injectivity_radius_at(x_star), manifold.r_cx)
    for _ in range(MAX_HALVINGS):
        if sandwich_holds(objective, x_star, u_star, mu_min, mu_max, rho, rng, sandwich_samples):
            break
        rho *= 0.5
    else:
        raise ProfileEstimationError("quadratic sandwich fails on every tested ball",
                                     component="objectives", eigenvalues=eigenvalues)
    logger.info(f"Quadratic sandwich holds on B(x*, {rho:.6g})")

    gap = build_gap_function(objective, x_star, u_star, rng, cloud_size, shell_radii,
                             shell_directions, refine_bands, refine_iterations)
    return MinimizerProfile(x_star=x_star, u_star=u_star, mu_min=mu_min, mu_max=mu_max,
                            rho=rho, gap=gap, hessian_eigenvalues=eigenvalues, pad=pad)


def objective_profile_curve(objective: Objective, grid: Sequence[float]) -> List[Tuple[float, float, float]]:
    """
    U along the meridian from x* to its antipode on a sphere.

    Returns:
        Rows (theta, height, U) with height = <x, x*>.
    """
    manifold = objective.manifold
    if not isinstance(manifold, Sphere) or objective.known_minimizer is None:
        raise UnsupportedManifoldError("profile curves need a sphere objective with a known minimizer",
                                       component="objectives", manifold=manifold.name)
    x_star = objective.known_minimizer
    direction = manifold.cut_direction(x_star)
    thetas = np.asarray(grid, dtype=float)
    points = manifold.exp_many(x_star, np.outer(thetas, direction))
    values = objective.evaluate_many(points)
    heights = points @ x_star.coords
    return [(float(t), float(h), float(u)) for t, h, u in zip(thetas, heights, values)]
