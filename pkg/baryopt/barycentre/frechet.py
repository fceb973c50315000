#!/usr/bin/env python3

"""
Batch Frechet mean by Riemannian gradient descent on the empirical energy.
"""

import logging
from typing import Any, Optional

import numpy as np

from ..core.exceptions import ConvergenceError, InvalidParameterError
from ..manifolds.base import Manifold, Point, Tangent, stack_points

logger = logging.getLogger("BaryOpt.Barycentre.Frechet")

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 500
DEFAULT_STEP = 1.0


def empirical_energy(manifold: Manifold, x: Point, samples: Any) -> float:
    """(1/2N) sum d^2(x, z_i)."""
    coords = stack_points(samples)
    return float(0.5 * np.mean(manifold.distance_many(x, coords) ** 2))


def mean_log(manifold: Manifold, x: Point, coords: np.ndarray) -> np.ndarray:
    """(1/N) sum Log_x(z_i), cut-locus samples routed through the tie-break geodesic."""
    vectors, cut = manifold.log_many(x, coords)
    if np.any(cut):
        logger.warning(f"{int(np.count_nonzero(cut))} samples in the cut locus of the iterate; "
                       f"using tie-break geodesics")
        for i in np.flatnonzero(cut):
            vectors[i] = manifold.minimizing_log(x, Point(coords[i])).vec
    return vectors.mean(axis=0)


def batch_frechet_mean(samples: Any, manifold: Manifold, tol: float = DEFAULT_TOL,
                       max_iter: int = DEFAULT_MAX_ITER, step: float = DEFAULT_STEP,
                       initial: Optional[Point] = None) -> Point:
    """
    Stationary point of the empirical energy.

    Iterates x <- Exp_x(step * mean Log_x(z_i)) until the gradient norm drops
    below `tol`. Inside a ball of radius r_cx/2 the result is the unique
    minimiser.

    Args:
        samples: Stacked coordinates or a sequence of points
        manifold: The manifold
        tol: Gradient-norm stopping threshold
        max_iter: Iteration cap
        step: Step size
        initial: Starting point; manifold.initial_mean_guess otherwise

    Raises:
        InvalidParameterError: for an empty sample set
        ConvergenceError: if max_iter is exhausted
    """
    coords = stack_points(samples)
    if len(coords) == 0:
        raise InvalidParameterError("no samples", component="barycentre", parameter="samples", value=0)
    if len(coords) == 1:
        return Point(coords[0])
    x = initial if initial is not None else manifold.initial_mean_guess(coords)
    gradient_norm = float("inf")
    for iteration in range(1, max_iter + 1):
        direction = Tangent(x, mean_log(manifold, x, coords))
        gradient_norm = manifold.norm(direction)
        if gradient_norm < tol:
            logger.debug(f"Frechet mean converged after {iteration} iterations")
            return x
        x = manifold.exp_map(x, direction.scaled(step))
    raise ConvergenceError(f"gradient norm {gradient_norm:.3e} after {max_iter} iterations",
                           component="barycentre", iterations=max_iter, residual=gradient_norm)
