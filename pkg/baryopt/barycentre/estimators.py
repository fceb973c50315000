#!/usr/bin/env python3

"""
Monte-Carlo estimators over Gibbs samples.

Every estimate carries a delete-a-block jackknife standard error. Blocks are
contiguous runs of the sample array, so chain autocorrelation is absorbed
as long as blocks are longer than the correlation time.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..core.exceptions import InvalidParameterError, UnsupportedManifoldError
from ..manifolds.base import Manifold, Point, Tangent, stack_points
from ..manifolds.sphere import Sphere
from ..telemetry.metrics import get_metrics_collector

logger = logging.getLogger("BaryOpt.Barycentre.Estimators")

DEFAULT_BLOCKS = 100
CUT_DROP_WARN_FRACTION = 1e-3


@dataclass(frozen=True)
class FunctionalEstimate:
    """A Monte-Carlo value with its standard error."""
    value: float
    std_error: float
    n_samples: int

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "std_error": self.std_error, "n_samples": self.n_samples}


@dataclass(frozen=True)
class GradientEstimate:
    """
    Estimated gradient of E_T at a point.

    `coordinates` and `std_errors` refer to the orthonormal basis
    tangent_basis(x); `noise_norm` is sqrt(sum std_errors^2), the expected
    norm of a pure-noise estimate.
    """
    vector: Tangent
    coordinates: np.ndarray
    std_errors: np.ndarray
    n_samples: int
    n_dropped: int

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coordinates))

    @property
    def noise_norm(self) -> float:
        return float(np.sqrt(np.sum(self.std_errors ** 2)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "norm": self.norm,
            "noise_norm": self.noise_norm,
            "coordinates": self.coordinates.tolist(),
            "std_errors": self.std_errors.tolist(),
            "n_samples": self.n_samples,
            "n_dropped": self.n_dropped,
        }


def jackknife(values: np.ndarray, n_blocks: int = DEFAULT_BLOCKS) -> Tuple[np.ndarray, np.ndarray]:
    """
    Mean and delete-a-block jackknife standard error, along axis 0.

    Args:
        values: Array of shape (N,) or (N, d)
        n_blocks: Number of contiguous blocks; N blocks of one sample when N <= n_blocks

    Returns:
        (mean, std_error) with the trailing shape of `values`
    """
    values = np.asarray(values, dtype=float)
    n = len(values)
    if n == 0:
        raise InvalidParameterError("no samples", component="barycentre", parameter="samples", value=0)
    mean = values.mean(axis=0)
    if n == 1:
        return mean, np.zeros_like(mean)
    blocks = np.array_split(values, min(n_blocks, n))
    total = values.sum(axis=0)
    leave_out = np.stack([(total - b.sum(axis=0)) / (n - len(b)) for b in blocks])
    count = len(blocks)
    spread = leave_out - leave_out.mean(axis=0)
    variance = (count - 1) / count * np.sum(spread ** 2, axis=0)
    return mean, np.sqrt(variance)


def _scalar_estimate(values: np.ndarray, n_blocks: int) -> FunctionalEstimate:
    mean, error = jackknife(values, n_blocks)
    return FunctionalEstimate(value=float(mean), std_error=float(error), n_samples=len(values))


def _samples(samples: Any) -> np.ndarray:
    coords = stack_points(samples)
    if len(coords) == 0:
        raise InvalidParameterError("no samples", component="barycentre", parameter="samples", value=0)
    return coords


def energy_values(manifold: Manifold, x: Point, samples: Any) -> np.ndarray:
    """Per-sample terms d^2(x, z_i) / 2."""
    return 0.5 * manifold.distance_many(x, _samples(samples)) ** 2


def estimate_E_T(manifold: Manifold, x: Point, samples: Any,
                 n_blocks: int = DEFAULT_BLOCKS) -> FunctionalEstimate:
    """E_T(x) = (1/2N) sum d^2(x, z_i)."""
    return _scalar_estimate(energy_values(manifold, x, samples), n_blocks)


def _drop_cut(manifold: Manifold, x: Point, coords: np.ndarray) -> Tuple[np.ndarray, int]:
    vectors, cut = manifold.log_many(x, coords)
    dropped = int(np.count_nonzero(cut))
    if dropped:
        get_metrics_collector().increment_counter("barycentre.cut_locus.drop", float(dropped))
        if dropped > CUT_DROP_WARN_FRACTION * len(coords):
            logger.warning(f"Dropped {dropped} of {len(coords)} samples in the cut locus of x")
    return vectors[~cut], dropped


def estimate_gradient(manifold: Manifold, x: Point, samples: Any,
                      n_blocks: int = DEFAULT_BLOCKS) -> GradientEstimate:
    """
    grad E_T(x) = -(1/N) sum Log_x(z_i), cut-locus samples excluded.

    Raises:
        InvalidParameterError: if every sample lies in the cut locus
    """
    coords = _samples(samples)
    vectors, dropped = _drop_cut(manifold, x, coords)
    if len(vectors) == 0:
        raise InvalidParameterError("every sample lies in the cut locus", component="barycentre",
                                    parameter="samples", value=len(coords))
    components = -manifold.tangent_coordinates(x, vectors)
    mean, errors = jackknife(components, n_blocks)
    return GradientEstimate(
        vector=Tangent(x, -vectors.mean(axis=0)),
        coordinates=mean,
        std_errors=errors,
        n_samples=len(vectors),
        n_dropped=dropped,
    )


def _check_unit(manifold: Manifold, u: Tangent) -> None:
    residual = manifold.tangent_residual(u.base, u.vec)
    if residual > 1e-8:
        raise InvalidParameterError("direction is not tangent at its base point", component="barycentre",
                                    parameter="u", value=residual)
    length = manifold.norm(u)
    if abs(length - 1.0) > 1e-8:
        raise InvalidParameterError("direction must be a unit tangent vector", component="barycentre",
                                    parameter="u", value=length)


def _sphere_logs(manifold: Manifold, x: Point, samples: Any) -> np.ndarray:
    if not isinstance(manifold, Sphere):
        raise UnsupportedManifoldError("closed-form Hessian is available on spheres only; use hessian_form_fd",
                                       component="barycentre", manifold=manifold.name)
    vectors, _ = _drop_cut(manifold, x, _samples(samples))
    if len(vectors) == 0:
        raise InvalidParameterError("every sample lies in the cut locus", component="barycentre",
                                    parameter="samples", value=0)
    return vectors


def _form_values(vectors: np.ndarray, u: np.ndarray) -> np.ndarray:
    r = np.linalg.norm(vectors, axis=1)
    safe = np.where(r > 0.0, r, 1.0)
    radial = np.where(r > 0.0, (vectors @ u) / safe, 0.0)
    transverse = safe / np.tan(safe)
    # r = 0 gives the identity form
    return np.where(r > 0.0, radial ** 2 + transverse * (1.0 - radial ** 2), 1.0)


def hessian_form_values(manifold: Manifold, x: Point, u: Tangent, samples: Any) -> np.ndarray:
    """
    Per-sample H_x(z)(u, u) on a sphere.

    Radial eigenvalue 1 and transverse eigenvalue r cot r, r = d(x, z).
    """
    _check_unit(manifold, u)
    return _form_values(_sphere_logs(manifold, x, samples), u.vec)


def estimate_hessian_form(manifold: Manifold, x: Point, u: Tangent, samples: Any,
                          n_blocks: int = DEFAULT_BLOCKS) -> FunctionalEstimate:
    """Hess E_T(x)(u, u) = (1/N) sum H_x(z_i)(u, u) for a unit tangent u."""
    return _scalar_estimate(hessian_form_values(manifold, x, u, samples), n_blocks)


def estimate_hessian_forms(manifold: Manifold, x: Point, directions: Sequence[Tangent], samples: Any,
                           n_blocks: int = DEFAULT_BLOCKS) -> List[FunctionalEstimate]:
    """estimate_hessian_form for several directions, sharing one pass of logarithms."""
    for u in directions:
        _check_unit(manifold, u)
    vectors = _sphere_logs(manifold, x, samples)
    return [_scalar_estimate(_form_values(vectors, u.vec), n_blocks) for u in directions]


def hessian_form_fd(manifold: Manifold, x: Point, u: Tangent, samples: Any, h: float = 1e-3,
                    n_blocks: int = DEFAULT_BLOCKS) -> FunctionalEstimate:
    """
    Second difference [E(exp(x, hu)) - 2 E(x) + E(exp(x, -hu))] / h^2 on shared samples.
    """
    if not h > 0:
        raise InvalidParameterError("step must be positive", component="barycentre", parameter="h", value=h)
    coords = _samples(samples)
    plus = manifold.exp_map(x, u.scaled(h))
    minus = manifold.exp_map(x, u.scaled(-h))
    values = (energy_values(manifold, plus, coords)
              - 2.0 * energy_values(manifold, x, coords)
              + energy_values(manifold, minus, coords)) / (h * h)
    return _scalar_estimate(values, n_blocks)


def wasserstein_to_dirac(manifold: Manifold, x_star: Point, samples: Any,
                         n_blocks: int = DEFAULT_BLOCKS) -> FunctionalEstimate:
    """W(P_T, delta_{x*}) = E d(x*, z), estimated by the sample mean."""
    return _scalar_estimate(manifold.distance_many(x_star, _samples(samples)), n_blocks)


def log_log_slope(temperatures: np.ndarray, values: np.ndarray) -> float:
    """Least-squares slope of log(values) against log(temperatures)."""
    t = np.log(np.asarray(temperatures, dtype=float))
    v = np.log(np.asarray(values, dtype=float))
    if len(t) < 2 or not np.all(np.isfinite(v)):
        return math.nan
    slope, _ = np.polyfit(t, v, 1)
    return float(slope)
