#!/usr/bin/env python3

"""
Polar-coordinate volumes of the supported symmetric spaces.

In polar coordinates the Riemannian volume of M reads

    vol(M) = omega(S) * int_{D+} prod_roots |sin(root(a))|^mult da

over the truncated chamber D+. The same chart applied to the flat tangent
space gives

    (2 pi)^{N/2} = omega(S) * int_{C} prod_roots |root(a)|^mult exp(-|a|^2/2) da

over the open chamber C, which fixes omega(S) without using vol(M). The
structural constant A_M is omega(S) * vol(D+).
"""

import functools
import logging
import math
from typing import Callable, List, Tuple

import numpy as np
from scipy import integrate

from ..core.exceptions import UnsupportedManifoldError
from ..manifolds.base import Manifold, PolarChart

logger = logging.getLogger("BaryOpt.Temperature.Polar")


def _chamber_ranges(rank: int, top: float) -> List[Callable[..., Tuple[float, float]]]:
    # Variables run from the smallest coordinate (innermost) to the largest.
    ranges: List[Callable[..., Tuple[float, float]]] = [
        (lambda *outer: (0.0, outer[0])) for _ in range(rank - 1)
    ]
    ranges.append(lambda *outer: (0.0, top))
    return ranges


def _chamber_integral(chart: PolarChart, weight: Callable[[np.ndarray], float], top: float) -> float:
    def integrand(*coords: float) -> float:
        return weight(np.asarray(coords[::-1], dtype=float))

    if chart.rank == 1:
        value, _ = integrate.quad(integrand, 0.0, top, limit=200)
        return float(value)
    value, _ = integrate.nquad(integrand, _chamber_ranges(chart.rank, top),
                               opts={"limit": 100})
    return float(value)


@functools.lru_cache(maxsize=32)
def polar_sphere_mass(chart: PolarChart) -> float:
    """omega(S) from the flat Gaussian identity."""
    coefficients, multiplicities = chart.root_matrix()

    def weight(a: np.ndarray) -> float:
        roots = np.abs(coefficients @ a)
        return float(np.prod(roots ** multiplicities) * math.exp(-0.5 * float(a @ a)))

    mass = _chamber_integral(chart, weight, math.inf)
    total = chart.total_dimension
    return float((2.0 * math.pi) ** (total / 2.0) / mass)


@functools.lru_cache(maxsize=32)
def chamber_sine_integral(chart: PolarChart) -> float:
    """int_{D+} prod |sin(root(a))|^mult da."""
    coefficients, multiplicities = chart.root_matrix()

    def weight(a: np.ndarray) -> float:
        return float(np.prod(np.abs(np.sin(coefficients @ a)) ** multiplicities))

    return _chamber_integral(chart, weight, chart.chamber_bound)


def polar_volume(manifold: Manifold) -> float:
    """vol(M) reconstructed from the polar chart; agrees with manifold.volume."""
    chart = manifold.polar_chart()
    return polar_sphere_mass(chart) * chamber_sine_integral(chart)


def structural_constant_A_M(manifold: Manifold) -> float:
    """
    A_M = omega(S) * vol(D+).

    S^n: omega_n * pi. Gr(2, C^4): pi^4 * (pi/2)^2 / 2 = pi^6 / 8.

    Raises:
        UnsupportedManifoldError: for manifolds without a polar chart
    """
    try:
        chart = manifold.polar_chart()
    except NotImplementedError:
        raise UnsupportedManifoldError("no polar chart for this manifold",
                                       component="temperature", manifold=manifold.name)
    value = polar_sphere_mass(chart) * chart.chamber_volume
    logger.debug(f"A_M for {manifold!r}: {value:.6g}")
    return value
