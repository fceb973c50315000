#!/usr/bin/env python3

"""
Legendre polynomials and the zonal Legendre objective on spheres.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np

from ..core.exceptions import InvalidObjectiveError, InvalidParameterError
from ..manifolds.base import Point
from ..manifolds.sphere import Sphere
from .base import Objective

logger = logging.getLogger("BaryOpt.Objectives.Legendre")

# Height coordinates may overshoot 1 by rounding after exp/reproject.
_DOMAIN_SLACK = 1e-12


def legendre_p(n: int, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Legendre polynomial P_n(t) by the three-term recurrence
    (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}.

    Args:
        n: Degree (n >= 0)
        t: Scalar or array in [-1, 1]

    Returns:
        P_n(t), with the shape of t

    Raises:
        InvalidParameterError: if n < 0 or some |t| > 1
    """
    if int(n) != n or n < 0:
        raise InvalidParameterError("degree must be a nonnegative integer",
                                    component="objectives", parameter="n", value=n)
    if np.ndim(t) == 0:
        return _legendre_scalar(int(n), float(t))
    values = np.asarray(t, dtype=float)
    if np.any(np.abs(values) > 1.0 + _DOMAIN_SLACK) or not np.all(np.isfinite(values)):
        raise InvalidParameterError("Legendre argument must lie in [-1, 1]",
                                    component="objectives", parameter="t",
                                    value=float(np.max(np.abs(values))))
    values = np.clip(values, -1.0, 1.0)
    previous = np.ones_like(values)
    if n == 0:
        return previous
    current = values.copy()
    for k in range(1, int(n)):
        previous, current = current, ((2 * k + 1) * values * current - k * previous) / (k + 1)
    return current


def _legendre_scalar(n: int, t: float) -> float:
    if not abs(t) <= 1.0 + _DOMAIN_SLACK:
        raise InvalidParameterError("Legendre argument must lie in [-1, 1]",
                                    component="objectives", parameter="t", value=t)
    t = min(max(t, -1.0), 1.0)
    previous, current = 1.0, t
    if n == 0:
        return previous
    for k in range(1, n):
        previous, current = current, ((2 * k + 1) * t * current - k * previous) / (k + 1)
    return current


class LegendreObjective(Objective):
    """
    U(x) = -P_degree(x[axis]) on S^n.

    For odd degree the unique global minimum is the pole e_axis with value -1,
    and U is invariant under every rotation fixing that axis.
    """

    name = "legendre"
    symmetric = True

    def __init__(self, manifold: Optional[Sphere] = None, degree: int = 9, axis: int = -1):
        manifold = manifold or Sphere(2)
        if not isinstance(manifold, Sphere):
            raise InvalidObjectiveError("the Legendre objective lives on a sphere",
                                        component="objectives")
        if degree < 1 or degree % 2 == 0:
            # Even degrees attain the minimum at both poles.
            raise InvalidObjectiveError(f"degree must be odd and positive, got {degree}",
                                        component="objectives")
        self.degree = int(degree)
        self.axis = int(axis) % (manifold.n + 1)
        pole = np.zeros(manifold.n + 1)
        pole[self.axis] = 1.0
        super().__init__(manifold, Point(pole))

    def evaluate(self, x: Point) -> float:
        return -float(legendre_p(self.degree, x.coords[self.axis]))

    def evaluate_many(self, coords: np.ndarray) -> np.ndarray:
        return -legendre_p(self.degree, np.asarray(coords)[:, self.axis])

    def value_range(self) -> Tuple[float, float]:
        # |P_d| <= 1 on [-1, 1], attained at the poles for odd d
        return -1.0, 1.0

    def describe(self):
        record = super().describe()
        record.update({"degree": self.degree, "axis": self.axis})
        return record


def objective_legendre_sphere(degree: int = 9) -> LegendreObjective:
    """U(x) = -P_9(x_3) on S^2 with minimizer (0, 0, 1)."""
    return LegendreObjective(Sphere(2), degree=degree, axis=2)
