#!/usr/bin/env python3

"""
Analytic constants for the temperature thresholds.

Gamma and Beta values come from scipy.special in log form, so the products
below stay accurate for large dimensions.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List

from scipy import special

from ..core.exceptions import InvalidParameterError
from ..manifolds.base import Manifold, sphere_area

logger = logging.getLogger("BaryOpt.Temperature.Constants")


def gaussian_abs_moment(k: float) -> float:
    """A(k) = E|X|^k for X ~ N(0, 1), i.e. 2^{k/2} Gamma((k+1)/2) / sqrt(pi)."""
    if k < 0:
        raise InvalidParameterError("moment order must be nonnegative", component="temperature",
                                    parameter="k", value=k)
    return float(math.exp(0.5 * k * math.log(2.0) + special.gammaln((k + 1) / 2.0)
                          - 0.5 * math.log(math.pi)))


def beta_half(n: int) -> float:
    """B_n = Beta(1/2, n/2)."""
    return float(special.beta(0.5, n / 2.0))


def ct_convexity(delta: float, kappa: float) -> float:
    """
    Ct(2 delta) = x cot(x) with x = 2 kappa delta.

    Raises:
        InvalidParameterError: unless 0 < x < pi/2
    """
    x = 2.0 * kappa * delta
    if not 0.0 < x < math.pi / 2.0:
        raise InvalidParameterError("2*kappa*delta must lie in (0, pi/2)", component="temperature",
                                    parameter="delta", value=delta)
    if x < 1e-4:
        # series x cot x = 1 - x^2/3 - x^4/45
        return 1.0 - x * x / 3.0 - x ** 4 / 45.0
    return x / math.tan(x)


@dataclass(frozen=True)
class ConstantsTable:
    """Dimension- and manifold-dependent constants (A_k, B_n, omega_n, C_n, D_n)."""
    n: int
    A: List[float]
    B_n: float
    omega_n: float
    C_n: float
    D_n: float
    diameter: float
    volume: float

    @classmethod
    def for_manifold(cls, manifold: Manifold) -> "ConstantsTable":
        n = manifold.dim
        moments = [gaussian_abs_moment(k) for k in range(n + 2)]
        b_n = beta_half(n)
        omega = sphere_area(n)
        c_n = omega * moments[n] / (manifold.diameter * manifold.volume)
        d_n = (2.0 / math.pi) ** (n - 1) * b_n / (4.0 * manifold.diameter)
        table = cls(n=n, A=moments, B_n=b_n, omega_n=omega, C_n=c_n, D_n=d_n,
                    diameter=manifold.diameter, volume=manifold.volume)
        logger.debug(f"Constants for n={n}: B_n={b_n:.6g}, C_n={c_n:.6g}, D_n={d_n:.6g}")
        return table

    def a(self, k: int) -> float:
        if 0 <= k < len(self.A):
            return self.A[k]
        return gaussian_abs_moment(k)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "A": list(self.A),
            "B_n": self.B_n,
            "omega_n": self.omega_n,
            "C_n": self.C_n,
            "D_n": self.D_n,
            "diameter": self.diameter,
            "volume": self.volume,
        }


def moment_ratio_identity(n: int) -> float:
    """sqrt(2 pi) / B_n, which equals A(n) / A(n-1)."""
    return math.sqrt(2.0 * math.pi) / beta_half(n)
