#!/usr/bin/env python3

"""
Scalar-equation solvers for the temperature thresholds T_o and T_delta.

Each threshold is the infimum of a set {T : g(T) > c}. The functions g are
not globally monotone, so the solver scans upward from a tiny temperature in
geometric steps and bisects the first bracket where the inequality starts to
hold. All work happens in log space.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

from ..core.exceptions import InvalidParameterError
from ..manifolds.base import Manifold
from ..objectives.profile import MinimizerProfile
from .bounds import convexity_threshold, log_f_gibbs_tail, log_f_truncation
from .constants import ConstantsTable, ct_convexity
from .polar import structural_constant_A_M

logger = logging.getLogger("BaryOpt.Temperature.Solvers")

SCAN_START = 1e-12
SCAN_TOP = 1e6
SCAN_FACTOR = 1.05
BISECT_REL_TOL = 1e-12
BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class Crossing:
    """
    Bracket around the infimum of {T : g(T) > c}.

    `lower` does not violate, `upper` does. When no crossing exists below the
    scan top, both equal the top and `found` is False. When the inequality
    already holds at the scan start, both equal the start: the infimum lies
    below it and the start serves as a positive floor.
    """
    lower: float
    upper: float
    found: bool

    @property
    def value(self) -> float:
        return self.lower

    def to_dict(self) -> Dict[str, Any]:
        return {"lower": self.lower, "upper": self.upper, "found": self.found}


def find_crossing(log_g: Callable[[float], float], log_c: float, start: float = SCAN_START,
                  top: float = SCAN_TOP, factor: float = SCAN_FACTOR, rel_tol: float = BISECT_REL_TOL,
                  max_iter: int = BISECT_MAX_ITER, label: str = "threshold",
                  warn: bool = True) -> Crossing:
    """
    Smallest T in [start, top] where log_g(T) > log_c starts to hold.

    Args:
        log_g: Logarithm of the left-hand side
        log_c: Logarithm of the constant right-hand side
        start: First scanned temperature
        top: Scan ceiling, returned when no crossing exists
        factor: Geometric scan step
        rel_tol: Relative bracket width ending the bisection
        max_iter: Bisection iteration cap
        label: Name used in log messages
        warn: Log a warning (instead of info) when no crossing is found

    Returns:
        Crossing: the bracket
    """
    if not 0 < start < top or factor <= 1.0:
        raise InvalidParameterError("need 0 < start < top and factor > 1", component="temperature",
                                    parameter="start", value=start)
    if log_g(start) > log_c:
        logger.warning(f"{label} lies below the scan start {start:.3g}; using the start as floor")
        return Crossing(lower=start, upper=start, found=True)
    lo = start
    hi: Optional[float] = None
    while lo < top:
        candidate = min(lo * factor, top)
        if log_g(candidate) > log_c:
            hi = candidate
            break
        lo = candidate
    if hi is None:
        message = f"No crossing for {label} below {top:.3g}; every scanned temperature is admissible"
        if warn:
            logger.warning(message)
        else:
            logger.info(message)
        return Crossing(lower=top, upper=top, found=False)
    for _ in range(max_iter):
        if (hi - lo) <= rel_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if log_g(mid) > log_c:
            hi = mid
        else:
            lo = mid
    return Crossing(lower=lo, upper=hi, found=True)


@dataclass(frozen=True)
class ThresholdResult:
    """A pair of thresholds and their minimum."""
    first: float
    second: float
    value: float
    brackets: Dict[str, Crossing] = field(default_factory=dict)
    levels: Dict[str, float] = field(default_factory=dict)

    def __iter__(self):
        return iter((self.first, self.second, self.value))


def solve_T_o(profile: MinimizerProfile, manifold: Manifold, constants: ConstantsTable,
              top: float = SCAN_TOP) -> ThresholdResult:
    """
    T_o = min(T_o1, T_o2) with
    T_o1 = inf{T : f(T, n-2, rho) > rho^{2-n} A_{n-1}} and
    T_o2 = inf{T : f(T, n+1, rho) > (mu_max/mu_min)^{n/2} C_n}.
    """
    n = manifold.dim
    rho = profile.rho
    log_c1 = (2 - n) * math.log(rho) + math.log(constants.a(n - 1))
    log_c2 = 0.5 * n * math.log(profile.mu_max / profile.mu_min) + math.log(constants.C_n)
    first = find_crossing(lambda T: log_f_truncation(T, n - 2, rho, profile), log_c1,
                          top=top, label="T_o1")
    second = find_crossing(lambda T: log_f_truncation(T, n + 1, rho, profile), log_c2,
                           top=top, label="T_o2")
    value = min(first.value, second.value)
    logger.info(f"T_o1={first.value:.6g}, T_o2={second.value:.6g}, T_o={value:.6g}")
    return ThresholdResult(first.value, second.value, value,
                           brackets={"T_o1": first, "T_o2": second},
                           levels={"T_o1": math.exp(log_c1), "T_o2": math.exp(log_c2)})


def t_delta_first_closed_form(delta: float, profile: MinimizerProfile, constants: ConstantsTable,
                              n: int) -> float:
    """Crossing of sqrt(2 pi)(T/mu_min)^{1/2} with delta^2 (mu_min/mu_max)^{n/2} D_n."""
    level = delta ** 2 * (profile.mu_min / profile.mu_max) ** (n / 2.0) * constants.D_n
    return profile.mu_min * level ** 2 / (2.0 * math.pi)


def solve_T_delta(delta: float, epsilon: Optional[float], T_o: float, profile: MinimizerProfile,
                  manifold: Manifold, constants: ConstantsTable,
                  a_m: Optional[float] = None) -> ThresholdResult:
    """
    T_delta = min(T_delta1, T_delta2) - epsilon, both thresholds restricted to T <= T_o.

    Args:
        delta: Radius in (0, r_cx/2)
        epsilon: Margin; defaults to 1e-3 * min(T_delta1, T_delta2)
        T_o: Result of solve_T_o
        a_m: Structural constant; computed from the polar chart when omitted

    Raises:
        InvalidParameterError: if delta is out of range, T_o <= 0, or epsilon would make T_delta <= 0
    """
    if not 0.0 < delta < manifold.r_cx / 2.0:
        raise InvalidParameterError(f"delta must lie in (0, r_cx/2) = (0, {manifold.r_cx / 2.0:.6g})",
                                    component="temperature", parameter="delta", value=delta)
    if not T_o > 0:
        raise InvalidParameterError("T_o must be positive", component="temperature",
                                    parameter="T_o", value=T_o)
    n = manifold.dim
    a_m = structural_constant_A_M(manifold) if a_m is None else a_m

    first = min(t_delta_first_closed_form(delta, profile, constants, n), T_o)
    level = convexity_threshold(delta, manifold, a_m)
    second_crossing = find_crossing(lambda T: log_f_gibbs_tail(T, delta, profile, manifold),
                                    math.log(level), start=min(SCAN_START, 0.5 * T_o), top=T_o,
                                    label="T_delta2", warn=False)
    second = second_crossing.value
    smallest = min(first, second)
    if epsilon is None:
        epsilon = 1e-3 * smallest
    if not 0.0 < epsilon < smallest:
        raise InvalidParameterError(f"epsilon must lie in (0, {smallest:.6g})",
                                    component="temperature", parameter="epsilon", value=epsilon)
    value = smallest - epsilon
    logger.info(f"T_delta1={first:.6g}, T_delta2={second:.6g}, T_delta={value:.6g}")
    return ThresholdResult(first, second, value, brackets={"T_delta2": second_crossing},
                           levels={"T_delta2": level, "epsilon": epsilon})


@dataclass
class TemperatureReport:
    """Thresholds together with every input they were solved against."""
    T_o1: float
    T_o2: float
    T_o: float
    T_delta1: float
    T_delta2: float
    T_delta: float
    epsilon: float
    delta: float
    A_M: float
    Ct: float
    constants: ConstantsTable
    profile: MinimizerProfile
    manifold: Manifold
    brackets: Dict[str, Crossing] = field(default_factory=dict)
    levels: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "T_o1": self.T_o1,
            "T_o2": self.T_o2,
            "T_o": self.T_o,
            "T_delta1": self.T_delta1,
            "T_delta2": self.T_delta2,
            "T_delta": self.T_delta,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "A_M": self.A_M,
            "Ct_2delta": self.Ct,
            "U_delta": self.profile.u_delta(self.delta),
            "constants": self.constants.to_dict(),
            "profile": self.profile.to_dict(),
            "manifold": self.manifold.descriptor().to_dict(),
            "brackets": {k: v.to_dict() for k, v in self.brackets.items()},
            "levels": dict(self.levels),
        }


def compute_temperature_report(profile: MinimizerProfile, manifold: Manifold, delta: float,
                               epsilon: Optional[float] = None) -> TemperatureReport:
    """Solve T_o and T_delta for one profile and radius."""
    constants = ConstantsTable.for_manifold(manifold)
    a_m = structural_constant_A_M(manifold)
    t_o = solve_T_o(profile, manifold, constants)
    t_delta = solve_T_delta(delta, epsilon, t_o.value, profile, manifold, constants, a_m)
    return TemperatureReport(
        T_o1=t_o.first, T_o2=t_o.second, T_o=t_o.value,
        T_delta1=t_delta.first, T_delta2=t_delta.second, T_delta=t_delta.value,
        epsilon=t_delta.levels["epsilon"], delta=delta, A_M=a_m,
        Ct=ct_convexity(delta, math.sqrt(manifold.kappa_sq)),
        constants=constants, profile=profile, manifold=manifold,
        brackets={**t_o.brackets, **t_delta.brackets},
        levels={**t_o.levels, **t_delta.levels},
    )
