#!/usr/bin/env python3

"""
Closed-form bound functions: the truncation function f(T, m, rho), the Gibbs
density bound f(T), and the right-hand sides of the concentration and
convexity inequalities.
"""

import logging
import math

from ..core.exceptions import InvalidParameterError
from ..manifolds.base import Manifold
from ..objectives.profile import MinimizerProfile
from .constants import ConstantsTable, ct_convexity

logger = logging.getLogger("BaryOpt.Temperature.Bounds")


def _check_temperature(T: float) -> None:
    if not T > 0 or not math.isfinite(T):
        raise InvalidParameterError("temperature must be positive and finite",
                                    component="temperature", parameter="T", value=T)


def _check_delta(delta: float, manifold: Manifold) -> None:
    if not 0.0 < delta < manifold.r_cx / 2.0:
        raise InvalidParameterError(f"delta must lie in (0, r_cx/2) = (0, {manifold.r_cx / 2.0:.6g})",
                                    component="temperature", parameter="delta", value=delta)


def log_f_truncation(T: float, m: float, radius: float, profile: MinimizerProfile) -> float:
    _check_temperature(T)
    return (0.5 * math.log(2.0 / math.pi) + 0.5 * m * math.log(profile.mu_max / T)
            - profile.u_delta(radius) / T)


def f_truncation(T: float, m: float, radius: float, profile: MinimizerProfile) -> float:
    """f(T, m, rho) = (2/pi)^{1/2} (mu_max/T)^{m/2} exp(-U_rho/T), evaluated in log space."""
    return math.exp(log_f_truncation(T, m, radius, profile))


def log_f_gibbs_tail(T: float, delta: float, profile: MinimizerProfile, manifold: Manifold) -> float:
    _check_temperature(T)
    _check_delta(delta, manifold)
    n = manifold.dim
    return (math.log(2.0 / math.pi) + 0.5 * n * math.log(math.pi / 8.0)
            + 0.5 * n * math.log(profile.mu_max / T) - profile.u_delta(delta) / T)


def f_gibbs_tail(T: float, delta: float, profile: MinimizerProfile, manifold: Manifold) -> float:
    """
    f(T) = (2/pi)(pi/8)^{n/2}(mu_max/T)^{n/2} exp(-U_delta/T).

    Bounds the Gibbs density outside B(x*, delta) when T <= T_o.
    """
    return math.exp(log_f_gibbs_tail(T, delta, profile, manifold))


def concentration_rhs(T: float, profile: MinimizerProfile, manifold: Manifold,
                      constants: ConstantsTable) -> float:
    """sqrt(2 pi) (pi/2)^{n-1} B_n^{-1} (mu_max/mu_min)^{n/2} (T/mu_min)^{1/2}."""
    _check_temperature(T)
    n = manifold.dim
    log_value = (0.5 * math.log(2.0 * math.pi) + (n - 1) * math.log(math.pi / 2.0)
                 - math.log(constants.B_n) + 0.5 * n * math.log(profile.mu_max / profile.mu_min)
                 + 0.5 * math.log(T / profile.mu_min))
    return math.exp(log_value)


def convexity_rhs(T: float, delta: float, profile: MinimizerProfile, manifold: Manifold,
                  a_m: float) -> float:
    """Ct(2 delta)(1 - vol(M) f(T)) - pi A_M f(T)."""
    ct = ct_convexity(delta, math.sqrt(manifold.kappa_sq))
    f = f_gibbs_tail(T, delta, profile, manifold)
    return ct * (1.0 - manifold.volume * f) - math.pi * a_m * f


def convexity_threshold(delta: float, manifold: Manifold, a_m: float) -> float:
    """Ct(2 delta) / (Ct(2 delta) vol(M) + pi A_M), the level f(T) must stay below."""
    ct = ct_convexity(delta, math.sqrt(manifold.kappa_sq))
    return ct / (ct * manifold.volume + math.pi * a_m)


def barycentre_radius_bound(wasserstein: float, diameter: float) -> float:
    """Smallest eta with W < eta^2 / (4 diam); every barycentre lies within eta of x*."""
    if wasserstein < 0 or diameter <= 0:
        raise InvalidParameterError("need W >= 0 and diameter > 0", component="temperature",
                                    parameter="wasserstein", value=wasserstein)
    return math.sqrt(4.0 * diameter * wasserstein)


def partition_lower_bound(T: float, profile: MinimizerProfile, manifold: Manifold) -> float:
    """(pi/2)(8/pi)^{n/2}(T/mu_max)^{n/2}, a lower bound on the normalizing constant with U(x*) = 0."""
    _check_temperature(T)
    n = manifold.dim
    return (math.pi / 2.0) * (8.0 / math.pi) ** (n / 2.0) * (T / profile.mu_max) ** (n / 2.0)


def tail_mass_bound(T: float, delta: float, profile: MinimizerProfile, manifold: Manifold) -> float:
    """vol(M) f(T), an upper bound on the Gibbs mass outside B(x*, delta)."""
    return manifold.volume * f_gibbs_tail(T, delta, profile, manifold)


def ergodicity_floor(T: float, q_inf: float, U_sup: float, vol: float) -> float:
    """
    vol(M) inf q exp(-sup U / T), the uniform minorization constant of the chain.

    U is shifted so that inf U = 0; pass the oscillation sup U - inf U as U_sup.
    """
    _check_temperature(T)
    if q_inf < 0:
        raise InvalidParameterError("q_inf must be nonnegative", component="temperature",
                                    parameter="q_inf", value=q_inf)
    if q_inf == 0.0:
        return 0.0
    return vol * q_inf * math.exp(-U_sup / T)


def convergence_factor(p: float, n: int) -> float:
    """(1 - p)^n, the total-variation contraction after n steps."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError("p must lie in [0, 1]", component="temperature",
                                    parameter="p", value=p)
    return (1.0 - p) ** n
