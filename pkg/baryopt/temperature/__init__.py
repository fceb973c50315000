"""
Temperature thresholds for baryopt.

Analytic constants, bound functions and the scalar solvers producing T_o
and T_delta.
"""

from .bounds import (
    barycentre_radius_bound,
    concentration_rhs,
    convergence_factor,
    convexity_rhs,
    convexity_threshold,
    ergodicity_floor,
    f_gibbs_tail,
    f_truncation,
    partition_lower_bound,
    tail_mass_bound,
)
from .constants import ConstantsTable, beta_half, ct_convexity, gaussian_abs_moment, moment_ratio_identity
from .polar import chamber_sine_integral, polar_sphere_mass, polar_volume, structural_constant_A_M
from .solvers import (
    Crossing,
    TemperatureReport,
    ThresholdResult,
    compute_temperature_report,
    find_crossing,
    solve_T_delta,
    solve_T_o,
    t_delta_first_closed_form,
)

__all__ = [
    "ConstantsTable", "gaussian_abs_moment", "beta_half", "ct_convexity", "moment_ratio_identity",
    "f_truncation", "f_gibbs_tail", "concentration_rhs", "convexity_rhs", "convexity_threshold",
    "barycentre_radius_bound", "partition_lower_bound", "tail_mass_bound",
    "ergodicity_floor", "convergence_factor",
    "polar_sphere_mass", "chamber_sine_integral", "polar_volume", "structural_constant_A_M",
    "Crossing", "ThresholdResult", "TemperatureReport", "find_crossing",
    "solve_T_o", "solve_T_delta", "t_delta_first_closed_form", "compute_temperature_report",
]
