"""
Objectives for baryopt.

The zonal Legendre objective on spheres, the Grassmann trace objective,
transported and squared-distance objectives, plus minimizer profiling.
"""

from .base import (
    CallableObjective,
    Isometry,
    Objective,
    SquaredDistanceObjective,
    TransportedObjective,
    estimate_value_range,
    objective_from_callable,
    objective_squared_distance,
    objective_transported,
    objective_value_range,
    rotation_between,
)
from .factory import get_isometry, get_objective
from .grassmann_trace import GrassmannTraceObjective, objective_grassmann_trace
from .legendre import LegendreObjective, legendre_p, objective_legendre_sphere
from .profile import (
    GapFunction,
    MinimizerProfile,
    estimate_minimizer_profile,
    normal_coordinate_hessian,
    objective_profile_curve,
)

__all__ = [
    "Objective", "CallableObjective", "SquaredDistanceObjective", "TransportedObjective",
    "Isometry", "rotation_between",
    "objective_from_callable", "objective_squared_distance", "objective_transported",
    "objective_value_range", "estimate_value_range",
    "LegendreObjective", "legendre_p", "objective_legendre_sphere",
    "GrassmannTraceObjective", "objective_grassmann_trace",
    "get_objective", "get_isometry",
    "GapFunction", "MinimizerProfile", "estimate_minimizer_profile",
    "normal_coordinate_hessian", "objective_profile_curve",
]
