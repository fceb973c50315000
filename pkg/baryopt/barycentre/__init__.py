"""
Barycentre engine: streaming update, batch Frechet mean and Monte-Carlo
estimators of E_T and its derivatives.
"""

from .estimators import (
    FunctionalEstimate,
    GradientEstimate,
    energy_values,
    estimate_E_T,
    estimate_gradient,
    estimate_hessian_form,
    estimate_hessian_forms,
    hessian_form_fd,
    hessian_form_values,
    jackknife,
    log_log_slope,
    wasserstein_to_dirac,
)
from .frechet import batch_frechet_mean, empirical_energy, mean_log
from .tracker import BarycentreTracker, TrajectoryRecorder

__all__ = [
    "BarycentreTracker",
    "FunctionalEstimate",
    "GradientEstimate",
    "TrajectoryRecorder",
    "batch_frechet_mean",
    "empirical_energy",
    "energy_values",
    "estimate_E_T",
    "estimate_gradient",
    "estimate_hessian_form",
    "estimate_hessian_forms",
    "hessian_form_fd",
    "hessian_form_values",
    "jackknife",
    "log_log_slope",
    "mean_log",
    "wasserstein_to_dirac",
]
