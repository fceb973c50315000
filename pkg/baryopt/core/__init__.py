"""
Configuration, exceptions and the command-line entry point.
"""

from .config import RunConfig, validate_config
from .config_loader import RunConfigLoader
from .exceptions import (
    BaryOptError,
    ConfigurationError,
    ConvergenceError,
    CutLocusError,
    DegenerateSpanError,
    DimensionMismatchError,
    InvalidObjectiveError,
    InvalidParameterError,
    InvalidPointError,
    NonFiniteObjectiveError,
    ProfileEstimationError,
    UnsupportedManifoldError,
    VerificationFailedError,
)

__all__ = [
    "RunConfig",
    "RunConfigLoader",
    "validate_config",
    "BaryOptError",
    "ConfigurationError",
    "ConvergenceError",
    "CutLocusError",
    "DegenerateSpanError",
    "DimensionMismatchError",
    "InvalidObjectiveError",
    "InvalidParameterError",
    "InvalidPointError",
    "NonFiniteObjectiveError",
    "ProfileEstimationError",
    "UnsupportedManifoldError",
    "VerificationFailedError",
]
