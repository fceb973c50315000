#!/usr/bin/env python3

"""
Exceptions for baryopt.

Every error raised by the library derives from BaryOptError and carries the
component that raised it, so the CLI can turn any failure into a
machine-readable error record.
"""

from typing import Any, Dict, Optional, Sequence


class BaryOptError(Exception):
    """Base exception for all baryopt errors."""

    def __init__(self, message: str, component: Optional[str] = None):
        self.component = component
        self.message = message
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the error to a JSON-ready dictionary."""
        record = {
            "error": type(self).__name__,
            "message": self.message,
            "component": self.component,
        }
        for key, value in self.__dict__.items():
            if key in ("component", "message") or key.startswith("_"):
                continue
            record[key] = value if isinstance(value, (int, float, str, bool, list)) or value is None else repr(value)
        return record


class InvalidPointError(BaryOptError):
    """
    Raised when coordinates do not describe a point (or tangent) of the manifold.

    The offending residual is kept so drift can be diagnosed.
    """

    def __init__(self, message: str, component: Optional[str] = None,
                 residual: Optional[float] = None):
        self.residual = residual
        super().__init__(f"Invalid point: {message}", component)


class DimensionMismatchError(BaryOptError):
    """Raised when array shapes disagree with the manifold."""

    def __init__(self, message: str, component: Optional[str] = None,
                 expected: Optional[Sequence[int]] = None,
                 actual: Optional[Sequence[int]] = None):
        self.expected = list(expected) if expected is not None else None
        self.actual = list(actual) if actual is not None else None
        super().__init__(f"Dimension mismatch: {message}", component)


class CutLocusError(BaryOptError):
    """
    Raised when the logarithm is requested for a target in the cut locus.

    The caller decides the fallback (tie-break geodesic or dropping the sample).
    """

    def __init__(self, message: str, component: Optional[str] = None,
                 distance: Optional[float] = None):
        self.distance = distance
        super().__init__(f"Cut locus: {message}", component)


class DegenerateSpanError(BaryOptError):
    """Raised when two tangent vectors do not span a plane."""

    def __init__(self, message: str, component: Optional[str] = None):
        super().__init__(f"Degenerate span: {message}", component)


class InvalidObjectiveError(BaryOptError):
    """Raised for malformed objective data (non-Hermitian matrix, repeated eigenvalues, bad isometry)."""

    def __init__(self, message: str, component: Optional[str] = None):
        super().__init__(f"Invalid objective: {message}", component)


class ProfileEstimationError(BaryOptError):
    """
    Raised when minimizer data cannot be estimated.

    Typical cause: a nonpositive Hessian eigenvalue, meaning x* is not a
    nondegenerate minimum.
    """

    def __init__(self, message: str, component: Optional[str] = None,
                 eigenvalues: Optional[Sequence[float]] = None):
        self.eigenvalues = [float(v) for v in eigenvalues] if eigenvalues is not None else None
        super().__init__(f"Profile estimation failed: {message}", component)


class InvalidParameterError(BaryOptError):
    """Raised when a numeric parameter lies outside its admissible domain."""

    def __init__(self, message: str, component: Optional[str] = None,
                 parameter: Optional[str] = None, value: Any = None):
        self.parameter = parameter
        self.value = value
        super().__init__(f"Invalid parameter: {message}", component)


class NonFiniteObjectiveError(BaryOptError):
    """Raised when the objective returns NaN or infinity during a chain."""

    def __init__(self, message: str, component: Optional[str] = None,
                 step: Optional[int] = None):
        self.step = step
        super().__init__(f"Non-finite objective: {message}", component)


class ConvergenceError(BaryOptError):
    """Raised when an iterative solver exhausts its iteration budget."""

    def __init__(self, message: str, component: Optional[str] = None,
                 iterations: Optional[int] = None, residual: Optional[float] = None):
        self.iterations = iterations
        self.residual = residual
        super().__init__(f"No convergence: {message}", component)


class UnsupportedManifoldError(BaryOptError):
    """Raised when an operation has no implementation for the given manifold."""

    def __init__(self, message: str, component: Optional[str] = None,
                 manifold: Optional[str] = None):
        self.manifold = manifold
        super().__init__(f"Unsupported manifold: {message}", component)


class ConfigurationError(BaryOptError):
    """
    Raised when a run configuration fails validation.

    Each entry of `paths` names the dotted location of one problem.
    """

    def __init__(self, message: str, component: Optional[str] = None,
                 paths: Optional[Sequence[str]] = None):
        self.paths = list(paths) if paths else []
        super().__init__(f"Configuration error: {message}", component)


class VerificationFailedError(BaryOptError):
    """Raised when bound verification produced failing rows."""

    def __init__(self, message: str, component: Optional[str] = None,
                 failed_rows: Optional[Sequence[str]] = None):
        self.failed_rows = list(failed_rows) if failed_rows else []
        super().__init__(f"Verification failed: {message}", component)
