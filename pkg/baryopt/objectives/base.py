#!/usr/bin/env python3

"""
Objective functions U: M -> R and the isometries used to transport them.
"""

import abc
import logging
import math
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from ..core.exceptions import (
    InvalidObjectiveError,
    InvalidParameterError,
    UnsupportedManifoldError,
)
from ..manifolds.base import Manifold, Point
from ..manifolds.grassmann import Grassmann
from ..manifolds.sphere import Sphere

logger = logging.getLogger("BaryOpt.Objectives.Base")

ISOMETRY_TOL = 1e-10


class Objective(abc.ABC):
    """
    Abstract base class for objectives.

    Subclasses implement `evaluate`; `evaluate_many` is overridden wherever a
    vectorized form exists. Objectives are immutable after construction and
    safe to evaluate from several threads.

    `symmetric` marks objectives invariant under the geodesic symmetry through
    their known minimizer, for which the gradient of E_T vanishes there.
    """

    name = "base"
    symmetric = False

    def __init__(self, manifold: Manifold, known_minimizer: Optional[Point] = None):
        self.manifold = manifold
        if known_minimizer is not None:
            manifold.validate_point(known_minimizer)
        self.known_minimizer = known_minimizer

    @abc.abstractmethod
    def evaluate(self, x: Point) -> float:
        """Objective value at x."""

    def __call__(self, x: Point) -> float:
        return self.evaluate(x)

    def evaluate_many(self, coords: np.ndarray) -> np.ndarray:
        """Objective values for stacked point coordinates."""
        return np.array([self.evaluate(Point(c)) for c in coords], dtype=float)

    @property
    def minimum_value(self) -> Optional[float]:
        if self.known_minimizer is None:
            return None
        return self.evaluate(self.known_minimizer)

    def value_range(self) -> Optional[Tuple[float, float]]:
        """Exact (inf U, sup U) when known in closed form."""
        return None

    def describe(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "manifold": self.manifold.descriptor().to_dict(),
            "known_minimizer": None if self.known_minimizer is None else self.known_minimizer.to_list(),
        }

    def __repr__(self) -> str:
        return f"{type(self).__name__}(manifold={self.manifold!r})"


class Isometry:
    """
    A stored isometry g of the manifold.

    On S^n, g is an orthogonal matrix acting by x -> g x. On Gr(k, C^n), g is
    a unitary matrix acting by conjugation x -> g x g^H.
    """

    def __init__(self, manifold: Manifold, matrix: Any):
        """
        Initialize the isometry.

        Args:
            manifold: Sphere or Grassmann manifold
            matrix: Orthogonal (sphere) or unitary (Grassmann) matrix

        Raises:
            InvalidObjectiveError: if the matrix is not orthogonal/unitary within 1e-10
            UnsupportedManifoldError: for other manifolds
        """
        if isinstance(manifold, Sphere):
            size, dtype = manifold.n + 1, float
        elif isinstance(manifold, Grassmann):
            size, dtype = manifold.n, complex
        else:
            raise UnsupportedManifoldError("isometries are defined for sphere and grassmann only",
                                           component="objectives", manifold=manifold.name)
        array = np.asarray(matrix)
        if array.shape != (size, size):
            raise InvalidObjectiveError(f"isometry must be {size}x{size}, got {array.shape}",
                                        component="objectives")
        if np.iscomplexobj(array) and dtype is float:
            if np.max(np.abs(array.imag)) > ISOMETRY_TOL:
                raise InvalidObjectiveError("sphere isometry must be real", component="objectives")
            array = array.real
        array = np.array(array, dtype=dtype)
        residual = float(np.max(np.abs(array.conj().T @ array - np.eye(size))))
        if residual > ISOMETRY_TOL:
            raise InvalidObjectiveError(
                f"matrix is not {'orthogonal' if dtype is float else 'unitary'} (residual {residual:.2e})",
                component="objectives")
        array.setflags(write=False)
        self.manifold = manifold
        self.matrix = array

    @classmethod
    def identity(cls, manifold: Manifold) -> "Isometry":
        size = manifold.n + 1 if isinstance(manifold, Sphere) else getattr(manifold, "n", 0)
        return cls(manifold, np.eye(size))

    def _act(self, g: np.ndarray, coords: np.ndarray) -> np.ndarray:
        if isinstance(self.manifold, Sphere):
            return coords @ g.T
        return g @ coords @ g.conj().T

    def apply(self, x: Point) -> Point:
        return Point(self.manifold.reproject(self._act(self.matrix, x.coords)))

    def apply_inverse(self, x: Point) -> Point:
        return Point(self.manifold.reproject(self._act(self.matrix.conj().T, x.coords)))

    def apply_inverse_many(self, coords: np.ndarray) -> np.ndarray:
        g_inv = self.matrix.conj().T
        if isinstance(self.manifold, Sphere):
            return np.asarray(coords) @ g_inv.T
        return g_inv @ np.asarray(coords) @ self.matrix


def rotation_between(manifold: Sphere, a: Point, b: Point) -> Isometry:
    """
    Rotation of S^n in the plane span(a, b) sending a to b.

    Antipodal pairs rotate through the deterministic tie-break plane of the
    sphere's cut direction at a.
    """
    if not isinstance(manifold, Sphere):
        raise UnsupportedManifoldError("rotation_between is defined on spheres",
                                       component="objectives", manifold=manifold.name)
    manifold.check_same_manifold(a, b)
    angle = manifold.distance(a, b)
    size = manifold.n + 1
    if angle == 0.0:
        return Isometry(manifold, np.eye(size))
    u = a.coords
    if math.pi - angle < 1e-9:
        w = manifold.cut_direction(a)
    else:
        w = b.coords - np.dot(b.coords, u) * u
        w = w / np.linalg.norm(w)
    rotation = (np.eye(size)
                + (math.cos(angle) - 1.0) * (np.outer(u, u) + np.outer(w, w))
                + math.sin(angle) * (np.outer(w, u) - np.outer(u, w)))
    # Re-orthonormalize to absorb rounding before the isometry check.
    q, r = np.linalg.qr(rotation)
    return Isometry(manifold, q * np.sign(np.diag(r)))


class CallableObjective(Objective):
    """Black-box objective wrapping a Python callable on point coordinates."""

    name = "callable"

    def __init__(self, manifold: Manifold, fn: Callable[[np.ndarray], float],
                 known_minimizer: Optional[Point] = None,
                 vectorized: Optional[Callable[[np.ndarray], np.ndarray]] = None):
        super().__init__(manifold, known_minimizer)
        self._fn = fn
        self._vectorized = vectorized

    def evaluate(self, x: Point) -> float:
        return float(self._fn(x.coords))

    def evaluate_many(self, coords: np.ndarray) -> np.ndarray:
        if self._vectorized is not None:
            return np.asarray(self._vectorized(coords), dtype=float)
        return super().evaluate_many(coords)


class SquaredDistanceObjective(Objective):
    """U(x) = scale * d^2(x, center); its Hessian at the center is 2*scale."""

    name = "squared_distance"
    symmetric = True

    def __init__(self, manifold: Manifold, center: Point, scale: float = 1.0):
        if scale <= 0:
            raise InvalidParameterError("scale must be positive", component="objectives",
                                        parameter="scale", value=scale)
        super().__init__(manifold, center)
        self.center = center
        self.scale = float(scale)

    def evaluate(self, x: Point) -> float:
        return self.scale * self.manifold.distance(x, self.center) ** 2

    def evaluate_many(self, coords: np.ndarray) -> np.ndarray:
        return self.scale * self.manifold.distance_many(self.center, coords) ** 2

    def value_range(self) -> Optional[Tuple[float, float]]:
        return 0.0, self.scale * self.manifold.diameter ** 2


class TransportedObjective(Objective):
    """U(x) = base(g^{-1} x); the known minimizer moves to g o."""

    name = "transported"

    def __init__(self, base: Objective, isometry: Isometry):
        if isometry.manifold is not base.manifold and repr(isometry.manifold) != repr(base.manifold):
            raise InvalidObjectiveError("isometry and base objective live on different manifolds",
                                        component="objectives")
        minimizer = None if base.known_minimizer is None else isometry.apply(base.known_minimizer)
        super().__init__(base.manifold, minimizer)
        self.base = base
        self.isometry = isometry
        self.symmetric = base.symmetric

    def evaluate(self, x: Point) -> float:
        return self.base.evaluate(self.isometry.apply_inverse(x))

    def evaluate_many(self, coords: np.ndarray) -> np.ndarray:
        return self.base.evaluate_many(self.isometry.apply_inverse_many(coords))

    def value_range(self) -> Optional[Tuple[float, float]]:
        return self.base.value_range()

    def describe(self) -> Dict[str, Any]:
        record = super().describe()
        record["base"] = self.base.describe()
        return record


def estimate_value_range(objective: Objective, rng: np.random.Generator,
                         count: int = 20_000) -> Tuple[float, float]:
    """(min U, max U) over uniform samples; a sampled stand-in for the exact range."""
    coords = objective.manifold.random_points(rng, count)
    values = objective.evaluate_many(coords)
    if not np.all(np.isfinite(values)):
        raise InvalidObjectiveError("objective returned non-finite values on uniform samples",
                                    component="objectives")
    return float(np.min(values)), float(np.max(values))


def objective_value_range(objective: Objective, rng: np.random.Generator,
                          count: int = 20_000) -> Tuple[float, float, str]:
    """Exact range when the objective knows it, sampled otherwise, with its source."""
    exact = objective.value_range()
    if exact is not None:
        return float(exact[0]), float(exact[1]), "exact"
    low, high = estimate_value_range(objective, rng, count)
    logger.info(f"Sampled range of {objective.name}: [{low:.6g}, {high:.6g}] from {count} points")
    return low, high, "sampled"


def objective_transported(base: Objective, g: Isometry) -> TransportedObjective:
    return TransportedObjective(base, g)


def objective_squared_distance(manifold: Manifold, center: Point, scale: float = 1.0) -> SquaredDistanceObjective:
    return SquaredDistanceObjective(manifold, center, scale)


def objective_from_callable(manifold: Manifold, fn: Callable[[np.ndarray], float],
                            known_minimizer: Optional[Point] = None) -> CallableObjective:
    return CallableObjective(manifold, fn, known_minimizer)
