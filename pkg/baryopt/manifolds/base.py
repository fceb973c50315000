#!/usr/bin/env python3

"""
Manifold interface shared by the sphere and the complex Grassmannian.

Points and tangent vectors are immutable wrappers around embedding
coordinates. Every geometric primitive lives on the Manifold subclasses so
the sampler, the barycentre engine and the temperature calculus can stay
manifold-agnostic.
"""

import abc
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
from scipy import special

from ..core.exceptions import (
    CutLocusError,
    DegenerateSpanError,
    DimensionMismatchError,
    InvalidParameterError,
    InvalidPointError,
)

logger = logging.getLogger("BaryOpt.Manifolds.Base")

# Targets closer than this (in radians) to the cut locus are treated as cut points.
CUT_LOCUS_TOL = 1e-9


def _frozen(array: Any, dtype: Any = None) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Point:
    """A manifold point in embedding coordinates."""
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _frozen(self.coords))

    def to_list(self) -> List[Any]:
        """Coordinates as nested Python lists (complex entries as [re, im])."""
        if np.iscomplexobj(self.coords):
            return np.stack([self.coords.real, self.coords.imag], axis=-1).tolist()
        return self.coords.tolist()


@dataclass(frozen=True, eq=False)
class Tangent:
    """A tangent vector `vec` at `base`, both in embedding coordinates."""
    base: Point
    vec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vec", _frozen(self.vec))

    def scaled(self, factor: float) -> "Tangent":
        return Tangent(self.base, self.vec * factor)


@dataclass(frozen=True)
class ManifoldDescriptor:
    """Snapshot of the geometry constants of a manifold."""
    name: str
    dim: int
    kappa_sq: float
    r_cx: float
    diameter: float
    volume: float
    omega_n: float
    injectivity_radius: float
    parameters: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "dim": self.dim,
            "kappa_sq": self.kappa_sq,
            "r_cx": self.r_cx,
            "diameter": self.diameter,
            "volume": self.volume,
            "omega_n": self.omega_n,
            "injectivity_radius": self.injectivity_radius,
            "parameters": dict(self.parameters),
        }


@dataclass(frozen=True)
class PolarChart:
    """
    Flat polar coordinates of a compact symmetric space.

    `roots` lists (coefficients, multiplicity) pairs; a root evaluates on the
    flat coordinate a as the dot product of its coefficients with a. The
    chamber is a_1 >= a_2 >= ... >= a_rank >= 0 with a_1 <= chamber_bound.
    """
    rank: int
    roots: Tuple[Tuple[Tuple[float, ...], int], ...]
    chamber_bound: float

    def root_matrix(self) -> Tuple[np.ndarray, np.ndarray]:
        coefficients = np.array([c for c, _ in self.roots], dtype=float).reshape(-1, self.rank)
        multiplicities = np.array([m for _, m in self.roots], dtype=float)
        return coefficients, multiplicities

    @property
    def chamber_volume(self) -> float:
        """Lebesgue volume of the truncated chamber D+."""
        return self.chamber_bound ** self.rank / math.factorial(self.rank)

    @property
    def total_dimension(self) -> int:
        return self.rank + int(sum(m for _, m in self.roots))


def sphere_area(n: int) -> float:
    """Surface area of the unit sphere S^{n-1} in R^n."""
    return float(2.0 * math.pi ** (n / 2.0) / special.gamma(n / 2.0))


def stack_points(samples: Union[np.ndarray, Iterable[Point]]) -> np.ndarray:
    """Stack a sequence of points (or an existing coordinate array) into one array."""
    if isinstance(samples, np.ndarray):
        return samples
    coords = [p.coords if isinstance(p, Point) else np.asarray(p) for p in samples]
    if not coords:
        return np.empty((0,))
    return np.stack(coords)


class Manifold(abc.ABC):
    """
    Abstract base class for compact symmetric spaces.

    Subclasses provide the embedding, the metric and closed-form geodesics.
    The base class derives the convexity radius, the probe for sectional
    curvature, batch fallbacks and point/tangent validation helpers.
    """

    name = "base"

    def __init__(self, dim: int, kappa_sq: float, diameter: float, volume: float,
                 injectivity_radius: float):
        self.dim = int(dim)
        self.kappa_sq = float(kappa_sq)
        self.diameter = float(diameter)
        self.volume = float(volume)
        self.injectivity_radius = float(injectivity_radius)

    # -- constants -----------------------------------------------------------

    @property
    def r_cx(self) -> float:
        """Convexity radius (pi/2)/kappa."""
        return (math.pi / 2.0) / math.sqrt(self.kappa_sq)

    @property
    def omega_n(self) -> float:
        """Surface area of the unit sphere in the tangent space."""
        return sphere_area(self.dim)

    def injectivity_radius_at(self, x: Point) -> float:
        # Homogeneous spaces: the same at every point.
        return self.injectivity_radius

    def parameters(self) -> Dict[str, int]:
        return {}

    def descriptor(self) -> ManifoldDescriptor:
        return ManifoldDescriptor(
            name=self.name,
            dim=self.dim,
            kappa_sq=self.kappa_sq,
            r_cx=self.r_cx,
            diameter=self.diameter,
            volume=self.volume,
            omega_n=self.omega_n,
            injectivity_radius=self.injectivity_radius,
            parameters=self.parameters(),
        )

    # -- embedding -----------------------------------------------------------

    @property
    @abc.abstractmethod
    def point_shape(self) -> Tuple[int, ...]:
        """Shape of a coordinate array."""

    @abc.abstractmethod
    def point_residual(self, coords: np.ndarray) -> float:
        """Largest violation of the point invariants."""

    @abc.abstractmethod
    def tangent_residual(self, x: Point, vec: np.ndarray) -> float:
        """Largest violation of the tangent invariants at x."""

    @property
    @abc.abstractmethod
    def point_tolerance(self) -> float:
        """Admissible point residual."""

    @abc.abstractmethod
    def reproject(self, coords: np.ndarray) -> np.ndarray:
        """Nearest valid point coordinates."""

    @abc.abstractmethod
    def project_tangent(self, x: Point, ambient: np.ndarray) -> np.ndarray:
        """Orthogonal projection of an ambient array onto T_xM."""

    @abc.abstractmethod
    def inner(self, x: Point, u: np.ndarray, v: np.ndarray) -> float:
        """Riemannian inner product of two tangent arrays at x."""

    # -- geometry ------------------------------------------------------------

    @abc.abstractmethod
    def distance(self, x: Point, y: Point) -> float:
        """Geodesic distance."""

    @abc.abstractmethod
    def exp_map(self, base: Point, v: Tangent) -> Point:
        """Riemannian exponential."""

    @abc.abstractmethod
    def log_map(self, base: Point, target: Point) -> Tangent:
        """
        Riemannian logarithm.

        Raises:
            CutLocusError: if target lies (numerically) in the cut locus of base
        """

    @abc.abstractmethod
    def minimizing_log(self, base: Point, target: Point) -> Tangent:
        """
        Initial velocity of a deterministic length-minimising geodesic.

        Equals log_map away from the cut locus and resolves cut points with a
        fixed tie-break instead of raising.
        """

    @abc.abstractmethod
    def geodesic_symmetry(self, center: Point, x: Point) -> Point:
        """Geodesic reflection through center."""

    @abc.abstractmethod
    def random_point(self, rng: np.random.Generator) -> Point:
        """Draw a point from the normalized volume measure."""

    @abc.abstractmethod
    def tangent_basis(self, x: Point) -> List[Tangent]:
        """Orthonormal basis of T_xM."""

    @abc.abstractmethod
    def polar_chart(self) -> PolarChart:
        """Flat polar coordinates used by the structural constants."""

    # -- derived operations --------------------------------------------------

    def make_point(self, coords: Any, reproject: bool = False) -> Point:
        """
        Wrap coordinates as a validated Point.

        Args:
            coords: Coordinate array
            reproject: Snap coordinates to the manifold before validating

        Returns:
            Point: The validated point

        Raises:
            DimensionMismatchError: if the shape is wrong
            InvalidPointError: if the invariants fail
        """
        array = np.asarray(coords)
        if array.shape != self.point_shape:
            raise DimensionMismatchError(
                f"{self.name} expects coordinates of shape {self.point_shape}",
                component="manifolds", expected=self.point_shape, actual=array.shape)
        if reproject:
            array = self.reproject(array)
        point = Point(array)
        self.validate_point(point)
        return point

    def validate_point(self, x: Point, tolerance: float = None) -> None:
        if x.coords.shape != self.point_shape:
            raise DimensionMismatchError(
                f"{self.name} expects coordinates of shape {self.point_shape}",
                component="manifolds", expected=self.point_shape, actual=x.coords.shape)
        residual = self.point_residual(x.coords)
        if not np.isfinite(residual) or residual > (tolerance or self.point_tolerance):
            raise InvalidPointError(f"residual {residual:.3e} on {self.name}",
                                    component="manifolds", residual=float(residual))

    def norm(self, v: Tangent) -> float:
        return math.sqrt(max(self.inner(v.base, v.vec, v.vec), 0.0))

    def random_tangent(self, x: Point, rng: np.random.Generator) -> Tangent:
        """Standard Gaussian tangent vector (isotropic in the metric)."""
        basis = self.tangent_basis(x)
        weights = rng.standard_normal(len(basis))
        vec = sum(w * b.vec for w, b in zip(weights, basis))
        return Tangent(x, vec)

    def random_unit_tangent(self, x: Point, rng: np.random.Generator) -> Tangent:
        v = self.random_tangent(x, rng)
        return v.scaled(1.0 / self.norm(v))

    def check_same_manifold(self, *points: Point) -> None:
        for p in points:
            if p.coords.shape != self.point_shape:
                raise DimensionMismatchError(
                    f"point of shape {p.coords.shape} does not belong to {self.name}",
                    component="manifolds", expected=self.point_shape, actual=p.coords.shape)

    def geodesic_interpolate(self, x: Point, z: Point, t: float) -> Point:
        """
        Point at fraction t along a length-minimising geodesic from x to z.

        Cut-locus targets follow the tie-break of minimizing_log.
        """
        if not 0.0 <= t <= 1.0:
            raise InvalidParameterError("interpolation weight must lie in [0, 1]",
                                        component="manifolds", parameter="t", value=t)
        self.check_same_manifold(x, z)
        if t == 0.0:
            return x
        if t == 1.0:
            return z
        return self.exp_map(x, self.minimizing_log(x, z).scaled(t))

    def sectional_curvature_probe(self, x: Point, u: Tangent, v: Tangent,
                                  epsilon: float = 1e-3) -> float:
        """
        Finite-difference sectional curvature of span(u, v) at x.

        Uses d^2(exp(eps e1), exp(eps e2)) = 2 eps^2 - K eps^4 / 3 + O(eps^5)
        for an orthonormal pair (e1, e2) of the plane.

        Raises:
            DegenerateSpanError: if |u ^ v| < 1e-8
        """
        uu = self.inner(x, u.vec, u.vec)
        vv = self.inner(x, v.vec, v.vec)
        uv = self.inner(x, u.vec, v.vec)
        area_sq = uu * vv - uv * uv
        if area_sq < 1e-16:
            raise DegenerateSpanError("tangent vectors are (nearly) parallel",
                                      component="manifolds")
        e1, e2 = gram_schmidt(self, x, [u.vec, v.vec])
        a = self.exp_map(x, Tangent(x, epsilon * e1))
        b = self.exp_map(x, Tangent(x, epsilon * e2))
        d = self.distance(a, b)
        return 3.0 * (2.0 * epsilon ** 2 - d * d) / epsilon ** 4

    # -- batch fallbacks (overridden where vectorization pays) ---------------

    def random_points(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return np.stack([self.random_point(rng).coords for _ in range(count)])

    def distance_many(self, x: Point, targets: np.ndarray) -> np.ndarray:
        return np.array([self.distance(x, Point(t)) for t in targets], dtype=float)

    def log_many(self, x: Point, targets: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Logarithms of many targets.

        Returns:
            (vectors, cut_mask): cut-locus targets get a zero vector and a True mask
        """
        vectors = np.zeros((len(targets),) + self.point_shape, dtype=x.coords.dtype)
        cut = np.zeros(len(targets), dtype=bool)
        for i, t in enumerate(targets):
            try:
                vectors[i] = self.log_map(x, Point(t)).vec
            except CutLocusError:
                cut[i] = True
        return vectors, cut

    def exp_many(self, x: Point, vectors: np.ndarray) -> np.ndarray:
        return np.stack([self.exp_map(x, Tangent(x, v)).coords for v in vectors])

    def inner_many(self, x: Point, vectors: np.ndarray, u: np.ndarray) -> np.ndarray:
        return np.array([self.inner(x, v, u) for v in vectors], dtype=float)

    def tangent_coordinates(self, x: Point, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of stacked tangent vectors in the orthonormal basis tangent_basis(x)."""
        basis = self.tangent_basis(x)
        return np.stack([self.inner_many(x, vectors, b.vec) for b in basis], axis=1)

    def initial_mean_guess(self, samples: np.ndarray) -> Point:
        """Starting point for the batch Frechet mean."""
        return Point(samples[0])

    def to_row(self, coords: np.ndarray) -> List[float]:
        """Flatten coordinates into CSV-ready floats."""
        flat = np.asarray(coords).ravel()
        if np.iscomplexobj(flat):
            return [float(v) for pair in zip(flat.real, flat.imag) for v in pair]
        return [float(v) for v in flat]

    def coordinate_labels(self, prefix: str = "x") -> List[str]:
        size = int(np.prod(self.point_shape))
        return [f"{prefix}{i}" for i in range(size)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(f'{k}={v}' for k, v in self.parameters().items())})"


def gram_schmidt(manifold: Manifold, x: Point, vectors: Sequence[np.ndarray]) -> List[np.ndarray]:
    """Orthonormalize tangent arrays under the manifold metric."""
    basis: List[np.ndarray] = []
    for v in vectors:
        w = np.array(v, copy=True)
        for b in basis:
            w = w - manifold.inner(x, w, b) * b
        norm = math.sqrt(max(manifold.inner(x, w, w), 0.0))
        if norm > 1e-12:
            basis.append(w / norm)
    return basis
