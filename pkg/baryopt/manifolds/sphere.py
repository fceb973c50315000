#!/usr/bin/env python3

"""
Unit sphere S^n embedded in R^{n+1}.
"""

import logging
import math
from typing import Dict, List, Tuple

import numpy as np
from scipy import special

from ..core.exceptions import CutLocusError, InvalidParameterError
from .base import CUT_LOCUS_TOL, Manifold, PolarChart, Point, Tangent

logger = logging.getLogger("BaryOpt.Manifolds.Sphere")


class Sphere(Manifold):
    """
    The unit sphere S^n with the round metric.

    Constant curvature 1, diameter pi, injectivity radius pi. Distances use
    the chord form 2*atan2(|x - y|, |x + y|), which equals the clamped
    arccos of the inner product but keeps full precision near 0 and pi.
    """

    name = "sphere"

    def __init__(self, n: int):
        """
        Initialize S^n.

        Args:
            n: Intrinsic dimension (n >= 1)

        Raises:
            InvalidParameterError: if n < 1
        """
        if int(n) < 1:
            raise InvalidParameterError("sphere dimension must be at least 1",
                                        component="manifolds", parameter="n", value=n)
        n = int(n)
        volume = 2.0 * math.pi ** ((n + 1) / 2.0) / special.gamma((n + 1) / 2.0)
        super().__init__(dim=n, kappa_sq=1.0, diameter=math.pi, volume=float(volume),
                         injectivity_radius=math.pi)
        self.n = n

    def parameters(self) -> Dict[str, int]:
        return {"n": self.n}

    @property
    def point_shape(self) -> Tuple[int, ...]:
        return (self.n + 1,)

    @property
    def point_tolerance(self) -> float:
        return 1e-12

    def point_residual(self, coords: np.ndarray) -> float:
        return abs(float(np.linalg.norm(coords)) - 1.0)

    def tangent_residual(self, x: Point, vec: np.ndarray) -> float:
        return abs(float(np.dot(vec, x.coords)))

    def reproject(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=float)
        return coords / np.linalg.norm(coords)

    def project_tangent(self, x: Point, ambient: np.ndarray) -> np.ndarray:
        ambient = np.asarray(ambient, dtype=float)
        return ambient - np.dot(ambient, x.coords) * x.coords

    def inner(self, x: Point, u: np.ndarray, v: np.ndarray) -> float:
        return float(np.dot(u, v))

    # -- geometry ------------------------------------------------------------

    def distance(self, x: Point, y: Point) -> float:
        self.check_same_manifold(x, y)
        a = np.linalg.norm(x.coords - y.coords)
        b = np.linalg.norm(x.coords + y.coords)
        return float(2.0 * math.atan2(a, b))

    def exp_map(self, base: Point, v: Tangent) -> Point:
        r = float(np.linalg.norm(v.vec))
        if r == 0.0:
            return base
        out = math.cos(r) * base.coords + math.sin(r) * (v.vec / r)
        return Point(out / np.linalg.norm(out))

    def log_map(self, base: Point, target: Point) -> Tangent:
        d = self.distance(base, target)
        if math.pi - d < CUT_LOCUS_TOL:
            raise CutLocusError("target is antipodal to the base point",
                                component="manifolds", distance=d)
        return Tangent(base, self._scaled_direction(base, target, d))

    def _scaled_direction(self, base: Point, target: Point, d: float) -> np.ndarray:
        w = target.coords - np.dot(target.coords, base.coords) * base.coords
        nw = float(np.linalg.norm(w))
        if nw == 0.0 or d == 0.0:
            return np.zeros_like(base.coords)
        return d * w / nw

    def cut_direction(self, base: Point) -> np.ndarray:
        """
        Unit tangent used to leave base toward its antipode.

        The first coordinate axis projected onto T_base S^n, or the next axis
        when base is (nearly) parallel to it.
        """
        for axis in range(self.n + 1):
            e = np.zeros(self.n + 1)
            e[axis] = 1.0
            w = self.project_tangent(base, e)
            nw = float(np.linalg.norm(w))
            if nw > 1e-8:
                return w / nw
        raise RuntimeError("no admissible tie-break axis")  # unreachable for n >= 1

    def minimizing_log(self, base: Point, target: Point) -> Tangent:
        d = self.distance(base, target)
        if math.pi - d < CUT_LOCUS_TOL:
            return Tangent(base, d * self.cut_direction(base))
        return Tangent(base, self._scaled_direction(base, target, d))

    def geodesic_symmetry(self, center: Point, x: Point) -> Point:
        self.check_same_manifold(center, x)
        out = 2.0 * np.dot(x.coords, center.coords) * center.coords - x.coords
        return Point(out / np.linalg.norm(out))

    def random_point(self, rng: np.random.Generator) -> Point:
        g = rng.standard_normal(self.n + 1)
        return Point(g / np.linalg.norm(g))

    def tangent_basis(self, x: Point) -> List[Tangent]:
        # Left singular vectors of x orthogonal to it span T_x S^n.
        u, _, _ = np.linalg.svd(x.coords.reshape(-1, 1))
        return [Tangent(x, u[:, i]) for i in range(1, self.n + 1)]

    def polar_chart(self) -> PolarChart:
        # Rank one: a single root with multiplicity n-1, cut locus at distance pi.
        return PolarChart(rank=1, roots=(((1.0,), self.n - 1),), chamber_bound=math.pi)

    # -- vectorized batch operations -----------------------------------------

    def random_points(self, rng: np.random.Generator, count: int) -> np.ndarray:
        g = rng.standard_normal((count, self.n + 1))
        return g / np.linalg.norm(g, axis=1, keepdims=True)

    def distance_many(self, x: Point, targets: np.ndarray) -> np.ndarray:
        targets = np.asarray(targets, dtype=float)
        a = np.linalg.norm(targets - x.coords, axis=1)
        b = np.linalg.norm(targets + x.coords, axis=1)
        return 2.0 * np.arctan2(a, b)

    def log_many(self, x: Point, targets: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        targets = np.asarray(targets, dtype=float)
        d = self.distance_many(x, targets)
        w = targets - np.outer(targets @ x.coords, x.coords)
        nw = np.linalg.norm(w, axis=1)
        cut = (math.pi - d) < CUT_LOCUS_TOL
        scale = np.divide(d, nw, out=np.zeros_like(d), where=(nw > 0.0) & ~cut)
        return w * scale[:, None], cut

    def exp_many(self, x: Point, vectors: np.ndarray) -> np.ndarray:
        vectors = np.asarray(vectors, dtype=float)
        r = np.linalg.norm(vectors, axis=1)
        safe = np.where(r > 0.0, r, 1.0)
        out = np.cos(r)[:, None] * x.coords + (np.sin(r) / safe)[:, None] * vectors
        return out / np.linalg.norm(out, axis=1, keepdims=True)

    def inner_many(self, x: Point, vectors: np.ndarray, u: np.ndarray) -> np.ndarray:
        return np.asarray(vectors, dtype=float) @ np.asarray(u, dtype=float)

    def initial_mean_guess(self, samples: np.ndarray) -> Point:
        # Extrinsic mean pushed back to the sphere, unless it vanishes.
        mean = np.mean(samples, axis=0)
        norm = float(np.linalg.norm(mean))
        if norm < 1e-8:
            return Point(samples[0])
        return Point(mean / norm)
