#!/usr/bin/env python3

"""
Complex Grassmann manifold Gr(k, C^n) as Hermitian projectors of trace k.

Metric: <D1, D2> = (1/2) Re tr(D1 D2) on tangent matrices, which makes the
geodesic distance the l2 norm of the principal angles between the image
subspaces. Geodesics are orbits of unitary conjugation:
exp_x(D) = e^{[D, x]} x e^{-[D, x]}.
"""

import logging
import math
from typing import Dict, List, Tuple

import numpy as np
from scipy import linalg, special

from ..core.exceptions import CutLocusError, InvalidParameterError
from .base import CUT_LOCUS_TOL, Manifold, PolarChart, Point, Tangent

logger = logging.getLogger("BaryOpt.Manifolds.Grassmann")


def grassmann_volume(k: int, n: int) -> float:
    """
    Volume of Gr(k, C^n) under the principal-angle metric.

    pi^{k(n-k)} * prod_{j<k} j! / (n-k+j)!, the quotient
    vol U(n) / (vol U(k) vol U(n-k)) rescaled to this metric. Gr(1, C^2)
    is a round sphere of radius 1/2 (area pi), Gr(1, C^n) has the
    Fubini-Study volume pi^{n-1}/(n-1)!.
    """
    log_vol = k * (n - k) * math.log(math.pi)
    for j in range(k):
        log_vol += special.gammaln(j + 1) - special.gammaln(n - k + j + 1)
    return float(math.exp(log_vol))


class Grassmann(Manifold):
    """
    Gr(k, C^n): k-dimensional complex subspaces of C^n.

    Stored constants (p = min(k, n - k)):
      - kappa_sq = 4: the highest restricted root is 2*theta_1, so the
        holomorphic planes (a CP^1 of radius 1/2) carry curvature 4.
      - injectivity radius pi/2: the cut locus starts where one principal
        angle reaches pi/2.
      - diameter sqrt(p)*pi/2: all p principal angles equal to pi/2.
      - volume: see grassmann_volume.
    kappa_sq is certified by sectional_curvature_probe, the diameter by
    sampling, the volume by the polar volume identity.
    """

    name = "grassmann"

    def __init__(self, k: int, n: int):
        """
        Initialize Gr(k, C^n).

        Args:
            k: Subspace dimension (1 <= k < n)
            n: Ambient complex dimension

        Raises:
            InvalidParameterError: if k is outside [1, n)
        """
        k, n = int(k), int(n)
        if not 1 <= k < n:
            raise InvalidParameterError("Grassmann requires 1 <= k < n",
                                        component="manifolds", parameter="k", value=k)
        self.k = k
        self.n = n
        self.p = min(k, n - k)
        super().__init__(
            dim=2 * k * (n - k),
            kappa_sq=4.0,
            diameter=math.sqrt(self.p) * math.pi / 2.0,
            volume=grassmann_volume(k, n),
            injectivity_radius=math.pi / 2.0,
        )
        self._identity = np.eye(n, dtype=complex)

    def parameters(self) -> Dict[str, int]:
        return {"k": self.k, "n": self.n}

    @property
    def point_shape(self) -> Tuple[int, ...]:
        return (self.n, self.n)

    @property
    def point_tolerance(self) -> float:
        return 1e-10

    # -- embedding helpers ---------------------------------------------------

    @staticmethod
    def hermitize(a: np.ndarray) -> np.ndarray:
        return 0.5 * (a + a.conj().T)

    def frames(self, coords: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Orthonormal frames of the image (n x k) and of its complement (n x (n-k))."""
        _, vectors = np.linalg.eigh(self.hermitize(np.asarray(coords, dtype=complex)))
        return vectors[:, self.n - self.k:], vectors[:, :self.n - self.k]

    def projector(self, frame: np.ndarray) -> np.ndarray:
        return self.hermitize(frame @ frame.conj().T)

    def point_residual(self, coords: np.ndarray) -> float:
        coords = np.asarray(coords)
        hermitian = np.max(np.abs(coords - coords.conj().T))
        idempotent = np.max(np.abs(coords @ coords - coords))
        trace = abs(np.trace(coords).real - self.k) + abs(np.trace(coords).imag)
        return float(max(hermitian, idempotent, trace))

    def tangent_residual(self, x: Point, vec: np.ndarray) -> float:
        vec = np.asarray(vec)
        hermitian = np.max(np.abs(vec - vec.conj().T))
        off_block = np.max(np.abs(vec - self.project_tangent(x, vec)))
        return float(max(hermitian, off_block))

    def reproject(self, coords: np.ndarray) -> np.ndarray:
        """Nearest projector: eigendecomposition thresholded at 1/2 (top-k eigenvectors)."""
        image, _ = self.frames(coords)
        return self.projector(image)

    def project_tangent(self, x: Point, ambient: np.ndarray) -> np.ndarray:
        h = self.hermitize(np.asarray(ambient, dtype=complex))
        q = self._identity - x.coords
        return x.coords @ h @ q + q @ h @ x.coords

    def inner(self, x: Point, u: np.ndarray, v: np.ndarray) -> float:
        return 0.5 * float(np.real(np.vdot(u, v)))

    # -- principal vectors -----------------------------------------------------

    def _principal_data(self, x: Point, z: Point) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Principal vectors of the pair (x, z).

        Returns:
            (yp, u, theta): yp is a frame of x aligned with z, u holds the unit
            directions from yp toward z (zero columns where theta = 0) and
            theta the principal angles, so span(yp cos(t theta) + u sin(t theta))
            traces a minimising geodesic.
        """
        y, _ = self.frames(x.coords)
        w, _ = self.frames(z.coords)
        p, cosines, qh = np.linalg.svd(y.conj().T @ w)
        yp = y @ p
        wq = w @ qh.conj().T
        cosines = np.clip(cosines, 0.0, 1.0)
        residual = wq - yp * cosines
        sines = np.linalg.norm(residual, axis=0)
        theta = np.arctan2(sines, cosines)
        scale = np.divide(1.0, sines, out=np.zeros_like(sines), where=sines > 1e-15)
        return yp, residual * scale, theta

    def principal_angles(self, x: Point, y: Point) -> np.ndarray:
        """Principal angles in increasing order."""
        self.check_same_manifold(x, y)
        yx, _ = self.frames(x.coords)
        yy, _ = self.frames(y.coords)
        cosines = np.clip(np.linalg.svd(yx.conj().T @ yy, compute_uv=False), 0.0, 1.0)
        sines = np.sort(np.linalg.svd(yy - yx @ (yx.conj().T @ yy), compute_uv=False))
        return np.arctan2(sines, cosines)

    # -- geometry ------------------------------------------------------------

    def distance(self, x: Point, y: Point) -> float:
        return float(np.linalg.norm(self.principal_angles(x, y)))

    def exp_map(self, base: Point, v: Tangent) -> Point:
        if not np.any(v.vec):
            return base
        omega = v.vec @ base.coords - base.coords @ v.vec
        u = linalg.expm(omega)
        return Point(self.reproject(u @ base.coords @ u.conj().T))

    def _tangent_from_principal(self, yp: np.ndarray, u: np.ndarray, theta: np.ndarray) -> np.ndarray:
        h = u * theta
        return h @ yp.conj().T + yp @ h.conj().T

    def log_map(self, base: Point, target: Point) -> Tangent:
        self.check_same_manifold(base, target)
        yp, u, theta = self._principal_data(base, target)
        if theta.size and math.pi / 2.0 - float(np.max(theta)) < CUT_LOCUS_TOL:
            raise CutLocusError("a principal angle reaches pi/2",
                                component="manifolds", distance=float(np.linalg.norm(theta)))
        return Tangent(base, self._tangent_from_principal(yp, u, theta))

    def minimizing_log(self, base: Point, target: Point) -> Tangent:
        # At angle pi/2 the SVD pairing of principal vectors fixes one minimising geodesic.
        self.check_same_manifold(base, target)
        yp, u, theta = self._principal_data(base, target)
        return Tangent(base, self._tangent_from_principal(yp, u, theta))

    def geodesic_interpolate(self, x: Point, z: Point, t: float) -> Point:
        if not 0.0 <= t <= 1.0:
            raise InvalidParameterError("interpolation weight must lie in [0, 1]",
                                        component="manifolds", parameter="t", value=t)
        self.check_same_manifold(x, z)
        if t == 0.0:
            return x
        if t == 1.0:
            return z
        yp, u, theta = self._principal_data(x, z)
        frame = yp * np.cos(t * theta) + u * np.sin(t * theta)
        return Point(self.reproject(self.projector(frame)))

    def geodesic_symmetry(self, center: Point, x: Point) -> Point:
        self.check_same_manifold(center, x)
        r = 2.0 * center.coords - self._identity
        return Point(self.reproject(r @ x.coords @ r))

    def random_point(self, rng: np.random.Generator) -> Point:
        g = rng.standard_normal((self.n, self.k)) + 1j * rng.standard_normal((self.n, self.k))
        q, _ = np.linalg.qr(g)
        return Point(self.projector(q))

    def random_hermitian(self, rng: np.random.Generator) -> np.ndarray:
        """GUE-style Hermitian matrix; its law is invariant under H -> -H."""
        g = rng.standard_normal((self.n, self.n)) + 1j * rng.standard_normal((self.n, self.n))
        return 0.5 * (g + g.conj().T)

    def tangent_basis(self, x: Point) -> List[Tangent]:
        image, complement = self.frames(x.coords)
        basis = []
        for i in range(self.n - self.k):
            for j in range(self.k):
                e = np.outer(complement[:, i], image[:, j].conj())
                basis.append(Tangent(x, e + e.conj().T))
                e = 1j * e
                basis.append(Tangent(x, e + e.conj().T))
        return basis

    def polar_chart(self) -> PolarChart:
        """
        Restricted roots of Gr(k, C^n) with p = min(k, n - k).

        theta_i +- theta_j (i < j) with multiplicity 2, 2 theta_i with
        multiplicity 1 and theta_i with multiplicity 2(n - 2p); the highest
        root 2 theta_1 meets the cut locus at theta_1 = pi/2.
        """
        p = self.p
        roots = []
        for i in range(p):
            for j in range(i + 1, p):
                plus = [0.0] * p
                minus = [0.0] * p
                plus[i], plus[j] = 1.0, 1.0
                minus[i], minus[j] = 1.0, -1.0
                roots.append((tuple(minus), 2))
                roots.append((tuple(plus), 2))
        for i in range(p):
            double = [0.0] * p
            double[i] = 2.0
            roots.append((tuple(double), 1))
            if self.n - 2 * p > 0:
                single = [0.0] * p
                single[i] = 1.0
                roots.append((tuple(single), 2 * (self.n - 2 * p)))
        return PolarChart(rank=p, roots=tuple(roots), chamber_bound=math.pi / 2.0)

    # -- vectorized batch operations -----------------------------------------

    def random_points(self, rng: np.random.Generator, count: int) -> np.ndarray:
        shape = (count, self.n, self.k)
        q, _ = np.linalg.qr(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
        out = q @ np.conj(np.swapaxes(q, -1, -2))
        return 0.5 * (out + np.conj(np.swapaxes(out, -1, -2)))

    def distance_many(self, x: Point, targets: np.ndarray) -> np.ndarray:
        y, _ = self.frames(x.coords)
        _, vectors = np.linalg.eigh(0.5 * (targets + np.conj(np.swapaxes(targets, -1, -2))))
        w = vectors[..., self.n - self.k:]
        overlap = y.conj().T @ w
        cosines = np.clip(np.linalg.svd(overlap, compute_uv=False), 0.0, 1.0)
        sines = np.sort(np.linalg.svd(w - y @ overlap, compute_uv=False), axis=-1)
        return np.linalg.norm(np.arctan2(sines, cosines), axis=-1)

    def inner_many(self, x: Point, vectors: np.ndarray, u: np.ndarray) -> np.ndarray:
        return 0.5 * np.real(np.einsum("sij,ij->s", np.conj(vectors), u))

    def initial_mean_guess(self, samples: np.ndarray) -> Point:
        # Extrinsic mean of the projectors, snapped to the nearest projector.
        return Point(self.reproject(np.mean(samples, axis=0)))

    def coordinate_labels(self, prefix: str = "x") -> List[str]:
        labels = []
        for i in range(self.n):
            for j in range(self.n):
                labels.extend([f"re_{prefix}{i}{j}", f"im_{prefix}{i}{j}"])
        return labels
