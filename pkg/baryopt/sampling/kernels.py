#!/usr/bin/env python3

"""
Symmetric proposal kernels q(x, z) = q(z, x).

With a symmetric kernel the Metropolis-Hastings acceptance depends only on
the objective difference.
"""

import abc
import logging
import math
from typing import Any, Dict, Optional

import numpy as np
from scipy import linalg, special

from ..core.exceptions import InvalidParameterError, UnsupportedManifoldError
from ..manifolds.base import Manifold, Point
from ..manifolds.grassmann import Grassmann
from ..manifolds.sphere import Sphere

logger = logging.getLogger("BaryOpt.Sampling.Kernels")


class ProposalKernel(abc.ABC):
    """Abstract base class for symmetric proposal kernels."""

    kind = "base"

    def __init__(self, manifold: Manifold):
        self.manifold = manifold

    @abc.abstractmethod
    def propose(self, x: Point, rng: np.random.Generator) -> Point:
        """Draw z ~ q(x, .)."""

    def log_density(self, x: Point, z: Point) -> Optional[float]:
        """log q(x, z) with respect to the Riemannian volume, when known."""
        return None

    def min_density(self) -> float:
        """inf over (x, z) of q(x, z); 0 when no uniform bound is available."""
        return 0.0

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind}


class VonMisesFisherKernel(ProposalKernel):
    """
    von Mises-Fisher proposals on S^n: q(x, z) = C_kappa exp(kappa <x, z>).

    The cosine w = <x, z> is drawn by inverse CDF on S^2 and by Wood's
    rejection scheme otherwise; the tangent direction is a projected
    Gaussian.
    """

    kind = "vmf"

    def __init__(self, manifold: Sphere, concentration: float = 20.0):
        if not isinstance(manifold, Sphere):
            raise UnsupportedManifoldError("vMF proposals need a sphere", component="sampling",
                                           manifold=manifold.name)
        if not concentration > 0:
            raise InvalidParameterError("concentration must be positive", component="sampling",
                                        parameter="concentration", value=concentration)
        super().__init__(manifold)
        self.concentration = float(concentration)
        self._ambient = manifold.n + 1
        p = self._ambient - 1
        # Wood's envelope constants
        self._b = p / (math.sqrt(4.0 * self.concentration ** 2 + p * p) + 2.0 * self.concentration)
        self._x0 = (1.0 - self._b) / (1.0 + self._b)
        self._c = self.concentration * self._x0 + p * math.log(1.0 - self._x0 ** 2)

    def sample_cosine(self, rng: np.random.Generator) -> float:
        kappa = self.concentration
        if self._ambient == 3:
            u = rng.uniform()
            return 1.0 + math.log(u + (1.0 - u) * math.exp(-2.0 * kappa)) / kappa
        p = self._ambient - 1
        while True:
            z = rng.beta(p / 2.0, p / 2.0)
            w = (1.0 - (1.0 + self._b) * z) / (1.0 - (1.0 - self._b) * z)
            u = rng.uniform()
            if kappa * w + p * math.log(1.0 - self._x0 * w) - self._c >= math.log(u):
                return w

    def propose(self, x: Point, rng: np.random.Generator) -> Point:
        w = min(max(self.sample_cosine(rng), -1.0), 1.0)
        v = rng.standard_normal(self._ambient)
        v -= np.dot(v, x.coords) * x.coords
        v /= np.linalg.norm(v)
        z = w * x.coords + math.sqrt(max(1.0 - w * w, 0.0)) * v
        return Point(z / np.linalg.norm(z))

    def log_normalizer(self) -> float:
        """log C_kappa for the density on S^{d-1} in R^d."""
        d = self._ambient
        kappa = self.concentration
        order = d / 2.0 - 1.0
        # log I_order(kappa) = log ive(order, kappa) + kappa
        log_bessel = math.log(special.ive(order, kappa)) + kappa
        return order * math.log(kappa) - (d / 2.0) * math.log(2.0 * math.pi) - log_bessel

    def log_density(self, x: Point, z: Point) -> float:
        return self.log_normalizer() + self.concentration * float(np.dot(x.coords, z.coords))

    def min_density(self) -> float:
        return math.exp(self.log_normalizer() - self.concentration)

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "concentration": self.concentration}


class ConjugationKernel(ProposalKernel):
    """
    Proposals z = u x u^H on Gr(k, C^n) with u = exp(i * step_scale * H).

    H is a GUE-style Hermitian matrix, so u and u^{-1} have the same law and
    the kernel is symmetric. Conjugation preserves the projector spectrum.
    """

    kind = "conjugation"

    def __init__(self, manifold: Grassmann, step_scale: float = 0.2):
        if not isinstance(manifold, Grassmann):
            raise UnsupportedManifoldError("conjugation proposals need a grassmann manifold",
                                           component="sampling", manifold=manifold.name)
        if not step_scale > 0:
            raise InvalidParameterError("step_scale must be positive", component="sampling",
                                        parameter="step_scale", value=step_scale)
        super().__init__(manifold)
        self.step_scale = float(step_scale)

    def propose(self, x: Point, rng: np.random.Generator) -> Point:
        h = self.manifold.random_hermitian(rng)
        u = linalg.expm(1j * self.step_scale * h)
        return Point(self.manifold.reproject(u @ x.coords @ u.conj().T))

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "step_scale": self.step_scale}


def get_kernel(config: Dict[str, Any], manifold: Manifold) -> ProposalKernel:
    """
    Factory function to create a proposal kernel.

    Args:
        config: Kernel configuration; `name` is "vmf", "conjugation" or "auto"
            (pick by manifold), with `concentration` or `step_scale`
        manifold: Manifold to propose on

    Returns:
        ProposalKernel: The kernel

    Raises:
        UnsupportedManifoldError: if the kernel does not fit the manifold
    """
    name = str(config.get("name") or "auto").lower()
    if name == "auto":
        name = "vmf" if isinstance(manifold, Sphere) else "conjugation"
    if name == "vmf":
        return VonMisesFisherKernel(manifold, float(config.get("concentration") or 20.0))
    if name == "conjugation":
        return ConjugationKernel(manifold, float(config.get("step_scale") or 0.2))
    raise UnsupportedManifoldError(f"unknown kernel '{name}'", component="sampling",
                                   manifold=manifold.name)
