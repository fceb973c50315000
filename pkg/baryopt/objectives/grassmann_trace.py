#!/usr/bin/env python3

import logging
from typing import Any, Dict, Tuple

import numpy as np

from ..core.exceptions import InvalidObjectiveError
from ..manifolds.base import Point
from ..manifolds.grassmann import Grassmann
from .base import Objective

logger = logging.getLogger("BaryOpt.Objectives.GrassmannTrace")

HERMITIAN_TOL = 1e-10
EIGEN_GAP_TOL = 1e-8


class GrassmannTraceObjective(Objective):
    """
    U(x) = -Re tr(C x) on Gr(k, C^n).

    The unique minimizer is the projector onto the span of the top-k
    eigenvectors of C. U is invariant under the geodesic symmetry through
    that projector, since r = 2x* - I commutes with C.

    C need not be positive definite. Replacing C by C + lambda I changes U by
    the constant -lambda k, so the minimizer and every Gibbs law are unchanged
    and an indefinite C is accepted with a warning.
    """

    name = "grassmann_trace"
    symmetric = True

    def __init__(self, c: Any, k: int):
        """
        Initialize the trace objective.

        Args:
            c: Hermitian n x n matrix with distinct eigenvalues
            k: Subspace dimension

        Raises:
            InvalidObjectiveError: if C is not square, not Hermitian within
                1e-10, or has eigenvalue gaps below 1e-8
        """
        matrix = np.array(c, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidObjectiveError(f"C must be square, got shape {matrix.shape}",
                                        component="objectives")
        asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
        if asymmetry > HERMITIAN_TOL:
            raise InvalidObjectiveError(f"C is not Hermitian (residual {asymmetry:.2e})",
                                        component="objectives")
        matrix = 0.5 * (matrix + matrix.conj().T)
        eigenvalues, eigenvectors = np.linalg.eigh(matrix)
        gaps = np.diff(eigenvalues)
        if gaps.size and float(np.min(gaps)) <= EIGEN_GAP_TOL:
            raise InvalidObjectiveError(
                f"C has repeated eigenvalues (min gap {float(np.min(gaps)):.2e}); minimizer not unique",
                component="objectives")
        if eigenvalues[0] <= 0:
            logger.warning("C is not positive definite; the minimizer is that of C + lambda I "
                           "for any shift lambda")
        manifold = Grassmann(k, matrix.shape[0])
        top = eigenvectors[:, -k:]
        matrix.setflags(write=False)
        self.c = matrix
        self.eigenvalues = eigenvalues[::-1].copy()
        super().__init__(manifold, Point(manifold.projector(top)))

    def evaluate(self, x: Point) -> float:
        return -float(np.real(np.sum(self.c * x.coords.T)))

    def evaluate_many(self, coords: np.ndarray) -> np.ndarray:
        return -np.real(np.einsum("ij,nji->n", self.c, np.asarray(coords)))

    def value_range(self) -> Tuple[float, float]:
        k = self.manifold.k
        return -float(np.sum(self.eigenvalues[:k])), -float(np.sum(self.eigenvalues[-k:]))

    def expected_hessian_spectrum(self) -> np.ndarray:
        """Eigenvalues 2(c_i - c_j), top i against bottom j, each twice (real and imaginary)."""
        k = self.manifold.k
        top, bottom = self.eigenvalues[:k], self.eigenvalues[k:]
        pairs = 2.0 * (top[:, None] - bottom[None, :]).ravel()
        return np.sort(np.repeat(pairs, 2))

    def describe(self) -> Dict[str, Any]:
        record = super().describe()
        record["eigenvalues"] = self.eigenvalues.tolist()
        return record


def objective_grassmann_trace(c: Any, k: int) -> GrassmannTraceObjective:
    return GrassmannTraceObjective(c, k)
