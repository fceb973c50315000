#!/usr/bin/env python3

import logging
from typing import Any, Dict

import numpy as np
from scipy import stats

from ..core.exceptions import InvalidObjectiveError, UnsupportedManifoldError
from ..manifolds.base import Manifold
from ..manifolds.grassmann import Grassmann
from ..manifolds.sphere import Sphere
from .base import Isometry, Objective, SquaredDistanceObjective, TransportedObjective, rotation_between
from .grassmann_trace import GrassmannTraceObjective
from .legendre import LegendreObjective

logger = logging.getLogger("BaryOpt.Objectives.Factory")


def _matrix_from_config(config: Dict[str, Any], key: str = "matrix") -> np.ndarray:
    real = np.asarray(config[key], dtype=float)
    imag = config.get(f"{key}_imag")
    if imag is None:
        return real
    return real + 1j * np.asarray(imag, dtype=float)


def get_isometry(config: Dict[str, Any], manifold: Manifold, base: Objective) -> Isometry:
    """
    Build the transport isometry from its config section.

    Accepted keys: `to` (sphere: rotate the base minimizer onto this point),
    `matrix` (+ optional `matrix_imag`), or `seed` (Haar-random orthogonal or
    unitary matrix).
    """
    if not config:
        return Isometry.identity(manifold)
    if config.get("to") is not None:
        if not isinstance(manifold, Sphere) or base.known_minimizer is None:
            raise InvalidObjectiveError("'to' rotations need a sphere objective with a known minimizer",
                                        component="objectives")
        target = manifold.make_point(np.asarray(config["to"], dtype=float), reproject=True)
        return rotation_between(manifold, base.known_minimizer, target)
    if config.get("matrix") is not None:
        return Isometry(manifold, _matrix_from_config(config))
    if config.get("seed") is not None:
        seed = int(config["seed"])
        if isinstance(manifold, Sphere):
            return Isometry(manifold, stats.special_ortho_group.rvs(manifold.n + 1, random_state=seed))
        return Isometry(manifold, stats.unitary_group.rvs(manifold.n, random_state=seed))
    return Isometry.identity(manifold)


def get_objective(config: Dict[str, Any], manifold: Manifold) -> Objective:
    """
    Factory function to create an objective from its config section.

    Args:
        config: Objective configuration (name plus parameters)
        manifold: Manifold built from the manifold section

    Returns:
        Objective: The objective; its manifold is compatible with `manifold`

    Raises:
        InvalidObjectiveError: for unknown names or inconsistent parameters
    """
    name = str(config.get("name", "legendre9")).lower()

    if name in ("legendre9", "legendre"):
        if not isinstance(manifold, Sphere):
            raise UnsupportedManifoldError("the Legendre objective needs a sphere manifold",
                                           component="objectives", manifold=manifold.name)
        degree = int(config.get("degree") or 9)
        return LegendreObjective(manifold, degree=degree, axis=int(config.get("axis", -1)))

    if name == "grassmann_trace":
        if not isinstance(manifold, Grassmann):
            raise UnsupportedManifoldError("the trace objective needs a grassmann manifold",
                                           component="objectives", manifold=manifold.name)
        if config.get("diagonal") is not None:
            c = np.diag(np.asarray(config["diagonal"], dtype=float))
        elif config.get("matrix") is not None:
            c = _matrix_from_config(config)
        else:
            raise InvalidObjectiveError("grassmann_trace needs 'diagonal' or 'matrix'",
                                        component="objectives")
        if c.shape != (manifold.n, manifold.n):
            raise InvalidObjectiveError(f"C must be {manifold.n}x{manifold.n}, got {c.shape}",
                                        component="objectives")
        return GrassmannTraceObjective(c, manifold.k)

    if name == "squared_distance":
        center = manifold.make_point(np.asarray(config["center"]), reproject=True)
        return SquaredDistanceObjective(manifold, center, float(config.get("scale", 1.0)))

    if name == "transported":
        if not config.get("base"):
            raise InvalidObjectiveError("transported objectives need a 'base' section",
                                        component="objectives")
        base = get_objective(config["base"], manifold)
        isometry = get_isometry(config.get("rotation") or {}, base.manifold, base)
        return TransportedObjective(base, isometry)

    raise InvalidObjectiveError(f"unknown objective '{name}'", component="objectives")
