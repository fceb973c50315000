"""
Manifolds for baryopt.

The unit sphere S^n and the complex Grassmannian Gr(k, C^n), sharing the
Manifold interface used by every other component.
"""

from .base import (
    CUT_LOCUS_TOL,
    Manifold,
    ManifoldDescriptor,
    PolarChart,
    Point,
    Tangent,
    sphere_area,
    stack_points,
)
from .factory import get_manifold, register_manifold
from .grassmann import Grassmann, grassmann_volume
from .sphere import Sphere

__all__ = [
    "CUT_LOCUS_TOL",
    "Manifold", "ManifoldDescriptor", "PolarChart", "Point", "Tangent",
    "Sphere", "Grassmann", "grassmann_volume",
    "get_manifold", "register_manifold",
    "sphere_area", "stack_points",
]
