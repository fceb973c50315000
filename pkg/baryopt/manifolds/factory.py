#!/usr/bin/env python3

import logging
from typing import Any, Callable, Dict, Type

from ..core.exceptions import UnsupportedManifoldError
from .base import Manifold
from .grassmann import Grassmann
from .sphere import Sphere

logger = logging.getLogger("BaryOpt.Manifolds.Factory")

# Registry of manifold builders keyed by config name
_manifold_registry: Dict[str, Callable[..., Manifold]] = {
    "sphere": Sphere,
    "grassmann": Grassmann,
}


def get_manifold(config: Dict[str, Any]) -> Manifold:
    """
    Factory function to create a manifold from its config section.

    Args:
        config: Manifold configuration, e.g. {"name": "sphere", "n": 2} or
            {"name": "grassmann", "k": 2, "n": 4}

    Returns:
        Manifold: The constructed manifold

    Raises:
        UnsupportedManifoldError: If the name is not registered
    """
    name = str(config.get("name", "sphere")).lower()
    builder = _manifold_registry.get(name)
    if builder is None:
        raise UnsupportedManifoldError(f"unknown manifold '{name}'",
                                       component="manifolds", manifold=name)
    params = {k: v for k, v in config.items() if k != "name" and v is not None}
    manifold = builder(**params)
    logger.debug(f"Created {manifold!r}")
    return manifold


def register_manifold(name: str, manifold_class: Type[Manifold]) -> None:
    """
    Register a custom manifold class.

    Args:
        name: Name used in the manifold config section
        manifold_class: Class implementing the Manifold interface
    """
    _manifold_registry[name.lower()] = manifold_class
    logger.info(f"Registered custom manifold: {name}")
