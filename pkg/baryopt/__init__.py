#!/usr/bin/env python3

"""
baryopt

Black-box global optimization on compact symmetric spaces by tracking the
Riemannian barycentre of a Gibbs distribution sampled with a symmetric
Metropolis-Hastings chain.
"""

import logging
import os
from typing import Optional

__version__ = "0.1.0"

# Logging defaults come from the environment; the CLI overrides them with the
# resolved run configuration.
DEFAULT_LOG_LEVEL = os.environ.get("BARYOPT_LOG_LEVEL", "INFO")
DEFAULT_LOG_FORMAT = os.environ.get(
    "BARYOPT_LOG_FORMAT",
    "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)

logger = logging.getLogger("BaryOpt")
logger.addHandler(logging.NullHandler())


def configure_logging(level: Optional[str] = None, fmt: Optional[str] = None) -> None:
    """
    Configure package-wide logging.

    Args:
        level: Log level name (DEBUG, INFO, WARNING, ERROR); defaults to
            BARYOPT_LOG_LEVEL
        fmt: Log record format; defaults to BARYOPT_LOG_FORMAT
    """
    level_name = (level or DEFAULT_LOG_LEVEL).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.INFO),
        format=fmt or DEFAULT_LOG_FORMAT,
        force=True
    )
    logger.debug(f"Logging configured at level {level_name}")


__all__ = [
    "configure_logging",
    "logger",
    "__version__",
]
