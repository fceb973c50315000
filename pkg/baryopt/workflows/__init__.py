"""
Seed fan-out and run result records.
"""

from .base import FanoutResult, RunResult, RunStatus
from .fanout import SeedFanout, resolve_threads

__all__ = [
    "FanoutResult",
    "RunResult",
    "RunStatus",
    "SeedFanout",
    "resolve_threads",
]
