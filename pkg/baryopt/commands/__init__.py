"""
CLI verbs, one module each.
"""

from .compare import cmd_compare
from .optimize import cmd_optimize
from .temperatures import cmd_temperatures
from .verify_bounds import cmd_verify_bounds

COMMANDS = {
    "optimize": cmd_optimize,
    "temperatures": cmd_temperatures,
    "verify-bounds": cmd_verify_bounds,
    "compare": cmd_compare,
}

__all__ = [
    "COMMANDS",
    "cmd_compare",
    "cmd_optimize",
    "cmd_temperatures",
    "cmd_verify_bounds",
]
