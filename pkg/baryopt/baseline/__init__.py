"""
Simulated-annealing comparator.
"""

from .annealing import (
    AnnealingResult,
    annealing_header,
    run_annealing,
    summarize_runs,
    write_annealing_csv,
)
from .schedules import (
    AnnealingSchedule,
    ConstantSchedule,
    GeometricSchedule,
    LogarithmicSchedule,
    get_schedule,
)

__all__ = [
    "AnnealingResult",
    "AnnealingSchedule",
    "ConstantSchedule",
    "GeometricSchedule",
    "LogarithmicSchedule",
    "annealing_header",
    "get_schedule",
    "run_annealing",
    "summarize_runs",
    "write_annealing_csv",
]
