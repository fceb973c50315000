#!/usr/bin/env python3

"""
Annealing schedules: T_n for step n = 1, 2, ...
"""

import abc
import math
from typing import Any, Dict

from ..core.exceptions import InvalidParameterError


def _positive(name: str, value: float) -> float:
    if not value > 0:
        raise InvalidParameterError(f"{name} must be positive", component="baseline",
                                    parameter=name, value=value)
    return float(value)


class AnnealingSchedule(abc.ABC):
    """Strictly positive, nonincreasing temperature sequence."""

    kind = "base"

    @abc.abstractmethod
    def temperature(self, step: int) -> float:
        """Temperature used for the transition into step `step` (1-based)."""

    def __call__(self, step: int) -> float:
        return self.temperature(step)

    @abc.abstractmethod
    def describe(self) -> Dict[str, Any]:
        pass


class ConstantSchedule(AnnealingSchedule):
    kind = "constant"

    def __init__(self, T: float):
        self.T = _positive("T", T)

    def temperature(self, step: int) -> float:
        return self.T

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "T": self.T}


class GeometricSchedule(AnnealingSchedule):
    """T0 * ratio^level, the level advancing every `steps_per_level` steps."""

    kind = "geometric"

    def __init__(self, T0: float = 1.0, ratio: float = 0.995, steps_per_level: int = 1):
        self.T0 = _positive("T0", T0)
        if not 0.0 < ratio <= 1.0:
            raise InvalidParameterError("ratio must lie in (0, 1]", component="baseline",
                                        parameter="ratio", value=ratio)
        if steps_per_level < 1:
            raise InvalidParameterError("steps_per_level must be >= 1", component="baseline",
                                        parameter="steps_per_level", value=steps_per_level)
        self.ratio = float(ratio)
        self.steps_per_level = int(steps_per_level)

    def temperature(self, step: int) -> float:
        level = (max(step, 1) - 1) // self.steps_per_level
        # floor keeps long runs strictly positive
        return max(self.T0 * self.ratio ** level, 1e-300)

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "T0": self.T0, "ratio": self.ratio,
                "steps_per_level": self.steps_per_level}


class LogarithmicSchedule(AnnealingSchedule):
    """T_n = c / log(n + offset); the default offset e gives T_0 = c."""

    kind = "logarithmic"

    def __init__(self, c: float = 1.0, offset: float = math.e):
        self.c = _positive("c", c)
        if not offset > 1.0:
            raise InvalidParameterError("offset must exceed 1", component="baseline",
                                        parameter="offset", value=offset)
        self.offset = float(offset)

    def temperature(self, step: int) -> float:
        return self.c / math.log(max(step, 0) + self.offset)

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "c": self.c, "offset": self.offset}


def get_schedule(config: Dict[str, Any]) -> AnnealingSchedule:
    """
    Factory function to create a schedule from a config mapping.

    Args:
        config: Mapping with `kind` ("geometric", "logarithmic" or "constant")
            and that kind's parameters

    Raises:
        InvalidParameterError: for an unknown kind
    """
    kind = str(config.get("kind", "geometric")).lower()
    if kind == "geometric":
        return GeometricSchedule(float(config.get("T0", 1.0)), float(config.get("ratio", 0.995)),
                                 int(config.get("steps_per_level", 1)))
    if kind == "logarithmic":
        return LogarithmicSchedule(float(config.get("c", 1.0)), float(config.get("offset", math.e)))
    if kind == "constant":
        return ConstantSchedule(float(config["T"]))
    raise InvalidParameterError(f"unknown schedule '{kind}'", component="baseline",
                                parameter="kind", value=kind)
