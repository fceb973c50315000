#!/usr/bin/env python3

"""
Validated run configuration.

The merged configuration dictionary produced by RunConfigLoader is checked
against these models before any computation starts; failures become a
ConfigurationError listing dotted paths of the offending keys.
"""

import logging
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .exceptions import ConfigurationError

logger = logging.getLogger("BaryOpt.Core.Config")


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ManifoldSpec(_Section):
    name: Literal["sphere", "grassmann"] = "sphere"
    n: int = Field(2, ge=1)
    k: Optional[int] = None

    @model_validator(mode="after")
    def _check_k(self) -> "ManifoldSpec":
        if self.name == "grassmann":
            if self.k is None or not 1 <= self.k < self.n:
                raise ValueError("grassmann needs 1 <= k < n")
        elif self.k is not None:
            raise ValueError("k only applies to grassmann manifolds")
        return self


class RotationSpec(_Section):
    to: Optional[List[float]] = None
    matrix: Optional[List[List[float]]] = None
    matrix_imag: Optional[List[List[float]]] = None
    seed: Optional[int] = None


class ObjectiveSpec(_Section):
    name: Literal["legendre9", "legendre", "grassmann_trace", "squared_distance", "transported"] = "legendre9"
    degree: int = 9
    axis: int = -1
    diagonal: Optional[List[float]] = None
    matrix: Optional[List[List[float]]] = None
    matrix_imag: Optional[List[List[float]]] = None
    center: Optional[List[Any]] = None
    scale: float = Field(1.0, gt=0)
    base: Optional["ObjectiveSpec"] = None
    rotation: Optional[RotationSpec] = None

    @model_validator(mode="after")
    def _check_sources(self) -> "ObjectiveSpec":
        if self.name == "grassmann_trace" and self.diagonal is None and self.matrix is None:
            raise ValueError("grassmann_trace needs 'diagonal' or 'matrix'")
        if self.name == "squared_distance" and self.center is None:
            raise ValueError("squared_distance needs 'center'")
        if self.name == "transported" and self.base is None:
            raise ValueError("transported needs 'base'")
        return self


ObjectiveSpec.model_rebuild()


class KernelSpec(_Section):
    name: Literal["auto", "vmf", "conjugation"] = "auto"
    concentration: float = Field(20.0, gt=0)
    step_scale: float = Field(0.2, gt=0)


class ChainSpec(_Section):
    steps: int = Field(5000, ge=0)
    burn_in: Optional[int] = Field(None, ge=0)
    trajectory_stride: int = Field(1, ge=1)
    write_samples: bool = False

    @property
    def effective_burn_in(self) -> int:
        if self.burn_in is not None:
            return self.burn_in
        return self.steps // 10

    @model_validator(mode="after")
    def _check_burn_in(self) -> "ChainSpec":
        if self.steps > 0 and self.effective_burn_in >= self.steps:
            raise ValueError("burn_in must be smaller than steps")
        return self


class ProfileSpec(_Section):
    pad: float = Field(0.05, gt=0, lt=1)
    seed: int = 0
    fd_step: float = Field(1e-4, gt=0)
    sandwich_samples: int = Field(10_000, ge=1)
    cloud_size: int = Field(1_000_000, ge=1)
    shell_radii: int = Field(400, ge=1)
    shell_directions: int = Field(32, ge=1)
    refine_bands: int = Field(16, ge=1)
    refine_iterations: int = Field(200, ge=0)
    curve_points: int = Field(181, ge=2)


class VerifySpec(_Section):
    temperatures: Optional[List[float]] = None
    grid_size: int = Field(5, ge=1)
    grid_ratio: float = Field(4.0, gt=1)
    steps: int = Field(1_000_000, ge=1)
    burn_in: int = Field(10_000, ge=0)
    seed: int = 0
    delta_fraction: float = Field(0.3, gt=0, lt=0.5)
    hessian_points: int = Field(50, ge=1)
    hessian_directions: int = Field(10, ge=1)
    fd_step: float = Field(1e-3, gt=0)
    sigmas: float = Field(3.0, gt=0)

    @model_validator(mode="after")
    def _check(self) -> "VerifySpec":
        if self.burn_in >= self.steps:
            raise ValueError("burn_in must be smaller than steps")
        if self.temperatures is not None and any(t <= 0 for t in self.temperatures):
            raise ValueError("temperatures must be positive")
        return self


class ScheduleSpec(_Section):
    kind: Literal["geometric", "logarithmic", "constant"] = "geometric"
    T0: float = Field(1.0, gt=0)
    ratio: float = Field(0.995, gt=0, le=1)
    steps_per_level: int = Field(1, ge=1)
    c: float = Field(1.0, gt=0)
    offset: float = Field(2.718281828459045, gt=1)
    T: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def _check_constant(self) -> "ScheduleSpec":
        if self.kind == "constant" and self.T is None:
            raise ValueError("constant schedules need 'T'")
        return self


class CompareSpec(_Section):
    schedules: List[ScheduleSpec] = Field(default_factory=lambda: [
        ScheduleSpec(kind="geometric"), ScheduleSpec(kind="logarithmic")])
    trajectory_stride: int = Field(10, ge=1)


class LoggingSpec(_Section):
    level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class RunConfig(_Section):
    """Full configuration of one CLI invocation."""

    manifold: ManifoldSpec = Field(default_factory=ManifoldSpec)
    objective: ObjectiveSpec = Field(default_factory=ObjectiveSpec)
    mode: Literal["oracle", "blind"] = "blind"
    temperature: Optional[float] = Field(None, gt=0)
    delta: Optional[float] = Field(None, gt=0)
    epsilon: Optional[float] = Field(None, gt=0)
    init: Optional[List[Any]] = None
    kernel: KernelSpec = Field(default_factory=KernelSpec)
    chain: ChainSpec = Field(default_factory=ChainSpec)
    seeds: List[int] = Field(default_factory=lambda: [0], min_length=1)
    threads: int = Field(1, ge=1)
    output_dir: str = "runs"
    success_tolerance: float = Field(0.15, gt=0)
    profile: ProfileSpec = Field(default_factory=ProfileSpec)
    verify: VerifySpec = Field(default_factory=VerifySpec)
    compare: CompareSpec = Field(default_factory=CompareSpec)
    logging: LoggingSpec = Field(default_factory=LoggingSpec)

    @model_validator(mode="after")
    def _check_mode(self) -> "RunConfig":
        if self.mode == "blind" and self.temperature is None:
            raise ValueError("blind mode needs 'temperature'")
        return self

    def resolved(self) -> Dict[str, Any]:
        """Fully defaulted configuration, echoed into every artifact."""
        data = self.model_dump(mode="json")
        data["chain"]["burn_in"] = self.chain.effective_burn_in
        return data

    def objective_config(self) -> Dict[str, Any]:
        return self.objective.model_dump(exclude_none=True)

    def manifold_config(self) -> Dict[str, Any]:
        return self.manifold.model_dump(exclude_none=True)


def _error_path(loc: Any) -> str:
    return ".".join(str(p) for p in loc) or "<root>"


def validate_config(data: Dict[str, Any]) -> RunConfig:
    """
    Validate a merged configuration dictionary.

    Raises:
        ConfigurationError: with one dotted path per problem
    """
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        errors = e.errors()
        paths = [_error_path(err["loc"]) for err in errors]
        details = "; ".join(f"{_error_path(err['loc'])}: {err['msg']}" for err in errors)
        logger.debug(f"Configuration rejected: {details}")
        raise ConfigurationError(details, component="config", paths=paths) from e
