"""
Result records for seeded runs.
"""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Optional

from ..core.exceptions import BaryOptError


def _now() -> datetime:
    return datetime.now(timezone.utc)


class RunStatus(Enum):
    """Status of a seeded run."""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class RunResult:
    """Result of one seeded run."""
    name: str
    seed: int
    status: RunStatus = RunStatus.PENDING
    output: Any = None
    error: Optional[Dict[str, Any]] = None
    start_time: datetime = field(default_factory=_now)
    end_time: Optional[datetime] = None
    duration: Optional[float] = None

    def complete(self, output: Any = None, error: Optional[BaseException] = None) -> None:
        """Mark the run as finished, failed when `error` is given."""
        self.end_time = _now()
        self.duration = (self.end_time - self.start_time).total_seconds()
        if error is not None:
            self.status = RunStatus.FAILED
            if isinstance(error, BaryOptError):
                self.error = error.to_dict()
            else:
                self.error = {"error": type(error).__name__, "message": str(error), "component": None}
        else:
            self.status = RunStatus.COMPLETED
            self.output = output

    @property
    def ok(self) -> bool:
        return self.status == RunStatus.COMPLETED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "seed": self.seed,
            "status": self.status.value,
            "error": self.error,
            "duration": self.duration,
        }


@dataclass
class FanoutResult:
    """Results of every seed of one batch, in seed order."""
    name: str
    runs: List[RunResult] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> List[RunResult]:
        return [r for r in self.runs if r.status == RunStatus.FAILED]

    @property
    def outputs(self) -> List[Any]:
        return [r.output for r in self.runs if r.ok]

    @property
    def status(self) -> RunStatus:
        return RunStatus.FAILED if self.failed else RunStatus.COMPLETED

    @property
    def error(self) -> Optional[str]:
        if not self.failed:
            return None
        return f"Failed runs: {', '.join(r.name for r in self.failed)}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status.value,
            "error": self.error,
            "metadata": self.metadata,
            "runs": [r.to_dict() for r in self.runs],
        }
