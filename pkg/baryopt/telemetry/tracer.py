#!/usr/bin/env python3

import logging
import time
from typing import Any, Dict, Optional

logger = logging.getLogger("BaryOpt.Telemetry.Tracer")


class Span:
    """
    A timed operation.

    Used as a context manager around chains, annealing runs and commands; the
    duration feeds the `runtime` field of run summaries.
    """

    def __init__(self, name: str, attributes: Optional[Dict[str, Any]] = None):
        self.name = name
        self.attributes = attributes or {}
        self.status = "ok"
        self.error: Optional[str] = None
        self._start = time.perf_counter()
        self.duration: Optional[float] = None

    def set_status(self, status: str, error: Optional[str] = None) -> None:
        self.status = status
        self.error = error

    def end(self) -> None:
        if self.duration is None:
            self.duration = time.perf_counter() - self._start

    @property
    def elapsed(self) -> float:
        return self.duration if self.duration is not None else time.perf_counter() - self._start

    def __enter__(self) -> "Span":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if exc_type:
            self.set_status("error", str(exc_val))
        self.end()
        logger.debug(f"Span {self.name} finished in {self.elapsed:.3f}s ({self.status}) {self.attributes}")
