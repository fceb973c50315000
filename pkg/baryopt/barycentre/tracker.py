#!/usr/bin/env python3

"""
Streaming barycentre of a sample stream and its trajectory log.
"""

import logging
from typing import Any, Dict, List, Optional

from ..core.exceptions import InvalidParameterError
from ..manifolds.base import Manifold, Point
from ..objectives.base import Objective
from ..utils.artifacts import write_csv

logger = logging.getLogger("BaryOpt.Barycentre.Tracker")


class BarycentreTracker:
    """
    Recursive barycentre x_n = x_{n-1} #_{1/n} z_n.

    The tracker is owned by one chain; it is not thread-safe.
    """

    def __init__(self, manifold: Manifold, initial: Optional[Point] = None):
        self.manifold = manifold
        if initial is not None:
            manifold.validate_point(initial)
        self.x_hat = initial
        self.count = 0

    def update(self, z: Point) -> "BarycentreTracker":
        """Move x_hat a fraction 1/(count+1) of the way to z."""
        self.count += 1
        if self.count == 1 or self.x_hat is None:
            self.x_hat = z
        else:
            self.x_hat = self.manifold.geodesic_interpolate(self.x_hat, z, 1.0 / self.count)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "count": self.count,
            "x_hat": None if self.x_hat is None else self.x_hat.to_list(),
        }


class TrajectoryRecorder:
    """
    Rows (n, x_hat coords, d(x_hat, x*), U(x_hat)) taken every `stride` updates.

    The distance column is empty when no minimiser is known.
    """

    def __init__(self, manifold: Manifold, objective: Objective, x_star: Optional[Point] = None,
                 stride: int = 1):
        if stride < 1:
            raise InvalidParameterError("stride must be >= 1", component="barycentre",
                                        parameter="stride", value=stride)
        self.manifold = manifold
        self.objective = objective
        self.x_star = x_star
        self.stride = stride
        self.rows: List[List[Any]] = []
        self._last_n: Optional[int] = None

    def _row(self, n: int, x_hat: Point) -> List[Any]:
        distance: Any = "" if self.x_star is None else self.manifold.distance(x_hat, self.x_star)
        return [n] + self.manifold.to_row(x_hat.coords) + [distance, self.objective.evaluate(x_hat)]

    def record(self, n: int, x_hat: Point, force: bool = False) -> None:
        if self._last_n == n:
            return
        if force or n % self.stride == 0:
            self.rows.append(self._row(n, x_hat))
            self._last_n = n

    def finish(self, n: int, x_hat: Point) -> None:
        """Make sure the final state is in the log."""
        self.record(n, x_hat, force=True)

    @property
    def header(self) -> List[str]:
        return ["n"] + self.manifold.coordinate_labels("xhat") + ["distance", "U"]

    def write(self, path: str) -> str:
        return write_csv(path, self.header, self.rows)
