"""
Telemetry for baryopt.

Thread-safe metrics for chains and seeded runs, and timing spans.
"""

from .metrics import MetricsCollector, get_metrics_collector, init_metrics
from .tracer import Span

__all__ = [
    "Span",
    "MetricsCollector", "get_metrics_collector", "init_metrics",
]
