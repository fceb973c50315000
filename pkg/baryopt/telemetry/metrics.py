#!/usr/bin/env python3

import logging
import threading
from typing import Any, Dict, List, Optional

logger = logging.getLogger("BaryOpt.Telemetry.Metrics")

# Global metrics collector instance
_metrics_collector: Optional["MetricsCollector"] = None
_collector_lock = threading.Lock()


class MetricsCollector:
    """
    Collector for sampler, annealing and barycentre metrics.

    Counters, gauges and histograms are keyed by sorted label sets. All
    updates take a lock, so seeds running on a thread pool may share one
    collector.
    """

    def __init__(self, service_name: str = "baryopt"):
        """
        Initialize a new metrics collector.

        Args:
            service_name: Name used to identify the metrics source
        """
        self.service_name = service_name
        self.counters: Dict[str, Dict[str, Any]] = {}
        self.gauges: Dict[str, Dict[str, Any]] = {}
        self.histograms: Dict[str, Dict[str, Any]] = {}
        self._lock = threading.Lock()
        self._init_default_metrics()

    def _init_default_metrics(self) -> None:
        self.create_counter("chain.proposal.count", "Proposals drawn by Metropolis-Hastings chains")
        self.create_counter("chain.accept.count", "Accepted proposals")
        self.create_counter("barycentre.cut_locus.drop", "Samples dropped by estimators as cut-locus hits")
        self.create_counter("run.error.count", "Failed seeded runs")
        self.create_gauge("chain.acceptance_rate", "Acceptance rate of the latest chain")
        self.create_histogram("chain.runtime", "Chain wall-clock time in seconds")
        self.create_histogram("run.final_distance", "Distance from the final estimate to the known minimizer")

    def create_counter(self, name: str, description: str, labels: Optional[List[str]] = None) -> None:
        self.counters[name] = {"description": description, "labels": labels or [], "values": {}}

    def create_gauge(self, name: str, description: str, labels: Optional[List[str]] = None) -> None:
        self.gauges[name] = {"description": description, "labels": labels or [], "values": {}}

    def create_histogram(self, name: str, description: str, labels: Optional[List[str]] = None) -> None:
        self.histograms[name] = {"description": description, "labels": labels or [], "values": {}}

    def increment_counter(self, name: str, value: float = 1.0, labels: Optional[Dict[str, str]] = None) -> None:
        """
        Increment a counter metric.

        Args:
            name: Name of the metric
            value: Value to increment by
            labels: Optional labels for the metric
        """
        if name not in self.counters:
            logger.warning(f"Counter {name} not found")
            return
        key = self._get_label_key(labels)
        with self._lock:
            values = self.counters[name]["values"]
            values[key] = values.get(key, 0.0) + value

    def set_gauge(self, name: str, value: float, labels: Optional[Dict[str, str]] = None) -> None:
        if name not in self.gauges:
            logger.warning(f"Gauge {name} not found")
            return
        with self._lock:
            self.gauges[name]["values"][self._get_label_key(labels)] = value

    def record_histogram(self, name: str, value: float, labels: Optional[Dict[str, str]] = None) -> None:
        if name not in self.histograms:
            logger.warning(f"Histogram {name} not found")
            return
        with self._lock:
            self.histograms[name]["values"].setdefault(self._get_label_key(labels), []).append(value)

    def get_counter(self, name: str, labels: Optional[Dict[str, str]] = None) -> float:
        if name not in self.counters:
            return 0.0
        with self._lock:
            return self.counters[name]["values"].get(self._get_label_key(labels), 0.0)

    def get_gauge(self, name: str, labels: Optional[Dict[str, str]] = None) -> float:
        if name not in self.gauges:
            return 0.0
        with self._lock:
            return self.gauges[name]["values"].get(self._get_label_key(labels), 0.0)

    def get_histogram_stats(self, name: str, labels: Optional[Dict[str, str]] = None) -> Dict[str, float]:
        """
        Get statistics for a histogram metric.

        Returns:
            Dict[str, float]: count, sum, avg, min and max of the recorded values
        """
        with self._lock:
            values = list(self.histograms.get(name, {}).get("values", {}).get(self._get_label_key(labels), []))
        if not values:
            return {"count": 0, "sum": 0.0, "avg": 0.0, "min": 0.0, "max": 0.0}
        total = float(sum(values))
        return {"count": len(values), "sum": total, "avg": total / len(values),
                "min": float(min(values)), "max": float(max(values))}

    def _get_label_key(self, labels: Optional[Dict[str, str]] = None) -> str:
        if not labels:
            return ""
        return ",".join(f"{k}={v}" for k, v in sorted(labels.items()))

    def record_chain(self, kind: str, proposals: int, accepted: int, runtime: float) -> None:
        """
        Record metrics for one finished chain.

        Args:
            kind: "mh" or "annealing"
            proposals: Number of proposals drawn
            accepted: Number of accepted proposals
            runtime: Wall-clock time in seconds
        """
        labels = {"kind": kind}
        self.increment_counter("chain.proposal.count", float(proposals), labels)
        self.increment_counter("chain.accept.count", float(accepted), labels)
        self.set_gauge("chain.acceptance_rate", accepted / proposals if proposals else 1.0, labels)
        self.record_histogram("chain.runtime", runtime, labels)

    def snapshot(self) -> Dict[str, Any]:
        """Plain-dict view of every metric, for summaries."""
        with self._lock:
            return {
                "counters": {k: dict(v["values"]) for k, v in self.counters.items()},
                "gauges": {k: dict(v["values"]) for k, v in self.gauges.items()},
            }


def init_metrics(service_name: str = "baryopt") -> MetricsCollector:
    """
    Initialize the global metrics collector.

    Args:
        service_name: Name used to identify the metrics source

    Returns:
        MetricsCollector: The initialized metrics collector
    """
    global _metrics_collector
    with _collector_lock:
        if _metrics_collector is None:
            _metrics_collector = MetricsCollector(service_name)
            logger.debug(f"Initialized metrics collector for {service_name}")
    return _metrics_collector


def get_metrics_collector() -> MetricsCollector:
    """Global metrics collector, created on first use."""
    return _metrics_collector or init_metrics()
