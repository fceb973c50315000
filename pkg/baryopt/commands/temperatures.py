#!/usr/bin/env python3

"""
`baryopt temperatures`: threshold report for a known minimiser.
"""

import logging
from typing import Any, Dict

from ..core.config import RunConfig
from ..utils.artifacts import write_json
from .common import build_context, temperature_report

logger = logging.getLogger("BaryOpt.Commands.Temperatures")


def cmd_temperatures(config: RunConfig) -> Dict[str, Any]:
    """Write temperatures.json with T_o, T_delta and every intermediate constant."""
    ctx = build_context(config)
    report = temperature_report(ctx)
    payload = {"config": config.resolved(), "report": report.to_dict()}
    write_json(ctx.path("temperatures.json"), payload)
    logger.info(f"T_o={report.T_o:.6g}, T_delta={report.T_delta:.6g}")
    return payload
