#!/usr/bin/env python3

"""
Command-line entry point.

    baryopt optimize --config config/legendre_sphere.yaml --out runs/legendre
    baryopt temperatures --config config/verify.yaml
    baryopt verify-bounds --config config/verify.yaml --threads 4
    baryopt compare --config config/compare.yaml

Exit codes: 0 success, 1 runtime failure, 2 invalid configuration,
3 bound verification produced failing rows. On failure an error record is
written to `<output_dir>/error.json` and echoed to stderr.
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from .. import __version__, configure_logging
from ..commands import COMMANDS
from ..telemetry.tracer import Span
from ..utils.artifacts import write_json
from .config_loader import RunConfigLoader
from .exceptions import BaryOptError, ConfigurationError, VerificationFailedError

logger = logging.getLogger("BaryOpt.Core.CLI")

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2
EXIT_VERIFICATION = 3

DEFAULT_OUTPUT_DIR = "runs"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="baryopt",
        description="Global optimization on spheres and Grassmannians by tracking a Gibbs barycentre",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        sub.add_argument("--config", type=str, default=None,
                         help="Path to a YAML or JSON experiment file")
        sub.add_argument("--seed-override", type=int, default=None,
                         help="Run a single seed instead of the configured list")
        sub.add_argument("--out", type=str, default=None, help="Output directory")
        sub.add_argument("--threads", type=int, default=None,
                         help="Worker threads for the seed fan-out (fallback: BARYOPT_THREADS)")
        sub.add_argument("--log-level", type=str, default=None,
                         help="DEBUG, INFO, WARNING or ERROR")
    return parser


def _error_record(command: str, error: Exception) -> Dict[str, Any]:
    if isinstance(error, BaryOptError):
        record = error.to_dict()
    else:
        record = {"error": type(error).__name__, "message": str(error), "component": None}
    record["command"] = command
    return record


def _report_failure(command: str, error: Exception, output_dir: str) -> None:
    record = _error_record(command, error)
    try:
        write_json(os.path.join(output_dir, "error.json"), record)
    except OSError as e:
        logger.error(f"Could not write error.json: {e}")
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, load the configuration, dispatch to the verb and map the exit code."""
    args = build_parser().parse_args(argv)
    overrides = {
        "seed_override": args.seed_override,
        "out": args.out,
        "threads": args.threads,
        "log_level": args.log_level,
    }
    output_dir = args.out or DEFAULT_OUTPUT_DIR

    try:
        config = RunConfigLoader().load_validated(args.config, overrides)
    except ConfigurationError as e:
        configure_logging(args.log_level)
        logger.error(str(e))
        _report_failure(args.command, e, output_dir)
        return EXIT_CONFIG

    configure_logging(config.logging.level, config.logging.format)
    output_dir = config.output_dir
    logger.info(f"baryopt {args.command}: output in {output_dir}")
    try:
        with Span(args.command, attributes={"seeds": list(config.seeds)}) as span:
            COMMANDS[args.command](config)
    except VerificationFailedError as e:
        logger.error(str(e))
        _report_failure(args.command, e, output_dir)
        return EXIT_VERIFICATION
    except ConfigurationError as e:
        logger.error(str(e))
        _report_failure(args.command, e, output_dir)
        return EXIT_CONFIG
    except Exception as e:
        logger.exception(f"{args.command} failed: {e}")
        _report_failure(args.command, e, output_dir)
        return EXIT_RUNTIME
    logger.info(f"{args.command} finished in {span.elapsed:.2f}s")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
