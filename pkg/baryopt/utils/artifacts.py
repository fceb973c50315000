#!/usr/bin/env python3

"""
Artifact I/O: JSON and CSV files written atomically.

Every writer goes through a temporary file in the target directory and an
os.replace, so concurrent seeds never leave half-written files behind.
"""

import csv
import json
import logging
import math
import os
import tempfile
from typing import Any, Iterable, List, Sequence

import numpy as np

logger = logging.getLogger("BaryOpt.Utils.Artifacts")


def load_json_file(file_path: str) -> Any:
    """Load data from a JSON file."""
    with open(file_path, "r", encoding="utf-8") as f:
        return json.load(f)


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays, complex numbers and nested containers to JSON types."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        # JSON has no inf/nan
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _atomic_write(path: str, write) -> str:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            write(f)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    logger.debug(f"Wrote {path}")
    return path


def write_json(path: str, data: Any) -> str:
    """Write UTF-8 JSON with sorted keys."""
    payload = to_jsonable(data)

    def write(f):
        json.dump(payload, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")

    return _atomic_write(path, write)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Write an RFC-4180 CSV file (CRLF line endings, minimal quoting)."""

    def write(f):
        writer = csv.writer(f, lineterminator="\r\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])

    return _atomic_write(path, write)


def _format_cell(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return int(value)
    return value


def read_csv(path: str) -> List[List[str]]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return [row for row in csv.reader(f)]
