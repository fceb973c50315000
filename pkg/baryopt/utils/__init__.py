"""Utility helpers for baryopt."""

from .artifacts import load_json_file, read_csv, to_jsonable, write_csv, write_json

__all__ = ["load_json_file", "read_csv", "to_jsonable", "write_csv", "write_json"]
