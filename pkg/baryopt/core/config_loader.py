#!/usr/bin/env python3

import copy
import json
import logging
import os
from typing import Any, Dict, Optional

import yaml

from .config import RunConfig, validate_config
from .exceptions import ConfigurationError

logger = logging.getLogger("BaryOpt.Core.ConfigLoader")

DEFAULTS_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yaml")

# Environment names that do not follow the nested `__` convention.
_ENV_ALIASES = {
    "LOG_LEVEL": ("logging", "level"),
    "LOG_FORMAT": ("logging", "format"),
    "THREADS": ("threads",),
}


class RunConfigLoader:
    """
    Configuration loader for baryopt runs.

    Loads configuration from various sources in order of precedence:
    1. Command-line flags
    2. Environment variables (BARYOPT_SECTION__KEY=value)
    3. Configuration file (--config)
    4. Packaged defaults (baryopt/core/config.yaml)
    """

    def __init__(self, defaults_path: str = DEFAULTS_PATH):
        self.defaults_path = defaults_path
        self.config: Dict[str, Any] = {}

    def load(self, config_file: Optional[str] = None, args: Optional[Dict[str, Any]] = None,
             env_prefix: str = "BARYOPT_", environ: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
        """
        Load and merge configuration from every source.

        Args:
            config_file: Path to a YAML or JSON experiment file
            args: CLI overrides (seed_override, out, threads, log_level)
            env_prefix: Prefix for environment variables
            environ: Environment mapping; os.environ by default

        Returns:
            Dict[str, Any]: Merged, not yet validated configuration

        Raises:
            ConfigurationError: if the experiment file cannot be read
        """
        self.config = self._read_file(self.defaults_path) or {}
        if config_file:
            self._deep_merge(self.config, self._read_file(config_file) or {})
            logger.info(f"Loaded configuration from {config_file}")
        self._load_from_env(env_prefix, os.environ if environ is None else environ)
        if args:
            self._load_from_args(args)
        return self.config

    def load_validated(self, config_file: Optional[str] = None, args: Optional[Dict[str, Any]] = None,
                       env_prefix: str = "BARYOPT_", environ: Optional[Dict[str, str]] = None) -> RunConfig:
        """load() followed by schema validation."""
        return validate_config(self.load(config_file, args, env_prefix, environ))

    def _read_file(self, file_path: str) -> Any:
        if not os.path.exists(file_path):
            raise ConfigurationError(f"configuration file not found: {file_path}",
                                     component="config", paths=["--config"])
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                if file_path.endswith((".yaml", ".yml")):
                    data = yaml.safe_load(f)
                elif file_path.endswith(".json"):
                    data = json.load(f)
                else:
                    raise ConfigurationError(f"unsupported file format: {file_path}",
                                             component="config", paths=["--config"])
        except (yaml.YAMLError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"cannot parse {file_path}: {e}", component="config",
                                     paths=["--config"]) from e
        if data is not None and not isinstance(data, dict):
            raise ConfigurationError(f"{file_path} must contain a mapping", component="config",
                                     paths=["<root>"])
        return data

    def _load_from_env(self, prefix: str, environ: Dict[str, str]) -> None:
        """
        Load configuration from environment variables.

        BARYOPT_CHAIN__STEPS=100 sets chain.steps; BARYOPT_LOG_LEVEL,
        BARYOPT_LOG_FORMAT and BARYOPT_THREADS map onto logging.level,
        logging.format and threads.
        """
        env_vars = {k: v for k, v in environ.items() if k.startswith(prefix)}
        for key, value in env_vars.items():
            name = key[len(prefix):]
            parts = _ENV_ALIASES.get(name) or tuple(p.lower() for p in name.split("__"))
            self._set(parts, self._parse_value(value))
        if env_vars:
            logger.info(f"Loaded {len(env_vars)} configuration values from environment variables")

    def _load_from_args(self, args: Dict[str, Any]) -> None:
        filtered = {k: v for k, v in args.items() if v is not None}
        if "seed_override" in filtered:
            self.config["seeds"] = [int(filtered["seed_override"])]
        if "out" in filtered:
            self.config["output_dir"] = filtered["out"]
        if "threads" in filtered:
            self.config["threads"] = filtered["threads"]
        if "log_level" in filtered:
            self._set(("logging", "level"), str(filtered["log_level"]).upper())
        if filtered:
            logger.info(f"Loaded {len(filtered)} configuration values from command-line arguments")

    def _set(self, parts: Any, value: Any) -> None:
        current = self.config
        for part in parts[:-1]:
            if not isinstance(current.get(part), dict):
                current[part] = {}
            current = current[part]
        current[parts[-1]] = value

    @staticmethod
    def _parse_value(value: str) -> Any:
        """
        Parse a string value into the appropriate type.

        JSON first (numbers, lists, null), then booleans, then the raw string.
        """
        try:
            return json.loads(value)
        except json.JSONDecodeError:
            pass
        if value.lower() in ("true", "yes", "on"):
            return True
        if value.lower() in ("false", "no", "off"):
            return False
        return value

    @classmethod
    def _deep_merge(cls, base: Dict[str, Any], overlay: Dict[str, Any]) -> None:
        for key, value in overlay.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                cls._deep_merge(base[key], value)
            else:
                base[key] = copy.deepcopy(value)

    def get_default_config(self) -> Dict[str, Any]:
        return self._read_file(self.defaults_path) or {}
