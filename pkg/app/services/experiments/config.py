"""
Experiment file loading and validation
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import ValidationError

from app.core.exceptions import ConfigError
from app.models.experiment import ExperimentConfig


def _location(loc) -> str:
    return ".".join(str(part) for part in loc)


def parse_config_text(raw: Union[str, bytes]) -> Dict[str, Any]:
    """Decode a UTF-8 JSON document; an empty document is an empty object"""
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ConfigError([("", f"configuration is not valid UTF-8: {e}")]) from e
    if not raw.strip():
        return {}
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ConfigError([("", f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})")]) from e
    if not isinstance(data, dict):
        raise ConfigError([("", "configuration must be a JSON object")])
    return data


def validate_config(
    raw: Union[str, bytes],
    overrides: Optional[Dict[str, Any]] = None,
    defaults: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Parse, apply defaults and validate an experiment configuration.

    Args:
        raw: JSON text of the configuration file
        overrides: top-level values replacing those of the file (CLI flags)
        defaults: top-level values used only where the file has none

    Raises:
        ConfigError: with one (dotted location, message) issue per violation
    """
    data = parse_config_text(raw)
    for key, value in (defaults or {}).items():
        data.setdefault(key, value)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key == "output_dir":
            data["output"] = {**data.get("output", {}), "dir": value}
        else:
            data[key] = value

    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError([(_location(err["loc"]), err["msg"]) for err in e.errors()]) from e


def load_config(
    path: Union[str, Path],
    overrides: Optional[Dict[str, Any]] = None,
    defaults: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise ConfigError([("", f"cannot read configuration file {path}: {e.strerror}")]) from e
    return validate_config(raw, overrides, defaults)


__all__ = ["parse_config_text", "validate_config", "load_config"]
