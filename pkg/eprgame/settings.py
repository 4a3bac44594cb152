import logging
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

import yaml

from .errors import InputError

logger = logging.getLogger(__name__)

TOLERANCE_KEYS = ("symmetry", "constraint", "factorization", "ne", "quantum")
SEARCH_KEYS = ("retries", "sampler_draws")


@dataclass(frozen=True)
class Settings:
    """Tolerance and bound defaults shared by the library and the CLI."""

    symmetry: float = 1e-12
    constraint: float = 1e-12
    factorization: float = 1e-9
    ne: float = 1e-9
    quantum: float = 1e-10
    retries: int = 16
    sampler_draws: int = 10000

    def as_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_SETTINGS = Settings()


def read_yaml_file(file_path: str) -> Any:
    logger.debug(f"Attempting to read YAML file: {file_path}")
    try:
        with open(file_path, "r", encoding="utf-8") as file:
            content = yaml.safe_load(file)
    except FileNotFoundError:
        raise InputError(f"File not found: {file_path}", field="config")
    except OSError as e:
        raise InputError(f"Cannot read {file_path}: {e.strerror}", field="config")
    except yaml.YAMLError as e:
        raise InputError(f"Error parsing YAML file {file_path}: {e}", field="config")
    logger.debug(f"Successfully loaded YAML from {file_path}")
    return content


def _section(
    content: Dict[str, Any], name: str, allowed: tuple, kind: type
) -> Dict[str, Any]:
    section = content.get(name) or {}
    if not isinstance(section, dict):
        raise InputError(
            f"expected a mapping, got {type(section).__name__}", field=name
        )
    values = {}
    for key, value in section.items():
        if key not in allowed:
            raise InputError(f"unknown key '{key}'", field=f"{name}.{key}")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InputError(f"expected a number, got {value!r}", field=f"{name}.{key}")
        if value < 0:
            raise InputError("must be non-negative", field=f"{name}.{key}")
        values[key] = kind(value)
    return values


def load_settings(file_path: Optional[str] = None) -> Settings:
    """
    Overlays the defaults with the `tolerances:` and `search:` mappings of
    a YAML settings file. Unknown keys are rejected.
    """
    if file_path is None:
        return DEFAULT_SETTINGS

    content = read_yaml_file(file_path)
    if content is None:
        logger.warning(f"Settings file {file_path} is empty, using defaults.")
        return DEFAULT_SETTINGS
    if not isinstance(content, dict):
        raise InputError(
            f"Expected a dictionary at root, but got {type(content).__name__}",
            field="config",
        )
    unknown = set(content) - {"tolerances", "search"}
    if unknown:
        raise InputError(
            f"unknown sections {sorted(unknown)}", field="config"
        )

    overrides = _section(content, "tolerances", TOLERANCE_KEYS, float)
    overrides.update(_section(content, "search", SEARCH_KEYS, int))
    settings = replace(DEFAULT_SETTINGS, **overrides)
    logger.info(f"Loaded settings from {file_path}: {settings.as_dict()}")
    return settings
