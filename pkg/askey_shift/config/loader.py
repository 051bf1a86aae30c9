"""
Settings for the command line: config file, then environment, then defaults.

CLI flags are applied on top by the caller.
"""

from __future__ import annotations

import copy
import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal, Optional

import structlog
import yaml
from pydantic import BaseModel, Field, ValidationError

from askey_shift.config.migrator import get_default_config, migrate_config, validate_config
from askey_shift.relations import SuiteConfig

log = structlog.get_logger(__name__)

ENV_CONFIG = "ASKEY_SHIFT_CONFIG"
ENV_SEED = "ASKEY_SHIFT_SEED"
ENV_WORKERS = "ASKEY_SHIFT_WORKERS"


class ConfigError(Exception):
    """Raised for an unreadable, invalid or unsupported configuration."""

    def __init__(self, source: str, errors: list[str]):
        self.source = source
        self.errors = errors
        super().__init__(f"{source}: " + "; ".join(errors))


class OutputSettings(BaseModel):
    format: Literal["json", "markdown"] = "json"
    path: Optional[str] = None
    timings: bool = False


class MutationSettings(BaseModel):
    n_max: int = Field(default=3, ge=1)


class CliSettings(BaseModel):
    """Resolved settings before CLI flags."""

    suite: SuiteConfig = Field(default_factory=SuiteConfig)
    output: OutputSettings = Field(default_factory=OutputSettings)
    mutations: MutationSettings = Field(default_factory=MutationSettings)
    source: Optional[str] = None


def read_config_file(path: Path) -> dict[str, Any]:
    """
    Raises:
        ConfigError: If the file cannot be read or is not a YAML mapping
    """
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(str(path), [f"cannot read: {e}"]) from e
    except yaml.YAMLError as e:
        raise ConfigError(str(path), [f"invalid YAML: {e}"]) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(str(path), ["top level must be a mapping"])
    return data


def settings_from_config(config: dict[str, Any], source: str = "defaults") -> CliSettings:
    """Build settings from a validated v2 config dict."""
    suite = config.get("suite", {})
    filters = config.get("filters", {})
    output = config.get("output", {})
    try:
        return CliSettings(
            suite=SuiteConfig(
                n_max=suite.get("n_max", 8),
                trials=suite.get("trials", 3),
                seed=suite.get("seed", 42),
                operator_degree=suite.get("operator_degree", 12),
                workers=suite.get("workers", 1),
                families=filters.get("families", []),
                variants=filters.get("variants", []),
                relations=filters.get("relations", []),
                record_timings=output.get("timings", False),
            ),
            output=OutputSettings(**output),
            mutations=MutationSettings(**config.get("mutations", {})),
            source=source,
        )
    except ValidationError as e:
        raise ConfigError(source, [str(e)]) from e


def _env_int(environ: Mapping[str, str], name: str, minimum: int | None = None) -> int | None:
    raw = environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(name, [f"expected an integer, got {raw!r}"]) from None
    if minimum is not None and value < minimum:
        raise ConfigError(name, [f"must be >= {minimum}, got {value}"])
    return value


def apply_environment(settings: CliSettings, environ: Mapping[str, str]) -> CliSettings:
    updates: dict[str, int] = {}
    seed = _env_int(environ, ENV_SEED)
    if seed is not None:
        updates["seed"] = seed
    workers = _env_int(environ, ENV_WORKERS, minimum=1)
    if workers is not None:
        updates["workers"] = workers
    if not updates:
        return settings
    log.debug("environment_overrides", **updates)
    return settings.model_copy(update={"suite": settings.suite.model_copy(update=updates)})


def load_config(
    path: str | Path | None = None,
    environ: Mapping[str, str] = os.environ,
) -> CliSettings:
    """Read, migrate and validate the config file, then apply environment overrides.

    Args:
        path: Config file; falls back to ASKEY_SHIFT_CONFIG, then to defaults
        environ: Environment to read overrides from

    Raises:
        ConfigError: If the file is unreadable or invalid, or an override is malformed
    """
    path = path or environ.get(ENV_CONFIG) or None
    if path is None:
        config = get_default_config()
        source = "defaults"
    else:
        source = str(path)
        config = migrate_config(copy.deepcopy(read_config_file(Path(path))))
        errors = validate_config(config)
        if errors:
            raise ConfigError(source, errors)
        log.debug("config_loaded", path=source)
    return apply_environment(settings_from_config(config, source), environ)
