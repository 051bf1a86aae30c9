"""Configuration management for the askey-shift command line."""

from .loader import CliSettings, ConfigError, MutationSettings, OutputSettings, load_config
from .migrator import CURRENT_VERSION, get_default_config, migrate_config, validate_config

__all__ = [
    "CURRENT_VERSION",
    "CliSettings",
    "ConfigError",
    "MutationSettings",
    "OutputSettings",
    "get_default_config",
    "load_config",
    "migrate_config",
    "validate_config",
]
