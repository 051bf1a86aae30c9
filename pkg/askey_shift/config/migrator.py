"""
Configuration migrator for backwards compatibility.

Handles version migrations:
- v1 -> v2: flat keys nested into suite/filters/output/mutations sections,
  added operator_degree, variants, timings and output path
"""

from typing import Any

import structlog

from askey_shift.relations import is_known_relation

log = structlog.get_logger(__name__)

CURRENT_VERSION = 2

OUTPUT_FORMATS = ("json", "markdown")

_V1_SUITE_KEYS = ("n_max", "trials", "seed", "workers")
_V1_FILTER_KEYS = ("families", "relations")


def migrate_config(config: dict[str, Any]) -> dict[str, Any]:
    """
    Migrate config from any version to current.

    Args:
        config: Raw config dict (may be any version)

    Returns:
        Config dict at CURRENT_VERSION
    """
    version = config.get("version", 1)

    if not isinstance(version, int) or version >= CURRENT_VERSION:
        return config

    log.info("migrating_config", from_version=version, to_version=CURRENT_VERSION)

    if version == 1:
        config = _migrate_v1_to_v2(config)
        log.info("config_migrated", to_version=2)

    config["version"] = CURRENT_VERSION
    return config


def _migrate_v1_to_v2(config: dict[str, Any]) -> dict[str, Any]:
    """
    Migrate v1 config to v2 format.

    Changes:
    - n_max, trials, seed, workers -> suite.*
    - families, relations -> filters.*
    - format -> output.format
    - Added suite.operator_degree, filters.variants, output.timings,
      output.path and the mutations section
    """
    defaults = get_default_config()
    migrated: dict[str, Any] = {"version": 1}

    suite = dict(defaults["suite"])
    for key in _V1_SUITE_KEYS:
        if key in config:
            suite[key] = config[key]
    migrated["suite"] = suite

    filters = dict(defaults["filters"])
    for key in _V1_FILTER_KEYS:
        if key in config:
            filters[key] = list(config[key] or [])
    migrated["filters"] = filters

    output = dict(defaults["output"])
    if "format" in config:
        output["format"] = config["format"]
    migrated["output"] = output

    migrated["mutations"] = dict(defaults["mutations"])

    leftover = set(config) - set(_V1_SUITE_KEYS) - set(_V1_FILTER_KEYS) - {"format", "version"}
    if leftover:
        log.warning("dropped_unknown_config_keys", keys=sorted(leftover))
    return migrated


def _positive_int(errors: list[str], section: dict[str, Any], section_name: str, key: str) -> None:
    if key not in section:
        return
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        errors.append(f"Invalid {section_name}.{key}: {value!r} (must be an integer >= 1)")


def validate_config(config: dict[str, Any]) -> list[str]:
    """
    Validate config and return list of errors.

    Returns:
        List of error messages (empty if valid)
    """
    errors: list[str] = []

    version = config.get("version", 1)
    if not isinstance(version, int) or version > CURRENT_VERSION:
        errors.append(f"Config version {version} is newer than supported version {CURRENT_VERSION}")
        return errors

    for name in ("suite", "filters", "output", "mutations"):
        if name in config and not isinstance(config[name], dict):
            errors.append(f"Section {name} must be a mapping")
    if errors:
        return errors

    suite = config.get("suite", {})
    for key in ("n_max", "trials", "workers", "operator_degree"):
        _positive_int(errors, suite, "suite", key)
    seed = suite.get("seed", 42)
    if isinstance(seed, bool) or not isinstance(seed, int):
        errors.append(f"Invalid suite.seed: {seed!r} (must be an integer)")

    filters = config.get("filters", {})
    for key in ("families", "variants", "relations"):
        values = filters.get(key, [])
        if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
            errors.append(f"Invalid filters.{key}: must be a list of strings")
    relations = filters.get("relations", [])
    if isinstance(relations, list):
        for relation in relations:
            if isinstance(relation, str) and not is_known_relation(relation):
                errors.append(f"Unknown relation in filters.relations: {relation}")

    output = config.get("output", {})
    fmt = output.get("format", "json")
    if fmt not in OUTPUT_FORMATS:
        errors.append(f"Invalid output.format: {fmt!r} (must be one of {', '.join(OUTPUT_FORMATS)})")
    if not isinstance(output.get("timings", False), bool):
        errors.append("Invalid output.timings: must be true or false")

    _positive_int(errors, config.get("mutations", {}), "mutations", "n_max")

    return errors


def get_default_config() -> dict[str, Any]:
    """Return default config for new installations."""
    return {
        "version": CURRENT_VERSION,
        "suite": {
            "n_max": 8,
            "trials": 3,
            "seed": 42,
            "operator_degree": 12,
            "workers": 1,
        },
        "filters": {
            "families": [],
            "variants": [],
            "relations": [],
        },
        "output": {
            "format": "json",
            "path": None,
            "timings": False,
        },
        "mutations": {
            "n_max": 3,
        },
    }
