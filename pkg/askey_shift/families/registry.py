"""
Family registry backed by the YAML catalog.

The four framework files under ``catalog/`` are read once per process and
validated into FamilyDescriptor objects; lookups are by the short family id
(``qR``, ``AW``, ``bqJ``...).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from functools import lru_cache
from pathlib import Path
from typing import Any

import structlog
import yaml
from pydantic import ValidationError

from askey_shift.families.models import FamilyDescriptor, Framework
from askey_shift.models import CatalogEntry

log = structlog.get_logger(__name__)

CATALOG_DIR = Path(__file__).resolve().parent.parent / "catalog"
FRAMEWORK_FILES = ("oqm.yaml", "idqm.yaml", "rdqm.yaml", "rdqmj.yaml")


class UnknownFamilyError(LookupError):
    """Raised when a family id is not in the catalog."""

    def __init__(self, family: str):
        self.family = family
        super().__init__(f"unknown family {family!r}")


class CatalogError(Exception):
    """Raised when a catalog file is missing or malformed."""

    def __init__(self, path: Path | str, reason: str):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"{path}: {reason}")


def load_catalog_file(path: Path) -> Any:
    """Read one YAML file from the catalog directory.

    Raises:
        CatalogError: If the file cannot be read or parsed
    """
    try:
        with open(path, encoding="utf-8") as f:
            return yaml.safe_load(f)
    except OSError as e:
        raise CatalogError(path, f"cannot read: {e}") from e
    except yaml.YAMLError as e:
        raise CatalogError(path, f"invalid YAML: {e}") from e


def parse_families(path: Path) -> list[FamilyDescriptor]:
    data = load_catalog_file(path)
    if not isinstance(data, dict) or not isinstance(data.get("families"), list):
        raise CatalogError(path, "expected a top-level 'families' list")
    families = []
    for entry in data["families"]:
        try:
            families.append(FamilyDescriptor.model_validate(entry))
        except ValidationError as e:
            family_id = entry.get("id", "?") if isinstance(entry, dict) else "?"
            raise CatalogError(path, f"family {family_id}: {e}") from e
    return families


class FamilyRegistry:
    """Ordered, id-indexed collection of family descriptors."""

    def __init__(self, families: Iterable[FamilyDescriptor]):
        self._families: dict[str, FamilyDescriptor] = {}
        for family in families:
            if family.id in self._families:
                raise CatalogError("catalog", f"duplicate family id {family.id!r}")
            self._families[family.id] = family

    def __iter__(self) -> Iterator[FamilyDescriptor]:
        return iter(self._families.values())

    def __len__(self) -> int:
        return len(self._families)

    def __contains__(self, family_id: object) -> bool:
        return family_id in self._families

    def ids(self) -> list[str]:
        return list(self._families)

    def get(self, family_id: str) -> FamilyDescriptor:
        try:
            return self._families[family_id]
        except KeyError:
            raise UnknownFamilyError(family_id) from None

    def select(
        self,
        framework: Framework | None = None,
        has_new_factorization: bool | None = None,
    ) -> list[FamilyDescriptor]:
        return [
            family
            for family in self
            if (framework is None or family.framework is framework)
            and (has_new_factorization is None or family.has_new_factorization == has_new_factorization)
        ]


@lru_cache(maxsize=None)
def load_registry(catalog_dir: Path = CATALOG_DIR) -> FamilyRegistry:
    families: list[FamilyDescriptor] = []
    for name in FRAMEWORK_FILES:
        families.extend(parse_families(catalog_dir / name))
    registry = FamilyRegistry(families)
    log.debug("catalog_loaded", families=len(registry), path=str(catalog_dir))
    return registry


def family_descriptor(family_id: str) -> FamilyDescriptor:
    """Look up a family by id.

    Raises:
        UnknownFamilyError: If the id is not in the catalog
    """
    return load_registry().get(family_id)


def resolve_family(family: FamilyDescriptor | str) -> FamilyDescriptor:
    if isinstance(family, FamilyDescriptor):
        return family
    return family_descriptor(family)


def list_families(
    framework: Framework | str | None = None,
    has_new_factorization: bool | None = None,
) -> list[FamilyDescriptor]:
    """Catalog families in file order, optionally filtered."""
    if isinstance(framework, str):
        framework = Framework(framework)
    return load_registry().select(framework, has_new_factorization)


def catalog_entry(family: FamilyDescriptor) -> CatalogEntry:
    return CatalogEntry(
        id=family.id,
        name=family.name,
        framework=family.framework.value,
        coordinate=family.coordinate,
        coordinate_kind=family.coordinate_kind.value,
        parameters=family.parameter_names,
        finite=family.is_finite,
        has_new_factorization=family.has_new_factorization,
        variants=family.variant_labels,
        constraints=family.constraints,
        blacklist=family.blacklist,
    )


def catalog_document(
    framework: Framework | str | None = None,
    has_new_factorization: bool | None = None,
) -> list[CatalogEntry]:
    """Catalog listing in file order."""
    return [catalog_entry(family) for family in list_families(framework, has_new_factorization)]
