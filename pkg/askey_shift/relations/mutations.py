"""
Seeded-error audit of the catalog.

Each mutation perturbs one constant of one family descriptor (a scalar
formula, a shift component, an x-shift, a split factor). The audit runs the
mutated family through the suite and records whether some relation failed.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Optional

import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from askey_shift import __version__
from askey_shift.families import FamilyDescriptor, family_descriptor
from askey_shift.families.registry import CATALOG_DIR, CatalogError, load_catalog_file
from askey_shift.models import AuditReport, MutationOutcome, Verdict
from askey_shift.relations.suite import SuiteConfig, run_unit

log = structlog.get_logger(__name__)

BATTERY_FILE = CATALOG_DIR / "mutations.yaml"


class MutationError(ValueError):
    """Raised when a mutation does not fit the descriptor it targets."""


class Mutation(BaseModel):
    """One seeded error. ``field`` uses the catalog spelling (``f_tilde``, ``B1``, ``kappa``)."""

    model_config = ConfigDict(populate_by_name=True)

    family: str
    variant: Optional[str] = None
    field: str
    kind: Literal["times", "plus", "flip", "toggle", "swap", "set"]
    factor: Optional[str] = None
    term: Optional[str] = None
    index: Optional[int] = None
    partner_field: Optional[str] = Field(default=None, alias="with")
    value: Optional[str] = None

    def describe(self) -> str:
        target = f"{self.family}/{self.variant}" if self.variant else self.family
        detail = {
            "times": f"* ({self.factor})",
            "plus": f"+ ({self.term})",
            "flip": f"negate [{self.index}]",
            "toggle": "toggled",
            "swap": f"<-> {self.partner_field}",
            "set": f"= {self.value}",
        }[self.kind]
        return f"{target} {self.field} {detail}"


class MutationBattery(BaseModel):
    mutations: list[Mutation] = Field(default_factory=list)


@lru_cache(maxsize=None)
def load_battery(path: Path = BATTERY_FILE) -> tuple[Mutation, ...]:
    """
    Raises:
        CatalogError: If the battery file is missing or malformed
    """
    data = load_catalog_file(path)
    try:
        return tuple(MutationBattery.model_validate(data or {}).mutations)
    except ValidationError as e:
        raise CatalogError(path, str(e)) from e


def _require(mutation: Mutation, value: Any, what: str) -> Any:
    if value is None:
        raise MutationError(f"{mutation.describe()}: {what} is required")
    return value


def _mutate_field(mutation: Mutation, target: dict[str, Any]) -> None:
    name = mutation.field
    if mutation.kind != "toggle" and name not in target:
        raise MutationError(f"{mutation.describe()}: no field {name!r}")
    current = target.get(name)
    if mutation.kind == "times":
        target[name] = f"({current})*({_require(mutation, mutation.factor, 'factor')})"
    elif mutation.kind == "plus":
        target[name] = f"({current})+({_require(mutation, mutation.term, 'term')})"
    elif mutation.kind == "flip":
        index = _require(mutation, mutation.index, "index")
        if not isinstance(current, list) or not 0 <= index < len(current):
            raise MutationError(f"{mutation.describe()}: index out of range")
        current = list(current)
        current[index] = f"-({current[index]})"
        target[name] = current
    elif mutation.kind == "toggle":
        if name == "shift":
            target[name] = 1 - int(current or 0)
        elif name == "scale":
            target[name] = "q" if str(current) == "1" else "1"
        else:
            raise MutationError(f"{mutation.describe()}: only shift and scale toggle")
    elif mutation.kind == "swap":
        other = _require(mutation, mutation.partner_field, "with")
        if other not in target:
            raise MutationError(f"{mutation.describe()}: no field {other!r}")
        target[name], target[other] = target[other], current
    else:
        target[name] = _require(mutation, mutation.value, "value")


def apply_mutation(family: FamilyDescriptor, mutation: Mutation) -> FamilyDescriptor:
    """A copy of ``family`` with ``mutation`` applied.

    Raises:
        MutationError: If the target field or variant is missing or the
            mutated descriptor no longer validates
    """
    data = family.model_dump(by_alias=True, mode="json")
    target = data
    if mutation.variant is not None:
        matches = [v for v in data.get("variants", []) if str(v.get("label")) == str(mutation.variant)]
        if not matches:
            raise MutationError(f"{mutation.describe()}: no variant {mutation.variant!r}")
        target = matches[0]
    _mutate_field(mutation, target)
    try:
        return FamilyDescriptor.model_validate(data)
    except ValidationError as e:
        raise MutationError(f"{mutation.describe()}: {e}") from e


def audit_mutation(mutation: Mutation, cfg: SuiteConfig) -> MutationOutcome:
    mutated = apply_mutation(family_descriptor(mutation.family), mutation)
    log.debug("mutation_applied", mutation=mutation.describe())
    records = run_unit(mutated, mutation.variant, 0, cfg)
    failure = next((record for record in records if record.verdict is Verdict.FAIL), None)
    outcome = MutationOutcome(
        family=mutation.family,
        variant=mutation.variant,
        field=mutation.field,
        kind=mutation.kind,
        description=mutation.describe(),
        caught=failure is not None,
        relation=failure.relation if failure else None,
        reason=failure.reason if failure else None,
    )
    if not outcome.caught:
        log.warning("mutation_survived", mutation=outcome.description)
    return outcome


def audit_mutations(
    battery: Optional[list[Mutation] | tuple[Mutation, ...]] = None,
    n_max: int = 3,
    seed: int = 42,
) -> AuditReport:
    """Run every mutation of ``battery`` (the catalog battery by default).

    A variant mutation runs that variant's relations, a family mutation the
    classic ones, on one trial with degrees up to ``n_max``.
    """
    battery = load_battery() if battery is None else battery
    cfg = SuiteConfig(n_max=n_max, trials=1, seed=seed)
    outcomes = [audit_mutation(mutation, cfg) for mutation in battery]
    report = AuditReport(tool_version=__version__, n_max=n_max, seed=seed, outcomes=outcomes)
    log.info("mutation_audit_finished", total=report.total, caught=report.caught)
    return report
