"""
Pydantic models for verification results.

These models are what the suite hands to reporting and the CLI:
- RelationReport: one verdict for one (relation, family, variant, n, trial)
- Witness: the exact disagreement behind a fail verdict
- ReportDocument / SuiteSummary: the serialized outcome of a suite run
- CatalogEntry: one family as listed by ``askey-shift list``
- MutationOutcome / AuditReport: results of the seeded-error audit
- ExplainTrace: step-by-step expansion of one new shift relation
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, computed_field

REPORT_SCHEMA_VERSION = "1"
AUDIT_SCHEMA_VERSION = "1"
TOOL_NAME = "askey-shift"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class Witness(BaseModel):
    """Exact evidence for a failed identity.

    ``lhs``/``rhs`` hold canonical serializations (a function as
    ``{"tag", "num", "den"}``, a scalar as text) and ``difference`` the
    numerator of ``lhs - rhs`` as ``[exponent, coefficient]`` pairs.
    """

    kind: Literal["function", "operator", "scalar", "error"]
    label: str
    point: dict[str, Any]
    exponent: Optional[int] = None  # operator checks: k of the failing monomial v^k
    lhs: Optional[Any] = None
    rhs: Optional[Any] = None
    difference: Optional[list[list[Any]]] = None
    message: Optional[str] = None


class RelationReport(BaseModel):
    """Verdict for one relation instance."""

    relation: str
    family: str
    variant: Optional[str] = None
    n: Optional[int] = None
    trial: int = 0
    seed: Optional[int] = None
    verdict: Verdict
    checks: int = 0  # sub-identities compared
    reason: Optional[str] = None
    witness: Optional[Witness] = None
    micros: Optional[int] = None

    def sort_key(self) -> tuple[str, str, str, int, int]:
        return (
            self.family,
            self.variant or "",
            self.relation,
            self.n if self.n is not None else -1,
            self.trial,
        )


class RelationTally(BaseModel):
    relation: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0


class SuiteSummary(BaseModel):
    """Verdict counts for a suite run."""

    total: int
    passed: int
    failed: int
    skipped: int
    relations: list[RelationTally] = Field(default_factory=list)

    @computed_field
    @property
    def ok(self) -> bool:
        return self.failed == 0


class ReportDocument(BaseModel):
    """Serialized outcome of ``run_suite``."""

    schema_version: str = REPORT_SCHEMA_VERSION
    tool: str = TOOL_NAME
    tool_version: str
    config: dict[str, Any]
    summary: SuiteSummary
    records: list[RelationReport]


class CatalogEntry(BaseModel):
    """One family as shown by the catalog listing."""

    id: str
    name: str
    framework: str
    coordinate: str
    coordinate_kind: str
    parameters: list[str]
    finite: bool
    has_new_factorization: bool
    variants: list[str] = Field(default_factory=list)
    constraints: list[str] = Field(default_factory=list)
    blacklist: list[str] = Field(default_factory=list)


class MutationOutcome(BaseModel):
    """Whether the suite caught one seeded catalog error."""

    family: str
    variant: Optional[str] = None
    field: str
    kind: str
    description: str
    caught: bool
    relation: Optional[str] = None  # first relation that failed
    reason: Optional[str] = None


class AuditReport(BaseModel):
    schema_version: str = AUDIT_SCHEMA_VERSION
    tool: str = TOOL_NAME
    tool_version: str
    n_max: int
    seed: int
    outcomes: list[MutationOutcome]

    @computed_field
    @property
    def total(self) -> int:
        return len(self.outcomes)

    @computed_field
    @property
    def caught(self) -> int:
        return sum(1 for outcome in self.outcomes if outcome.caught)

    @computed_field
    @property
    def all_caught(self) -> bool:
        return self.caught == self.total


class TraceTerm(BaseModel):
    """One ``coefficient * f(substitution)`` term of an operator application."""

    coefficient: str
    substitution: str
    order: int = 0
    contribution: str


class TraceSection(BaseModel):
    name: str
    operator: str
    input: str
    terms: list[TraceTerm]
    result: str
    result_json: dict[str, Any]
    scalar: str
    target: str
    target_json: dict[str, Any]
    holds: bool


class ExplainTrace(BaseModel):
    """Expansion of the new forward and backward relations at one n."""

    family: str
    variant: str
    n: int
    point: dict[str, Any]
    shifted_point: dict[str, Any]
    sigma: str
    sections: list[TraceSection]

    @computed_field
    @property
    def holds(self) -> bool:
        return all(section.holds for section in self.sections)
