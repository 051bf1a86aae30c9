"""
Suite runner: every selected relation over every selected family, variant
and trial.

Work is split into units, one per (family, variant-or-base, trial). Each unit
draws its own point from a seed derived from the base seed, so units are
independent and may run in worker processes; records are merged by their
sort key and come out identical for any worker count.
"""

from __future__ import annotations

import time
from collections import defaultdict
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import structlog
from pydantic import BaseModel, Field, field_validator

from askey_shift.families import (
    FamilyDescriptor,
    Framework,
    ParameterPoint,
    SamplingError,
    UnknownFamilyError,
    derive_seed,
    list_families,
    resolve_family,
    sample_parameters,
)
from askey_shift.models import RelationReport, RelationTally, SuiteSummary, Verdict
from askey_shift.operators import DEFAULT_OPERATOR_DEGREE
from askey_shift.relations.base import (
    CROSS_IDENTITY,
    EIGEN,
    ENERGY_IDENTITIES,
    FACTORIZATION_CLASSIC,
    FACTORIZATION_NEW,
    REMARK_EQUIVALENCES,
    REMARK_IDS,
    RODRIGUES,
    SHAPE_INVARIANCE,
    SHIFT_CLASSIC,
    SHIFT_NEW,
    SPLIT,
    STAR_INVARIANCE,
    NotApplicableError,
    is_known_relation,
    relation_selected,
    skipped_report,
)
from askey_shift.relations.classic import (
    check_eigen,
    check_energy_identities,
    check_factorization_classic,
    check_rodrigues,
    check_shape_invariance,
    check_shift_classic,
    degrees,
)
from askey_shift.relations.new import (
    check_cross_identity,
    check_factorization_new,
    check_shift_new,
    check_split,
    check_star_invariance,
)
from askey_shift.relations.remarks import check_remark_equivalences, remark_instances

log = structlog.get_logger(__name__)

BASE_VARIANT = "base"
CLASSIC_RELATIONS = (EIGEN, SHIFT_CLASSIC, FACTORIZATION_CLASSIC, SHAPE_INVARIANCE, ENERGY_IDENTITIES, RODRIGUES)
NEW_RELATIONS = (SPLIT, CROSS_IDENTITY, FACTORIZATION_NEW, SHIFT_NEW)


class SuiteConfigError(ValueError):
    """Raised when a suite configuration selects nothing or names unknown items."""


class SuiteConfig(BaseModel):
    """What to verify and how hard.

    Empty ``families``, ``variants`` or ``relations`` select everything.
    ``variants`` takes variant labels, plus ``base`` for the classic unit.
    """

    n_max: int = Field(default=8, ge=1)
    trials: int = Field(default=3, ge=1)
    seed: int = 42
    families: list[str] = Field(default_factory=list)
    variants: list[str] = Field(default_factory=list)
    relations: list[str] = Field(default_factory=list)
    operator_degree: int = Field(default=DEFAULT_OPERATOR_DEGREE, ge=1)
    workers: int = Field(default=1, ge=1)
    record_timings: bool = False

    @field_validator("relations")
    @classmethod
    def _known_relations(cls, value: list[str]) -> list[str]:
        unknown = [name for name in value if not is_known_relation(name)]
        if unknown:
            raise ValueError(f"unknown relations: {', '.join(unknown)}")
        return value


def applicable_relations(family: FamilyDescriptor | str) -> list[str]:
    """Relation ids that exist for ``family``; the rest are reported skipped."""
    family = resolve_family(family)
    relations = list(CLASSIC_RELATIONS)
    if family.has_new_factorization:
        if family.framework is not Framework.OQM:
            relations.extend([SPLIT, CROSS_IDENTITY])
        relations.extend([FACTORIZATION_NEW, SHIFT_NEW, REMARK_EQUIVALENCES])
    if family.framework is Framework.IDQM:
        relations.append(STAR_INVARIANCE)
    return relations


def selected_families(cfg: SuiteConfig) -> list[FamilyDescriptor]:
    """
    Raises:
        SuiteConfigError: On an unknown family id or an empty selection
    """
    if cfg.families:
        try:
            families = [resolve_family(family_id) for family_id in cfg.families]
        except UnknownFamilyError as e:
            raise SuiteConfigError(str(e)) from e
    else:
        families = list_families()
    if not families:
        raise SuiteConfigError("no families selected")
    return families


def unit_variants(family: FamilyDescriptor, cfg: SuiteConfig) -> list[Optional[str]]:
    """The classic unit (None) and every variant the filter keeps."""
    units: list[Optional[str]] = []
    if not cfg.variants or BASE_VARIANT in cfg.variants:
        units.append(None)
    units.extend(label for label in family.variant_labels if not cfg.variants or label in cfg.variants)
    return units


class _UnitRunner:
    """Runs the checks of one unit and collects their records."""

    def __init__(self, family: FamilyDescriptor, variant: Optional[str], trial: int, cfg: SuiteConfig):
        self.family = family
        self.variant = variant
        self.trial = trial
        self.cfg = cfg
        self.records: list[RelationReport] = []
        self.seed = derive_seed(cfg.seed, family.id, variant, trial)

    def selected(self, relation: str) -> bool:
        return relation_selected(relation, self.cfg.relations)

    def skip(self, relation: str, reason: str, *, variant: Optional[str] = None, n: Optional[int] = None) -> None:
        if self.selected(relation):
            self.records.append(
                skipped_report(
                    relation,
                    self.family.id,
                    reason,
                    variant=variant if variant is not None else self.variant,
                    n=n,
                    trial=self.trial,
                    seed=self.seed,
                )
            )

    def run(self, relation: str, check: Callable[[], RelationReport], **where) -> None:
        if not self.selected(relation):
            return
        try:
            self.records.append(check())
        except NotApplicableError as e:
            self.skip(relation, e.reason, **where)

    def skip_all(self, relations: Iterable[str], reason: str) -> None:
        for relation in relations:
            self.skip(relation, reason)

    def base(self, point: ParameterPoint) -> None:
        family, cfg, trial = self.family, self.cfg, self.trial
        for n in degrees(family, point, cfg.n_max):
            self.run(EIGEN, lambda n=n: check_eigen(family, n, point, trial=trial), n=n)
            self.run(SHIFT_CLASSIC, lambda n=n: check_shift_classic(family, n, point, trial=trial), n=n)
            self.run(RODRIGUES, lambda n=n: check_rodrigues(family, n, point, trial=trial), n=n)
            if family.framework is Framework.IDQM:
                self.run(
                    STAR_INVARIANCE,
                    lambda n=n: check_star_invariance(family, None, n, point, degree=cfg.operator_degree, trial=trial),
                    n=n,
                )
        self.run(
            FACTORIZATION_CLASSIC,
            lambda: check_factorization_classic(family, point, degree=cfg.operator_degree, trial=trial),
        )
        self.run(
            SHAPE_INVARIANCE,
            lambda: check_shape_invariance(family, point, degree=cfg.operator_degree, trial=trial),
        )
        self.run(ENERGY_IDENTITIES, lambda: check_energy_identities(family, None, point, cfg.n_max, trial=trial))
        if not family.has_new_factorization:
            self.skip_all(NEW_RELATIONS + REMARK_IDS, "no new factorization")
        if family.framework is not Framework.IDQM:
            self.skip(STAR_INVARIANCE, "the *-operation belongs to idQM")

    def new(self, point: ParameterPoint) -> None:
        family, variant, cfg, trial = self.family, self.variant, self.cfg, self.trial
        degree = cfg.operator_degree
        self.run(ENERGY_IDENTITIES, lambda: check_energy_identities(family, variant, point, cfg.n_max, trial=trial))
        self.run(SPLIT, lambda: check_split(family, variant, point, trial=trial))
        self.run(CROSS_IDENTITY, lambda: check_cross_identity(family, variant, point, trial=trial))
        self.run(
            FACTORIZATION_NEW,
            lambda: check_factorization_new(family, variant, point, degree=degree, trial=trial),
        )
        ns = degrees(family, point, cfg.n_max)
        for n in ns:
            self.run(SHIFT_NEW, lambda n=n: check_shift_new(family, variant, n, point, trial=trial), n=n)
            if family.framework is Framework.IDQM:
                self.run(
                    STAR_INVARIANCE,
                    lambda n=n: check_star_invariance(family, variant, n, point, degree=degree, trial=trial),
                    n=n,
                )
        for instance in remark_instances(family):
            if instance.variant != variant:
                continue
            where = {"variant": instance.record_variant}
            if instance.kind == "xshift":
                for n in ns:
                    self.run(
                        instance.relation,
                        lambda n=n, i=instance: check_remark_equivalences(i, point, n, degree=degree, trial=trial, family=family),
                        n=n,
                        **where,
                    )
            else:
                self.run(
                    instance.relation,
                    lambda i=instance: check_remark_equivalences(i, point, cfg.n_max, degree=degree, trial=trial, family=family),
                    **where,
                )

    def execute(self) -> list[RelationReport]:
        try:
            point = sample_parameters(self.family, self.seed, self.cfg.n_max, self.variant)
        except SamplingError as e:
            log.warning("sampling_failed", family=self.family.id, variant=self.variant, trial=self.trial, reason=str(e))
            relations = CLASSIC_RELATIONS if self.variant is None else (ENERGY_IDENTITIES,) + NEW_RELATIONS
            self.skip_all(relations, f"sampling failed: {e}")
            return self.records
        if self.variant is None:
            self.base(point)
        else:
            self.new(point)
        return self.records


def run_unit(
    family: FamilyDescriptor | str,
    variant: Optional[str],
    trial: int,
    cfg: SuiteConfig,
) -> list[RelationReport]:
    """Records of one (family, variant, trial) unit; ``variant=None`` runs the classic relations."""
    return _UnitRunner(resolve_family(family), variant, trial, cfg).execute()


def _run_unit_args(args: tuple[str, Optional[str], int, SuiteConfig]) -> list[RelationReport]:
    return run_unit(*args)


def run_suite(cfg: SuiteConfig) -> list[RelationReport]:
    """Run every selected unit and return the records in sort-key order.

    Raises:
        SuiteConfigError: If the filters select no unit
        DegreeBoundError: If ``operator_degree`` is below an operator's bound
    """
    families = selected_families(cfg)
    units = [
        (family.id, variant, trial, cfg)
        for family in families
        for variant in unit_variants(family, cfg)
        for trial in range(cfg.trials)
    ]
    if not units:
        raise SuiteConfigError("filters select no family/variant combination")

    started = time.perf_counter()
    log.info("suite_started", families=len(families), units=len(units), workers=cfg.workers, seed=cfg.seed)
    records: list[RelationReport] = []
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for unit_records in pool.map(_run_unit_args, units):
                records.extend(unit_records)
    else:
        for unit in units:
            records.extend(_run_unit_args(unit))

    if not records:
        raise SuiteConfigError("filters select no relation")
    records.sort(key=RelationReport.sort_key)
    if not cfg.record_timings:
        records = [record.model_copy(update={"micros": None}) for record in records]
    summary = summarize(records)
    log.info(
        "suite_finished",
        total=summary.total,
        failed=summary.failed,
        skipped=summary.skipped,
        seconds=round(time.perf_counter() - started, 3),
    )
    return records


def summarize(records: Iterable[RelationReport]) -> SuiteSummary:
    tallies: dict[str, RelationTally] = defaultdict(lambda: RelationTally(relation=""))
    counts = {Verdict.PASS: 0, Verdict.FAIL: 0, Verdict.SKIPPED: 0}
    for record in records:
        tally = tallies[record.relation]
        tally.relation = record.relation
        counts[record.verdict] += 1
        if record.verdict is Verdict.PASS:
            tally.passed += 1
        elif record.verdict is Verdict.FAIL:
            tally.failed += 1
        else:
            tally.skipped += 1
    return SuiteSummary(
        total=sum(counts.values()),
        passed=counts[Verdict.PASS],
        failed=counts[Verdict.FAIL],
        skipped=counts[Verdict.SKIPPED],
        relations=[tallies[name] for name in sorted(tallies)],
    )
