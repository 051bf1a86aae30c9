"""
Shared machinery of the relation checkers.

Every checker opens a Verification, compares exact values through it and
returns its report:
- ``functions`` compares two RationalFunctions by cross-multiplication
- ``scalars`` compares two Gaussian rationals
- ``operators`` compares two ShiftOperators on test monomials
- ``guard`` turns an evaluation error into a fail verdict and a
  ParameterError (shifted point inadmissible, n above N) into a skip

The first failing comparison becomes the report's witness; later
comparisons in the same Verification are not evaluated.
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from typing import Optional

import structlog

from askey_shift.algebra import (
    AlgebraError,
    GaussianRational,
    RationalFunction,
    SerializationError,
    difference_numerator,
    format_scalar,
    parse_scalar,
)
from askey_shift.expressions import ExpressionError
from askey_shift.families import FamilyDescriptor, ParameterError, ParameterPoint
from askey_shift.models import RelationReport, Verdict, Witness
from askey_shift.operators import (
    DEFAULT_OPERATOR_DEGREE,
    DegreeBoundError,
    OperatorError,
    ShiftOperator,
    first_disagreement,
)

log = structlog.get_logger(__name__)

EIGEN = "eigen"
SHIFT_CLASSIC = "shift_classic"
FACTORIZATION_CLASSIC = "factorization_classic"
SHAPE_INVARIANCE = "shape_invariance"
ENERGY_IDENTITIES = "energy_identities"
RODRIGUES = "rodrigues"
SPLIT = "split"
CROSS_IDENTITY = "cross_identity"
FACTORIZATION_NEW = "factorization_new"
SHIFT_NEW = "shift_new"
REMARK_EQUIVALENCES = "remark_equivalences"
STAR_INVARIANCE = "star_invariance"

RELATION_IDS = (
    EIGEN,
    SHIFT_CLASSIC,
    FACTORIZATION_CLASSIC,
    SHAPE_INVARIANCE,
    ENERGY_IDENTITIES,
    RODRIGUES,
    SPLIT,
    CROSS_IDENTITY,
    FACTORIZATION_NEW,
    SHIFT_NEW,
    REMARK_EQUIVALENCES,
    STAR_INVARIANCE,
)

REMARK_KINDS = ("flip", "xshift", "aw_qr", "commutation", "commutation_products", "commutation_cross")
REMARK_IDS = tuple(f"{REMARK_EQUIVALENCES}.{kind}" for kind in REMARK_KINDS)

# Ids that appear on records: the remark class only ever reports under a sub-id.
RECORD_IDS = tuple(rid for rid in RELATION_IDS if rid != REMARK_EQUIVALENCES) + REMARK_IDS


def remark_id(kind: str) -> str:
    return f"{REMARK_EQUIVALENCES}.{kind}"


def is_known_relation(name: str) -> bool:
    return name in RELATION_IDS or name in REMARK_IDS


def relation_selected(relation: str, filters: Iterable[str]) -> bool:
    """Whether ``relation`` is picked by ``filters``.

    A filter selects a record id exactly, or every sub-id below a base id.
    An empty filter list selects everything.
    """
    filters = list(filters)
    if not filters:
        return True
    return any(relation == f or relation.startswith(f + ".") for f in filters)


class NotApplicableError(Exception):
    """Raised when a relation does not exist for a family or variant."""

    def __init__(self, relation: str, family: str, reason: str):
        self.relation = relation
        self.family = family
        self.reason = reason
        super().__init__(f"{relation} on {family}: {reason}")


def skipped_report(
    relation: str,
    family: str,
    reason: str,
    *,
    variant: str | None = None,
    n: int | None = None,
    trial: int = 0,
    seed: int | None = None,
) -> RelationReport:
    return RelationReport(
        relation=relation,
        family=family,
        variant=variant,
        n=n,
        trial=trial,
        seed=seed,
        verdict=Verdict.SKIPPED,
        reason=reason,
    )


class Verification:
    """Collects the comparisons of one relation instance.

    Args:
        relation: Record id
        family: Family the instance belongs to
        point: Parameter point lambda of the instance
        variant: Variant label for the new relations
        n: Degree for per-n relations
        trial: Trial index within the suite
        degree: Degree bound K for operator comparisons
    """

    def __init__(
        self,
        relation: str,
        family: FamilyDescriptor,
        point: ParameterPoint,
        *,
        variant: str | None = None,
        n: int | None = None,
        trial: int = 0,
        degree: int = DEFAULT_OPERATOR_DEGREE,
    ):
        self.relation = relation
        self.family = family
        self.point = point
        self.variant = variant
        self.n = n
        self.trial = trial
        self.degree = degree
        self.checks = 0
        self.verdict = Verdict.PASS
        self.reason: Optional[str] = None
        self.witness: Optional[Witness] = None
        self._started = time.perf_counter_ns()

    @property
    def settled(self) -> bool:
        return self.verdict is not Verdict.PASS

    def _point_json(self) -> dict:
        return self.point.to_json()

    def _fail(self, reason: str, witness: Witness) -> None:
        self.verdict = Verdict.FAIL
        self.reason = reason
        self.witness = witness

    def skip(self, reason: str) -> None:
        if not self.settled:
            self.verdict = Verdict.SKIPPED
            self.reason = reason

    # -- comparisons --------------------------------------------------------

    def functions(self, label: str, lhs: RationalFunction, rhs: RationalFunction) -> bool:
        if self.settled:
            return False
        self.checks += 1
        difference = difference_numerator(lhs, rhs)
        if difference.is_zero:
            return True
        self._fail(
            f"{label}: sides differ",
            Witness(
                kind="function",
                label=label,
                point=self._point_json(),
                lhs=lhs.to_json(),
                rhs=rhs.to_json(),
                difference=difference.to_json(),
            ),
        )
        return False

    def scalars(self, label: str, lhs: GaussianRational, rhs: GaussianRational) -> bool:
        if self.settled:
            return False
        self.checks += 1
        if not (lhs - rhs):
            return True
        self._fail(
            f"{label}: {format_scalar(lhs)} != {format_scalar(rhs)}",
            Witness(
                kind="scalar",
                label=label,
                point=self._point_json(),
                lhs=format_scalar(lhs),
                rhs=format_scalar(rhs),
                difference=[[0, format_scalar(lhs - rhs)]],
            ),
        )
        return False

    def operators(self, label: str, lhs: ShiftOperator, rhs: ShiftOperator) -> bool:
        if self.settled:
            return False
        self.checks += 1
        mismatch = first_disagreement(lhs, rhs, self.degree)
        if mismatch is None:
            return True
        self._fail(
            f"{label}: operators differ on v^{mismatch.exponent}",
            Witness(
                kind="operator",
                label=label,
                point=self._point_json(),
                exponent=mismatch.exponent,
                lhs=mismatch.lhs.to_json(),
                rhs=mismatch.rhs.to_json(),
                difference=mismatch.difference.to_json(),
            ),
        )
        return False

    @contextmanager
    def guard(self, label: str) -> Iterator[None]:
        """Run one block of evaluations, recording errors as verdicts.

        Raises:
            DegreeBoundError: Propagated, the degree bound is a configuration error
        """
        try:
            yield
        except DegreeBoundError:
            raise
        except ParameterError as e:
            self.skip(str(e))
        except (AlgebraError, ExpressionError, OperatorError, ZeroDivisionError) as e:
            if not self.settled:
                self._fail(
                    f"{label}: {type(e).__name__}: {e}",
                    Witness(kind="error", label=label, point=self._point_json(), message=str(e)),
                )

    # -- result -------------------------------------------------------------

    def report(self) -> RelationReport:
        micros = (time.perf_counter_ns() - self._started) // 1000
        report = RelationReport(
            relation=self.relation,
            family=self.family.id,
            variant=self.variant,
            n=self.n,
            trial=self.trial,
            seed=self.point.seed,
            verdict=self.verdict,
            checks=self.checks,
            reason=self.reason,
            witness=self.witness,
            micros=micros,
        )
        if self.verdict is Verdict.FAIL:
            log.info(
                "relation_failed",
                relation=self.relation,
                family=self.family.id,
                variant=self.variant,
                n=self.n,
                reason=self.reason,
            )
        else:
            log.debug(
                "relation_checked",
                relation=self.relation,
                family=self.family.id,
                variant=self.variant,
                n=self.n,
                verdict=self.verdict.value,
            )
        return report


def replay_witness(witness: Witness) -> bool:
    """Re-parse a witness and confirm its two sides really differ.

    Error witnesses carry no values and never replay.

    Raises:
        SerializationError: If the stored sides are malformed
    """
    if witness.kind == "error":
        return False
    if witness.kind == "scalar":
        return bool(parse_scalar(witness.lhs) - parse_scalar(witness.rhs))
    if not isinstance(witness.lhs, dict) or not isinstance(witness.rhs, dict):
        raise SerializationError(witness.lhs, "function witness sides must be mappings")
    lhs = RationalFunction.from_json(witness.lhs)
    rhs = RationalFunction.from_json(witness.rhs)
    return not difference_numerator(lhs, rhs).is_zero
