"""Tests for result models."""

import pytest
from pydantic import ValidationError

from askey_shift.models import (
    AuditReport,
    MutationOutcome,
    RelationReport,
    SuiteSummary,
    Verdict,
    Witness,
)


def _outcome(caught: bool) -> MutationOutcome:
    return MutationOutcome(
        family="qR",
        variant="a",
        field="delta_bar",
        kind="flip",
        description="qR/a delta_bar negate [0]",
        caught=caught,
        relation="shift_new" if caught else None,
    )


class TestRelationReport:
    """Tests for RelationReport model."""

    def test_minimal_report(self):
        """Test defaults of a bare verdict."""
        report = RelationReport(relation="eigen", family="L", verdict="pass")
        assert report.verdict is Verdict.PASS
        assert report.checks == 0
        assert report.witness is None

    def test_unknown_verdict_rejected(self):
        with pytest.raises(ValidationError):
            RelationReport(relation="eigen", family="L", verdict="maybe")

    def test_sort_key_orders_family_first(self):
        """Test that records sort by family, variant, relation, n, trial."""
        records = [
            RelationReport(relation="shift_new", family="qR", variant="b", n=1, verdict="pass"),
            RelationReport(relation="eigen", family="L", n=2, verdict="pass"),
            RelationReport(relation="eigen", family="L", n=0, verdict="pass"),
            RelationReport(relation="factorization_classic", family="L", verdict="pass"),
            RelationReport(relation="shift_new", family="qR", variant="a", n=1, trial=1, verdict="pass"),
        ]
        ordered = sorted(records, key=RelationReport.sort_key)
        assert [(r.family, r.variant, r.relation, r.n) for r in ordered] == [
            ("L", None, "eigen", 0),
            ("L", None, "eigen", 2),
            ("L", None, "factorization_classic", None),
            ("qR", "a", "shift_new", 1),
            ("qR", "b", "shift_new", 1),
        ]

    def test_witness_round_trip_through_json(self):
        witness = Witness(
            kind="function",
            label="F P_1 vs f P_0",
            point={"s": "1/2+0*i"},
            lhs={"tag": "t", "num": [[0, "1+0*i"]], "den": [[0, "1+0*i"]]},
            rhs="0+0*i",
            difference=[[0, "1+0*i"]],
        )
        report = RelationReport(relation="shift_classic", family="qR", n=1, verdict="fail", witness=witness)
        restored = RelationReport.model_validate_json(report.model_dump_json())
        assert restored.witness == witness

    def test_witness_kind_is_closed(self):
        with pytest.raises(ValidationError):
            Witness(kind="guess", label="x", point={})


class TestSummaries:
    """Tests for computed summary fields."""

    def test_suite_summary_ok(self):
        assert SuiteSummary(total=3, passed=2, failed=0, skipped=1).ok
        assert not SuiteSummary(total=3, passed=2, failed=1, skipped=0).ok

    def test_ok_is_serialized(self):
        assert SuiteSummary(total=0, passed=0, failed=0, skipped=0).model_dump()["ok"] is True

    def test_audit_counts(self):
        """Test total, caught and all_caught of an audit."""
        report = AuditReport(tool_version="1.0.0", n_max=3, seed=42, outcomes=[_outcome(True), _outcome(False)])
        assert report.total == 2
        assert report.caught == 1
        assert not report.all_caught
        dumped = report.model_dump(mode="json")
        assert dumped["schema_version"] == "1"
        assert dumped["all_caught"] is False

    def test_empty_audit_catches_everything(self):
        assert AuditReport(tool_version="1.0.0", n_max=3, seed=42, outcomes=[]).all_caught
