"""Tests for report assembly, rendering, schema checks and file output."""

import json
import os
from pathlib import Path

import pytest

from askey_shift.models import AuditReport, RelationReport, Witness
from askey_shift.relations import SuiteConfig
from askey_shift.reporting import (
    AUDIT_SCHEMA,
    REPORT_SCHEMA,
    ReportWriteError,
    SchemaValidationError,
    build_report,
    load_schema,
    render_audit_markdown,
    render_json,
    render_markdown,
    validate_document,
    write_text_atomic,
)


@pytest.fixture
def records() -> list[RelationReport]:
    """One record per verdict."""
    return [
        RelationReport(relation="eigen", family="L", n=1, seed=3, verdict="pass", checks=1),
        RelationReport(
            relation="shift_new",
            family="qR",
            variant="a",
            n=2,
            seed=4,
            verdict="fail",
            checks=2,
            reason="forward relation differs",
            witness=Witness(kind="operator", label="F~ vs f~ P", point={"s": "1/2+0*i"}, exponent=-1),
        ),
        RelationReport(
            relation="shift_new", family="He", seed=5, verdict="skipped", reason="family has no new factorization"
        ),
    ]


class TestBuildReport:
    """Tests for build_report and JSON output."""

    def test_summary_counts(self, records: list[RelationReport]):
        document = build_report(records, SuiteConfig(n_max=2, trials=1))
        assert (document.summary.total, document.summary.passed, document.summary.failed) == (3, 1, 1)
        assert not document.summary.ok
        assert [t.relation for t in document.summary.relations] == ["eigen", "shift_new"]

    def test_config_is_recorded(self, records: list[RelationReport]):
        document = build_report(records, SuiteConfig(n_max=2, trials=1, seed=7))
        assert document.config["seed"] == 7
        assert document.config["n_max"] == 2

    def test_json_is_pretty_with_trailing_newline(self, records: list[RelationReport]):
        text = render_json(build_report(records, SuiteConfig()))
        assert text.endswith("}\n")
        data = json.loads(text)
        assert list(data) == ["schema_version", "tool", "tool_version", "config", "summary", "records"]
        assert data["records"][1]["witness"]["exponent"] == -1

    def test_json_of_a_list(self):
        assert json.loads(render_json([RelationReport(relation="eigen", family="L", verdict="pass")]))[0]["family"] == "L"

    def test_json_keeps_unicode(self):
        assert "λ" in render_json({"label": "λ"})


class TestValidation:
    """Tests for schema validation."""

    def test_report_matches_schema(self, records: list[RelationReport]):
        validate_document(build_report(records, SuiteConfig()), REPORT_SCHEMA)

    def test_tampered_report_is_rejected(self, records: list[RelationReport]):
        data = json.loads(render_json(build_report(records, SuiteConfig())))
        data["records"][0]["verdict"] = "maybe"
        with pytest.raises(SchemaValidationError) as info:
            validate_document(data, REPORT_SCHEMA)
        assert info.value.location == "records/0/verdict"

    def test_audit_matches_schema(self):
        validate_document(AuditReport(tool_version="1.0.0", n_max=3, seed=42, outcomes=[]), AUDIT_SCHEMA)

    def test_unknown_schema(self):
        with pytest.raises(SchemaValidationError, match="schema not available"):
            load_schema("report-v9")


class TestMarkdown:
    """Tests for Markdown rendering."""

    def test_report_sections(self, records: list[RelationReport]):
        text = render_markdown(build_report(records, SuiteConfig()))
        assert "# askey-shift verification report" in text
        assert "| 3 | 1 | 1 | 1 | ❌ |" in text
        assert "## Failures" in text
        assert "### qR (a) · `shift_new` · n = 2 · trial 0" in text
        assert "- exponent: v^-1" in text
        assert "| He | – | `shift_new` | – | family has no new factorization |" in text

    def test_clean_report_has_no_failure_section(self):
        clean = [RelationReport(relation="eigen", family="L", n=0, verdict="pass")]
        text = render_markdown(build_report(clean, SuiteConfig()))
        assert "## Failures" not in text
        assert "## Skipped" not in text

    def test_audit_markdown(self):
        report = AuditReport(tool_version="1.0.0", n_max=3, seed=42, outcomes=[])
        assert "**0 of 0 seeded errors caught** ✅" in render_audit_markdown(report)


class TestWriteTextAtomic:
    """Tests for atomic file output."""

    def test_writes_and_creates_parents(self, tmp_path: Path):
        target = tmp_path / "out" / "report.json"
        write_text_atomic(target, "{}\n")
        assert target.read_text() == "{}\n"
        assert os.listdir(target.parent) == ["report.json"]

    def test_replaces_existing_file(self, tmp_path: Path):
        target = tmp_path / "report.md"
        target.write_text("old")
        write_text_atomic(target, "new")
        assert target.read_text() == "new"

    def test_unwritable_destination(self, tmp_path: Path):
        blocker = tmp_path / "file"
        blocker.write_text("not a directory")
        with pytest.raises(ReportWriteError) as info:
            write_text_atomic(blocker / "report.json", "{}")
        assert info.value.path == str(blocker / "report.json")
        assert blocker.read_text() == "not a directory"
