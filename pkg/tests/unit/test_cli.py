"""Tests for the askey-shift command line."""

import io
import json
import sys
from pathlib import Path

import pytest
import structlog

from askey_shift import __version__
from askey_shift.cli import EXIT_FAILURES, EXIT_IO, EXIT_OK, EXIT_USAGE, build_parser, configure_logging, main


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch):
    """Keep the caller's environment out of the config layer."""
    for name in ("ASKEY_SHIFT_CONFIG", "ASKEY_SHIFT_SEED", "ASKEY_SHIFT_WORKERS"):
        monkeypatch.delenv(name, raising=False)


def run(capsys: pytest.CaptureFixture, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParser:
    """Tests for argument parsing."""

    def test_verify_flags(self):
        args = build_parser().parse_args(
            ["verify", "--family", "qR", "--family", "AW", "--relation", "shift_new", "--degree", "16", "--timings"]
        )
        assert args.families == ["qR", "AW"]
        assert args.relations == ["shift_new"]
        assert args.operator_degree == 16
        assert args.timings is True
        assert args.n_max is None

    def test_version(self, capsys: pytest.CaptureFixture):
        code, out, _ = run(capsys, "--version")
        assert code == EXIT_OK
        assert __version__ in out

    def test_missing_command(self, capsys: pytest.CaptureFixture):
        code, _, err = run(capsys)
        assert code == EXIT_USAGE
        assert "required" in err

    def test_bad_boolean(self, capsys: pytest.CaptureFixture):
        code, _, err = run(capsys, "list", "--has-new", "maybe")
        assert code == EXIT_USAGE
        assert "expected true or false" in err


class TestLogging:
    """Tests for the stderr log sink."""

    def test_logs_follow_a_replaced_stderr(self, monkeypatch: pytest.MonkeyPatch):
        configure_logging("info")
        stream = io.StringIO()
        monkeypatch.setattr(sys, "stderr", stream)
        structlog.get_logger("askey_shift.test").info("config_migrated", version=2)
        assert "config_migrated" in stream.getvalue()

    def test_level_filters_events(self, monkeypatch: pytest.MonkeyPatch):
        configure_logging("warning")
        stream = io.StringIO()
        monkeypatch.setattr(sys, "stderr", stream)
        structlog.get_logger("askey_shift.test").info("config_migrated")
        assert stream.getvalue() == ""


class TestList:
    """Tests for the list command."""

    def test_framework_filter(self, capsys: pytest.CaptureFixture):
        code, out, _ = run(capsys, "list", "--framework", "rdQMJ")
        assert code == EXIT_OK
        assert [entry["id"] for entry in json.loads(out)] == ["bqJ", "bqL", "ASCI", "dqHeI", "dqHeII", "qL", "SW"]

    def test_families_without_new_factorization(self, capsys: pytest.CaptureFixture):
        code, out, _ = run(capsys, "list", "--has-new", "false")
        assert code == EXIT_OK
        assert sorted(entry["id"] for entry in json.loads(out)) == sorted(
            ["He", "B", "C", "qB", "dqHeI", "dqHeII", "SW"]
        )

    def test_markdown(self, capsys: pytest.CaptureFixture):
        code, out, _ = run(capsys, "list", "--framework", "oQM", "--format", "markdown")
        assert code == EXIT_OK
        assert out.startswith("# Family catalog")
        assert "5 families in oQM." in out


class TestVerify:
    """Tests for the verify command."""

    def test_unknown_family(self, capsys: pytest.CaptureFixture):
        code, out, err = run(capsys, "verify", "--family", "XX")
        assert code == EXIT_USAGE
        assert out == ""
        assert "XX" in err

    def test_unknown_relation(self, capsys: pytest.CaptureFixture):
        code, _, err = run(capsys, "verify", "--family", "L", "--relation", "teleport")
        assert code == EXIT_USAGE
        assert "teleport" in err

    def test_degree_below_bound(self, capsys: pytest.CaptureFixture):
        code, _, err = run(capsys, "verify", "--family", "qR", "--relation", "factorization_classic", "--degree", "1")
        assert code == EXIT_USAGE
        assert "operator degree 1" in err

    def test_inapplicable_relation_is_skipped(self, capsys: pytest.CaptureFixture):
        code, out, _ = run(capsys, "verify", "--family", "He", "--relation", "shift_new", "--trials", "2")
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["summary"]["total"] == 2
        assert document["summary"]["skipped"] == 2
        assert {record["verdict"] for record in document["records"]} == {"skipped"}

    def test_runs_are_reproducible(self, capsys: pytest.CaptureFixture):
        argv = ("verify", "--family", "L", "--n-max", "2", "--trials", "1", "--seed", "3")
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first[0] == EXIT_OK
        assert first[1] == second[1]

    def test_output_file(self, capsys: pytest.CaptureFixture, tmp_path: Path):
        target = tmp_path / "reports" / "laguerre.md"
        code, out, _ = run(
            capsys, "verify", "--family", "L", "--n-max", "1", "--trials", "1", "--format", "markdown", "--output", str(target)
        )
        assert code == EXIT_OK
        assert out == ""
        assert target.read_text().startswith("# askey-shift verification report")

    def test_unwritable_output(self, capsys: pytest.CaptureFixture, tmp_path: Path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        code, _, err = run(
            capsys, "verify", "--family", "He", "--n-max", "1", "--trials", "1", "--output", str(blocker / "r.json")
        )
        assert code == EXIT_IO
        assert "I/O error" in err

    def test_config_file(self, capsys: pytest.CaptureFixture, tmp_path: Path):
        config = tmp_path / "askey.yaml"
        config.write_text("version: 2\nsuite:\n  n_max: 1\n  trials: 1\n  seed: 8\nfilters:\n  families: [He]\n")
        code, out, _ = run(capsys, "--config", str(config), "verify", "--relation", "eigen")
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["config"]["seed"] == 8
        assert [record["n"] for record in document["records"]] == [0, 1]

    def test_invalid_config_file(self, capsys: pytest.CaptureFixture, tmp_path: Path):
        config = tmp_path / "askey.yaml"
        config.write_text("version: 2\noutput:\n  format: html\n")
        code, _, err = run(capsys, "--config", str(config), "list")
        assert code == EXIT_USAGE
        assert "output.format" in err


class TestExplain:
    """Tests for the explain command."""

    def test_family_without_variants(self, capsys: pytest.CaptureFixture):
        code, _, _ = run(capsys, "explain", "He", "a", "1")
        assert code == EXIT_USAGE

    def test_negative_degree(self, capsys: pytest.CaptureFixture):
        code, _, err = run(capsys, "explain", "qR", "a", "-1")
        assert code == EXIT_USAGE
        assert "non-negative" in err

    def test_trace_holds(self, capsys: pytest.CaptureFixture):
        code, out, _ = run(capsys, "explain", "qR", "a", "1", "--format", "markdown")
        assert code == EXIT_OK
        assert out.startswith("# qR (a) · n = 1")
        assert "## Forward relation ✅" in out
        assert "## Backward relation ✅" in out


class TestMutateAudit:
    """Tests for the mutate-audit command."""

    def test_unknown_family(self, capsys: pytest.CaptureFixture):
        code, _, _ = run(capsys, "mutate-audit", "--family", "XX")
        assert code == EXIT_USAGE

    def test_n_max_must_be_positive(self, capsys: pytest.CaptureFixture):
        code, _, err = run(capsys, "mutate-audit", "--n-max", "0")
        assert code == EXIT_USAGE
        assert "n-max" in err


def test_failure_exit_code_is_distinct():
    assert len({EXIT_OK, EXIT_FAILURES, EXIT_USAGE, EXIT_IO}) == 4
