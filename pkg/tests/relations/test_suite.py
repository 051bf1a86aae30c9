"""Tests for the suite runner."""

import pytest

from askey_shift.families import list_families
from askey_shift.models import RelationReport, Verdict
from askey_shift.relations import (
    SuiteConfig,
    SuiteConfigError,
    applicable_relations,
    relation_selected,
    run_suite,
    run_unit,
    summarize,
)


class TestSelection:
    """Tests for relation filters and applicability."""

    @pytest.mark.parametrize(
        "relation,filters,expected",
        [
            ("eigen", [], True),
            ("eigen", ["eigen"], True),
            ("shift_new", ["shift"], False),
            ("remark_equivalences.flip", ["remark_equivalences"], True),
            ("remark_equivalences.flip", ["remark_equivalences.xshift"], False),
        ],
    )
    def test_relation_selected(self, relation: str, filters: list[str], expected: bool):
        assert relation_selected(relation, filters) is expected

    def test_applicable_relations(self):
        assert "star_invariance" in applicable_relations("AW")
        assert "split" not in applicable_relations("L")
        assert "shift_new" in applicable_relations("L")
        assert "shift_new" not in applicable_relations("He")

    def test_unknown_relation_rejected(self):
        with pytest.raises(ValueError, match="unknown relations: teleport"):
            SuiteConfig(relations=["teleport"])

    def test_unknown_family(self):
        with pytest.raises(SuiteConfigError, match="unknown family"):
            run_suite(SuiteConfig(families=["XX"]))

    def test_variant_filter_that_selects_nothing(self):
        with pytest.raises(SuiteConfigError, match="no family/variant"):
            run_suite(SuiteConfig(families=["He"], variants=["a"]))


class TestRunUnit:
    """Tests for single units."""

    def test_hermite_base_unit(self):
        cfg = SuiteConfig(n_max=2, trials=1, seed=1)
        records = run_unit("He", None, 0, cfg)
        by_verdict = {verdict: [r for r in records if r.verdict is verdict] for verdict in Verdict}
        assert not by_verdict[Verdict.FAIL]
        skipped = {r.relation for r in by_verdict[Verdict.SKIPPED]}
        assert {"shift_new", "split", "star_invariance", "remark_equivalences.flip"} <= skipped
        assert {r.n for r in records if r.relation == "eigen"} == {0, 1, 2}

    def test_units_draw_their_own_seed(self):
        cfg = SuiteConfig(n_max=1, trials=2, seed=1, relations=["eigen"])
        first = run_unit("L", None, 0, cfg)
        second = run_unit("L", None, 1, cfg)
        assert first[0].seed != second[0].seed


class TestRunSuite:
    """Tests for whole runs."""

    def test_small_suite_passes(self, small_suite: SuiteConfig):
        records = run_suite(small_suite)
        failures = [(r.family, r.variant, r.relation, r.n, r.reason) for r in records if r.verdict is Verdict.FAIL]
        assert failures == []
        relations = {r.relation for r in records}
        assert {"eigen", "shift_new", "remark_equivalences.flip", "remark_equivalences.xshift"} <= relations

    def test_records_are_sorted_without_timings(self, small_suite: SuiteConfig):
        records = run_suite(small_suite)
        assert records == sorted(records, key=RelationReport.sort_key)
        assert all(r.micros is None for r in records)

    def test_timings_recorded_on_request(self):
        records = run_suite(SuiteConfig(n_max=1, trials=1, families=["He"], relations=["eigen"], record_timings=True))
        assert all(r.micros is not None and r.micros >= 0 for r in records)

    def test_seed_reproducibility(self):
        cfg = SuiteConfig(n_max=2, trials=2, seed=13, families=["L"])
        assert run_suite(cfg) == run_suite(cfg)

    def test_worker_count_does_not_change_records(self):
        cfg = SuiteConfig(n_max=2, trials=2, seed=13, families=["L", "He"])
        assert run_suite(cfg) == run_suite(cfg.model_copy(update={"workers": 2}))

    def test_relation_filter(self):
        records = run_suite(SuiteConfig(n_max=2, trials=1, families=["qR"], relations=["shift_new"]))
        assert {r.relation for r in records} == {"shift_new"}
        assert {r.variant for r in records} == {"a", "b", "c", "d", "e", "f"}

    def test_summary(self):
        records = [
            RelationReport(relation="eigen", family="L", verdict="pass"),
            RelationReport(relation="eigen", family="L", verdict="fail"),
            RelationReport(relation="split", family="L", verdict="skipped"),
        ]
        summary = summarize(records)
        assert (summary.total, summary.passed, summary.failed, summary.skipped) == (3, 1, 1, 1)
        assert [(t.relation, t.passed, t.failed, t.skipped) for t in summary.relations] == [
            ("eigen", 1, 1, 0),
            ("split", 0, 0, 1),
        ]


@pytest.mark.slow
class TestWholeCatalog:
    """Every family and variant of the catalog on one trial."""

    def test_catalog_sweep_has_no_failures(self):
        records = run_suite(SuiteConfig(n_max=3, trials=1, seed=42, workers=4))
        failures = [(r.family, r.variant, r.relation, r.n, r.reason) for r in records if r.verdict is Verdict.FAIL]
        assert failures == []
        assert {r.family for r in records} == {family.id for family in list_families()}
        assert "remark_equivalences.xshift" in {r.relation for r in records if r.family == "bqJ"}
