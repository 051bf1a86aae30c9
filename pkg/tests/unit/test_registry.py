"""Tests for the family catalog and registry."""

from pathlib import Path

import pytest

from askey_shift.families import (
    CatalogError,
    CoordinateKind,
    Framework,
    UnknownFamilyError,
    UnknownVariantError,
    catalog_document,
    family_descriptor,
    list_families,
    load_registry,
)
from askey_shift.families.registry import load_catalog_file, parse_families

ALL_IDS = {
    "He", "L", "J", "B", "pJ",
    "cH", "MP", "W", "cdH", "AW", "cdqH", "ASC", "cbqHe", "cqHe", "cqJ", "cqL", "cqH", "qMP",
    "H", "K", "R", "dH", "dqqK", "qH", "qK", "qqK", "aqK", "qR", "dqH", "dqK", "M", "C", "lqJ", "lqL",
    "qB", "qM", "ASCII", "qC",
    "bqJ", "bqL", "ASCI", "dqHeI", "dqHeII", "qL", "SW",
}  # fmt: skip
WITHOUT_NEW = ["He", "B", "C", "qB", "dqHeI", "dqHeII", "SW"]


class TestRegistry:
    """Tests for catalog completeness."""

    def test_every_family_is_registered(self):
        assert set(load_registry().ids()) == ALL_IDS

    def test_families_without_new_factorization(self):
        assert [f.id for f in list_families(has_new_factorization=False)] == WITHOUT_NEW

    def test_jackson_families(self):
        ids = [f.id for f in list_families("rdQMJ")]
        assert ids == ["bqJ", "bqL", "ASCI", "dqHeI", "dqHeII", "qL", "SW"]

    @pytest.mark.parametrize("family_id,count", [("dH", 6), ("qR", 6), ("ASC", 4), ("cqHe", 1), ("L", 2), ("bqJ", 4)])
    def test_variant_counts(self, family_id: str, count: int):
        assert len(family_descriptor(family_id).variants) == count

    def test_cqhe_variant_has_empty_shift(self):
        assert family_descriptor("cqHe").variants[0].delta_bar == []

    def test_unknown_family(self):
        with pytest.raises(UnknownFamilyError, match="unknown family 'Xyz'"):
            family_descriptor("Xyz")

    def test_unknown_variant(self):
        with pytest.raises(UnknownVariantError):
            family_descriptor("qR").variant("z")


class TestDescriptor:
    """Tests for derived descriptor properties."""

    def test_q_racah(self, qr_family):
        assert qr_family.framework is Framework.RDQM_FINITE
        assert qr_family.is_finite
        assert qr_family.parameter_names == ["a", "b", "c", "d"]
        assert qr_family.coordinate_kind is CoordinateKind.T_LAURENT
        assert qr_family.variant_labels == ["a", "b", "c", "d", "e", "f"]

    def test_framework_flags(self):
        assert Framework.RDQM_SEMI.is_rdqm
        assert Framework.RDQMJ.is_discrete
        assert not Framework.RDQMJ.is_rdqm
        assert not Framework.IDQM.is_discrete

    def test_constraints_list_blacklist(self, qr_family):
        assert "1-b != 0" in qr_family.constraints


class TestCatalogDocument:
    """Tests for the machine-readable listing."""

    def test_listing_covers_catalog(self):
        entries = catalog_document()
        assert len(entries) == len(ALL_IDS)

    def test_entry_fields(self):
        (entry,) = [e for e in catalog_document("oQM") if e.id == "L"]
        assert entry.framework == "oQM"
        assert entry.parameters == ["g"]
        assert entry.variants == ["a", "b"]
        assert entry.has_new_factorization

    def test_filter_by_framework_and_flag(self):
        entries = catalog_document(Framework.RDQMJ, has_new_factorization=True)
        assert [e.id for e in entries] == ["bqJ", "bqL", "ASCI", "qL"]


class TestCatalogFiles:
    """Tests for malformed catalog input."""

    def test_invalid_yaml(self, tmp_path: Path):
        path = tmp_path / "bad.yaml"
        path.write_text("families: [unclosed\n")
        with pytest.raises(CatalogError, match="invalid YAML"):
            load_catalog_file(path)

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(CatalogError, match="cannot read"):
            load_catalog_file(tmp_path / "missing.yaml")

    def test_families_list_required(self, tmp_path: Path):
        path = tmp_path / "empty.yaml"
        path.write_text("other: 1\n")
        with pytest.raises(CatalogError, match="'families' list"):
            parse_families(path)

    def test_invalid_entry_names_family(self, tmp_path: Path):
        path = tmp_path / "entry.yaml"
        path.write_text("families:\n  - {id: Bad, name: bad, framework: oQM}\n")
        with pytest.raises(CatalogError, match="family Bad"):
            parse_families(path)
