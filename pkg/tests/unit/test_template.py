"""Tests for Jinja2 template engine."""

from pathlib import Path

import pytest
from jinja2 import TemplateNotFound, UndefinedError

from askey_shift.families import catalog_document
from askey_shift.models import Verdict
from askey_shift.template_engine import TemplateEngine


class TestTemplateEngine:
    """Tests for TemplateEngine class."""

    @pytest.fixture
    def template_engine(self) -> TemplateEngine:
        """Create template engine with package templates."""
        return TemplateEngine()

    @pytest.fixture
    def temp_template_engine(self, tmp_path: Path) -> TemplateEngine:
        """Create template engine with temporary directory."""
        template_file = tmp_path / "test.md"
        template_file.write_text("P_{{ n }} at {{ family }}")
        return TemplateEngine(template_dir=tmp_path)

    def test_render_simple_template(self, temp_template_engine: TemplateEngine):
        """Test rendering a simple template."""
        assert temp_template_engine.render("test.md", {"n": 2, "family": "qR"}) == "P_2 at qR"

    def test_missing_variable_is_an_error(self, temp_template_engine: TemplateEngine):
        """Test that undefined template variables raise instead of rendering blank."""
        with pytest.raises(UndefinedError):
            temp_template_engine.render("test.md", {"n": 2})

    def test_missing_template(self, template_engine: TemplateEngine):
        """Test that an unknown template name raises."""
        with pytest.raises(TemplateNotFound):
            template_engine.render("nonexistent.md", {})

    @pytest.mark.parametrize(
        "verdict,expected",
        [(Verdict.PASS, "✅"), (Verdict.FAIL, "❌"), ("skipped", "⏭"), ("other", "other")],
    )
    def test_mark_filter(self, tmp_path: Path, verdict, expected: str):
        (tmp_path / "mark.md").write_text("{{ v | mark }}")
        assert TemplateEngine(tmp_path).render("mark.md", {"v": verdict}) == expected

    @pytest.mark.parametrize("value,expected", [(None, "–"), ("", "–"), (0, "0"), ("a", "a")])
    def test_dash_filter(self, tmp_path: Path, value, expected: str):
        (tmp_path / "dash.md").write_text("{{ v | dash }}")
        assert TemplateEngine(tmp_path).render("dash.md", {"v": value}) == expected

    def test_render_catalog_template(self, template_engine: TemplateEngine):
        """Test rendering the catalog listing for one framework."""
        entries = catalog_document("rdQMJ")
        result = template_engine.render("catalog.md", {"entries": entries, "framework": "rdQMJ"})
        assert "7 families in rdQMJ." in result
        assert "| bqJ | big q-Jacobi |" in result
        assert "| SW |" in result
