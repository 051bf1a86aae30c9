"""Jinja2 template engine for Markdown reports."""

from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined

TEMPLATE_DIR = Path(__file__).parent / "templates"


def _verdict_mark(verdict: Any) -> str:
    value = getattr(verdict, "value", verdict)
    return {"pass": "✅", "fail": "❌", "skipped": "⏭"}.get(value, str(value))


def _dash(value: Any) -> str:
    return "–" if value is None or value == "" else str(value)


class TemplateEngine:
    """Render report templates using Jinja2."""

    def __init__(self, template_dir: Path | None = None):
        """Initialize template engine with template directory.

        Args:
            template_dir: Path to templates directory.
                         Defaults to the package's templates/ folder.
        """
        if template_dir is None:
            template_dir = TEMPLATE_DIR

        self.template_dir = template_dir
        self.env = Environment(
            loader=FileSystemLoader(template_dir),
            autoescape=False,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )
        self.env.filters["mark"] = _verdict_mark
        self.env.filters["dash"] = _dash

    def render(self, template_name: str, context: dict[str, Any]) -> str:
        """Render a template with the given context.

        Args:
            template_name: Name of template file (e.g., 'report.md')
            context: Dictionary of template variables

        Returns:
            Rendered template string

        Raises:
            TemplateNotFound: If template doesn't exist
        """
        template = self.env.get_template(template_name)
        return template.render(**context)
