"""
Report documents: assembly, JSON and Markdown rendering, schema checks and
atomic file output.
"""

from __future__ import annotations

import json
import os
import tempfile
from collections.abc import Iterable
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

import jsonschema
import structlog
from pydantic import BaseModel

from askey_shift import __version__
from askey_shift.models import (
    AuditReport,
    CatalogEntry,
    ExplainTrace,
    RelationReport,
    ReportDocument,
    Verdict,
)
from askey_shift.relations import SuiteConfig, summarize
from askey_shift.template_engine import TemplateEngine

log = structlog.get_logger(__name__)

SCHEMA_DIR = Path(__file__).parent / "schemas"
REPORT_SCHEMA = "report-v1"
AUDIT_SCHEMA = "audit-v1"


class ReportWriteError(Exception):
    """Raised when a report cannot be written to its destination."""

    def __init__(self, path: Path | str, reason: str):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"cannot write {path}: {reason}")


class SchemaValidationError(Exception):
    """Raised when a document does not match its shipped schema."""

    def __init__(self, schema: str, reason: str, location: str = ""):
        self.schema = schema
        self.reason = reason
        self.location = location
        where = f" at {location}" if location else ""
        super().__init__(f"document does not match {schema}{where}: {reason}")


def build_report(records: Iterable[RelationReport], cfg: SuiteConfig) -> ReportDocument:
    records = list(records)
    return ReportDocument(
        tool_version=__version__,
        config=cfg.model_dump(mode="json"),
        summary=summarize(records),
        records=records,
    )


def _plain(document: BaseModel | list[BaseModel] | dict[str, Any]) -> Any:
    if isinstance(document, BaseModel):
        return document.model_dump(mode="json")
    if isinstance(document, list):
        return [_plain(item) for item in document]
    return document


def render_json(document: BaseModel | list[BaseModel] | dict[str, Any]) -> str:
    """Pretty JSON with a trailing newline; field order follows the models."""
    return json.dumps(_plain(document), indent=2, ensure_ascii=False) + "\n"


@lru_cache(maxsize=1)
def _engine() -> TemplateEngine:
    return TemplateEngine()


def render_markdown(document: ReportDocument) -> str:
    failures = [r for r in document.records if r.verdict is Verdict.FAIL]
    skipped = [r for r in document.records if r.verdict is Verdict.SKIPPED]
    return _engine().render("report.md", {"document": document, "failures": failures, "skipped": skipped})


def render_catalog_markdown(entries: list[CatalogEntry], framework: Optional[str] = None) -> str:
    return _engine().render("catalog.md", {"entries": entries, "framework": framework})


def render_audit_markdown(report: AuditReport) -> str:
    return _engine().render("audit.md", {"report": report})


def render_trace_markdown(trace: ExplainTrace) -> str:
    return _engine().render("explain.md", {"trace": trace})


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict[str, Any]:
    """
    Raises:
        SchemaValidationError: If no schema of that name ships with the package
    """
    path = SCHEMA_DIR / f"{name}.schema.json"
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise SchemaValidationError(name, f"schema not available: {e}") from e


def validate_document(document: BaseModel | dict[str, Any], schema: str = REPORT_SCHEMA) -> None:
    """
    Raises:
        SchemaValidationError: If the document does not match ``schema``
    """
    instance = _plain(document)
    try:
        jsonschema.validate(instance=instance, schema=load_schema(schema))
    except jsonschema.ValidationError as e:
        location = "/".join(str(part) for part in e.absolute_path)
        raise SchemaValidationError(schema, e.message, location) from e


def write_text_atomic(path: Path | str, text: str) -> None:
    """Write ``text`` to a temporary file next to ``path`` and move it into place.

    Raises:
        ReportWriteError: On any I/O failure; the destination is left untouched
    """
    path = Path(path)
    tmp_name = None
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(
            "w", encoding="utf-8", dir=path.parent, prefix=f".{path.name}.", suffix=".tmp", delete=False
        ) as tmp:
            tmp_name = tmp.name
            tmp.write(text)
        os.replace(tmp_name, path)
    except OSError as e:
        if tmp_name is not None and os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise ReportWriteError(path, str(e)) from e
    log.info("report_written", path=str(path), bytes=len(text.encode("utf-8")))
