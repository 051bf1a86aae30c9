"""
Command line for askey-shift.

    askey-shift list [--framework F] [--has-new true|false]
    askey-shift verify [--family ID ...] [--variant L ...] [--relation R ...]
    askey-shift explain FAMILY VARIANT N
    askey-shift mutate-audit [--family ID ...]

Exit codes: 0 all relations hold, 1 some relation failed (or a seeded error
survived), 2 usage or configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from typing import Optional

import structlog
from pydantic import ValidationError

from askey_shift import __version__
from askey_shift.config import CliSettings, ConfigError, load_config
from askey_shift.families import (
    Framework,
    ParameterError,
    UnknownFamilyError,
    UnknownVariantError,
    catalog_document,
    derive_seed,
    resolve_family,
    sample_parameters,
)
from askey_shift.operators import DegreeBoundError, NoNewFactorizationError
from askey_shift.relations import (
    NotApplicableError,
    SuiteConfig,
    SuiteConfigError,
    audit_mutations,
    explain_shift,
    load_battery,
    run_suite,
)
from askey_shift.reporting import (
    AUDIT_SCHEMA,
    REPORT_SCHEMA,
    ReportWriteError,
    SchemaValidationError,
    build_report,
    render_audit_markdown,
    render_catalog_markdown,
    render_json,
    render_markdown,
    render_trace_markdown,
    validate_document,
    write_text_atomic,
)

log = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_IO = 3

LOG_LEVELS = ("debug", "info", "warning", "error")
FORMATS = ("json", "markdown")

USAGE_ERRORS = (
    SuiteConfigError,
    UnknownFamilyError,
    UnknownVariantError,
    ConfigError,
    NoNewFactorizationError,
    DegreeBoundError,
    NotApplicableError,
    ParameterError,
)


def _stderr_logger(*args: object) -> structlog.PrintLogger:
    return structlog.PrintLogger(sys.stderr)


def configure_logging(level: str = "warning") -> None:
    """Route structlog to stderr at ``level``; stdout carries documents only.

    The stream is looked up per logger so a replaced ``sys.stderr`` is honoured.
    """
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(getattr(logging, level.upper())),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


def _bool_flag(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="askey-shift",
        description="Exact verification of shift relations and factorizations for the Askey scheme",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="YAML config file (default: $ASKEY_SHIFT_CONFIG)")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default="warning")
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list the family catalog")
    p_list.add_argument("--framework", choices=[f.value for f in Framework])
    p_list.add_argument("--has-new", type=_bool_flag, metavar="true|false")
    p_list.add_argument("--format", choices=FORMATS)
    p_list.add_argument("--output", help="write to this file instead of stdout")

    p_verify = sub.add_parser("verify", help="run the relation suite")
    p_verify.add_argument("--family", action="append", dest="families", metavar="ID")
    p_verify.add_argument("--variant", action="append", dest="variants", metavar="LABEL")
    p_verify.add_argument("--relation", action="append", dest="relations", metavar="ID")
    p_verify.add_argument("--n-max", type=int)
    p_verify.add_argument("--trials", type=int)
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--degree", type=int, dest="operator_degree", metavar="K")
    p_verify.add_argument("--workers", type=int)
    p_verify.add_argument("--timings", action="store_true", default=None)
    p_verify.add_argument("--format", choices=FORMATS)
    p_verify.add_argument("--output", help="write the report to this file instead of stdout")

    p_explain = sub.add_parser("explain", help="expand one new shift relation term by term")
    p_explain.add_argument("family")
    p_explain.add_argument("variant")
    p_explain.add_argument("n", type=int)
    p_explain.add_argument("--seed", type=int)
    p_explain.add_argument("--format", choices=FORMATS)
    p_explain.add_argument("--output", help="write the trace to this file instead of stdout")

    p_audit = sub.add_parser("mutate-audit", help="check that seeded catalog errors are caught")
    p_audit.add_argument("--family", action="append", dest="families", metavar="ID")
    p_audit.add_argument("--n-max", type=int)
    p_audit.add_argument("--seed", type=int)
    p_audit.add_argument("--format", choices=FORMATS)
    p_audit.add_argument("--output", help="write the audit to this file instead of stdout")
    return parser


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        write_text_atomic(path, text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _format(args: argparse.Namespace, settings: CliSettings) -> str:
    return args.format or settings.output.format


def _output(args: argparse.Namespace, settings: CliSettings) -> Optional[str]:
    return args.output or settings.output.path


def _suite_config(args: argparse.Namespace, settings: CliSettings) -> SuiteConfig:
    """Config file and environment settings with the explicit flags on top."""
    overrides = {
        name: getattr(args, name)
        for name in ("families", "variants", "relations", "n_max", "trials", "seed", "operator_degree", "workers")
        if getattr(args, name) is not None
    }
    if args.timings:
        overrides["record_timings"] = True
    try:
        return SuiteConfig.model_validate({**settings.suite.model_dump(), **overrides})
    except ValidationError as e:
        raise SuiteConfigError(str(e)) from e


def cmd_list(args: argparse.Namespace, settings: CliSettings) -> int:
    entries = catalog_document(args.framework, args.has_new)
    if _format(args, settings) == "markdown":
        text = render_catalog_markdown(entries, args.framework)
    else:
        text = render_json(entries)
    _emit(text, _output(args, settings))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: CliSettings) -> int:
    cfg = _suite_config(args, settings)
    records = run_suite(cfg)
    document = build_report(records, cfg)
    validate_document(document, REPORT_SCHEMA)
    text = render_markdown(document) if _format(args, settings) == "markdown" else render_json(document)
    _emit(text, _output(args, settings))
    return EXIT_FAILURES if document.summary.failed else EXIT_OK


def cmd_explain(args: argparse.Namespace, settings: CliSettings) -> int:
    if args.n < 0:
        raise SuiteConfigError(f"degree must be non-negative, got {args.n}")
    family = resolve_family(args.family)
    seed = args.seed if args.seed is not None else settings.suite.seed
    point = sample_parameters(family, derive_seed(seed, family.id, args.variant, 0), max(args.n, 1), args.variant)
    trace = explain_shift(family, args.variant, args.n, point)
    text = render_trace_markdown(trace) if _format(args, settings) == "markdown" else render_json(trace)
    _emit(text, _output(args, settings))
    return EXIT_OK if all(section.holds for section in trace.sections) else EXIT_FAILURES


def cmd_mutate_audit(args: argparse.Namespace, settings: CliSettings) -> int:
    battery = load_battery()
    if args.families:
        for family_id in args.families:
            resolve_family(family_id)
        battery = tuple(mutation for mutation in battery if mutation.family in args.families)
    n_max = args.n_max if args.n_max is not None else settings.mutations.n_max
    if n_max < 1:
        raise SuiteConfigError(f"n-max must be >= 1, got {n_max}")
    seed = args.seed if args.seed is not None else settings.suite.seed
    report = audit_mutations(battery, n_max=n_max, seed=seed)
    validate_document(report, AUDIT_SCHEMA)
    text = render_audit_markdown(report) if _format(args, settings) == "markdown" else render_json(report)
    _emit(text, _output(args, settings))
    return EXIT_OK if report.all_caught else EXIT_FAILURES


COMMANDS = {
    "list": cmd_list,
    "verify": cmd_verify,
    "explain": cmd_explain,
    "mutate-audit": cmd_mutate_audit,
}


def _report_error(kind: str, error: BaseException) -> None:
    sys.stderr.write(f"askey-shift: {kind}: {error}\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(args.log_level)
    try:
        settings = load_config(args.config)
        return COMMANDS[args.command](args, settings)
    except USAGE_ERRORS as e:
        log.debug("usage_error", command=args.command, error=str(e))
        _report_error("error", e)
        return EXIT_USAGE
    except (ReportWriteError, OSError) as e:
        _report_error("I/O error", e)
        return EXIT_IO
    except SchemaValidationError as e:
        log.error("schema_validation_failed", schema=e.schema, reason=e.reason, location=e.location)
        _report_error("invalid document", e)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
