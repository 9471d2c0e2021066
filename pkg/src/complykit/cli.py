"""Command-line interface.

Exit codes: 0 success, 1 validation errors found (or a failed screening),
2 usage or IO errors. File arguments accept "-" for stdin. Byte outputs are
the reporting module's bytes verbatim.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import reporting
from .catalog import Catalog, Severity, validate
from .catalog_io import (
    DocumentSchemaError,
    DocumentSyntaxError,
    fingerprint,
    parse_catalog,
    serialize_catalog,
)
from .scoring import (
    Assessment,
    FingerprintMismatchError,
    ScreeningProfile,
    UnknownGroupKeyError,
    combine_many,
    parse_assessment,
    screen_candidate,
    serialize_assessment,
    summary_doc,
)
from .catalog_io import canonical_json_bytes, loads_strict
from .sample import sample_catalog


class CliError(Exception):
    def __init__(self, message: str, code: int = 2) -> None:
        super().__init__(message)
        self.code = code


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write_bytes(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}") from None


def _load_catalog(path: str) -> Catalog:
    try:
        catalog = parse_catalog(_read_bytes(path))
    except (DocumentSyntaxError, DocumentSchemaError) as exc:
        raise CliError(f"{path}: {exc}") from None
    issues = [i for i in validate(catalog) if i.severity is Severity.ERROR]
    if issues:
        first = issues[0]
        raise CliError(
            f"{path}: catalog has {len(issues)} validation error(s), "
            f"first: {first.location}: {first.message}"
        )
    return catalog


def _load_assessment(path: str, catalog: Catalog) -> Assessment:
    try:
        assessment = parse_assessment(_read_bytes(path))
    except (DocumentSyntaxError, DocumentSchemaError) as exc:
        raise CliError(f"{path}: {exc}") from None
    if assessment.catalog_fingerprint != fingerprint(catalog):
        raise CliError(f"{path}: assessment is bound to a different catalog")
    return assessment


# -- subcommands --------------------------------------------------------------


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        catalog = parse_catalog(_read_bytes(args.catalog))
    except (DocumentSyntaxError, DocumentSchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    issues = validate(catalog)
    for issue in issues:
        print(f"{issue.severity.value}: {issue.code}: {issue.location}: {issue.message}")
    print(f"{len(issues)} issues")
    has_errors = any(i.severity is Severity.ERROR for i in issues)
    return 1 if has_errors else 0


def _cmd_effort(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args.catalog)
    if args.csv:
        _write_bytes(args.output, reporting.effort_csv(catalog))
    else:
        _write_bytes(args.output, reporting.effort_text(catalog).encode("utf-8"))
    return 0


def _cmd_importance(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args.catalog)
    if args.csv:
        _write_bytes(args.output, reporting.importance_csv(catalog))
    else:
        _write_bytes(args.output, reporting.importance_text(catalog).encode("utf-8"))
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args.catalog)
    if not any(r.id == args.requirement for r in catalog.requirements):
        raise CliError(f"unknown requirement {args.requirement!r}")
    _write_bytes(args.output, reporting.catalog_extract(catalog, args.requirement).encode("utf-8"))
    return 0


def _cmd_assess(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args.catalog)
    assessment = _load_assessment(args.ratings, catalog)
    try:
        summary = summary_doc(catalog, assessment)
    except UnknownGroupKeyError as exc:
        raise CliError(f"{args.ratings}: rating references unknown group {exc.args[0]}") from None
    if args.summary:
        _write_bytes(args.output, canonical_json_bytes(summary))
    else:
        _write_bytes(args.output, reporting.summary_text(summary).encode("utf-8"))
    return 0


def _cmd_combine(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args.catalog)
    assessments = [_load_assessment(path, catalog) for path in args.ratings]
    try:
        combined = combine_many(assessments)
    except FingerprintMismatchError as exc:
        raise CliError(str(exc)) from None
    _write_bytes(args.output, serialize_assessment(combined))
    return 0


def _cmd_screen(args: argparse.Namespace) -> int:
    try:
        root = loads_strict(_read_bytes(args.profile))
    except (DocumentSyntaxError, DocumentSchemaError) as exc:
        raise CliError(f"{args.profile}: {exc}") from None
    if not isinstance(root, dict):
        raise CliError(f"{args.profile}: expected a JSON object")
    try:
        profile = ScreeningProfile(
            certifications=root.get("certifications", 0),
            industry40_references=root.get("industry40_references", 0),
            documented_topics=frozenset(root.get("documented_topics", [])),
            matched_keywords=frozenset(root.get("matched_keywords", [])),
        )
    except (TypeError, ValueError) as exc:
        raise CliError(f"{args.profile}: {exc}") from None
    verdict = screen_candidate(profile)
    doc = {"passed": verdict.passed, "failed_criteria": list(verdict.failed_criteria)}
    _write_bytes(args.output, canonical_json_bytes(doc))
    return 0 if verdict.passed else 1


def _cmd_chart(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args.catalog)
    if args.kind == "importance":
        svg, csv = reporting.importance_chart(catalog)
    else:
        if not args.ratings:
            raise CliError("assessment charts need at least one --ratings file")
        assessments = [_load_assessment(path, catalog) for path in args.ratings]
        svg, csv = reporting.assessment_chart(catalog, assessments, normalized=args.normalized)
    _write_bytes(args.output, svg)
    if args.csv_output:
        _write_bytes(args.csv_output, csv)
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    _write_bytes(args.output, serialize_catalog(sample_catalog()))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise CliError(f"--listen must look like HOST:PORT, got {args.listen!r}")
    app = create_app(data_dir=args.data, ui_dir=args.ui)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="complykit",
        description="Requirements-and-controls catalogs, gap scoring, and effort estimation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p: argparse.ArgumentParser) -> None:
        p.add_argument("-o", "--output", metavar="FILE", help="write to FILE instead of stdout")

    p = sub.add_parser("validate", help="check a catalog file, listing every issue")
    p.add_argument("catalog")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("effort", help="implementation effort per control group")
    p.add_argument("catalog")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of a text table")
    add_output(p)
    p.set_defaults(func=_cmd_effort)

    p = sub.add_parser("importance", help="control counts and ranking per requirement")
    p.add_argument("catalog")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of a text table")
    add_output(p)
    p.set_defaults(func=_cmd_importance)

    p = sub.add_parser("extract", help="print one requirement's groups as a text table")
    p.add_argument("catalog")
    p.add_argument("requirement")
    add_output(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("assess", help="score a ratings file against a catalog")
    p.add_argument("catalog")
    p.add_argument("ratings")
    p.add_argument("--summary", action="store_true", help="emit the JSON summary document")
    add_output(p)
    p.set_defaults(func=_cmd_assess)

    p = sub.add_parser("combine", help="pointwise-best combination of assessments")
    p.add_argument("catalog")
    p.add_argument("ratings", nargs="+", help="two or more ratings files")
    add_output(p)
    p.set_defaults(func=_cmd_combine)

    p = sub.add_parser("screen", help="apply the candidate screening criteria to a profile")
    p.add_argument("profile")
    add_output(p)
    p.set_defaults(func=_cmd_screen)

    p = sub.add_parser("chart", help="render an SVG chart")
    p.add_argument("catalog")
    p.add_argument("--kind", choices=("importance", "assessment"), default="importance")
    p.add_argument("--ratings", action="append", default=[], metavar="FILE")
    p.add_argument("--normalized", action="store_true", help="0-1 axis for assessment charts")
    p.add_argument("--csv-output", metavar="FILE", help="also write the CSV twin")
    add_output(p)
    p.set_defaults(func=_cmd_chart)

    p = sub.add_parser("sample", help="write the bundled sample catalog")
    add_output(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--listen", default="127.0.0.1:8000", metavar="HOST:PORT")
    p.add_argument("--data", metavar="DIR", help="persistence directory (in-memory if omitted)")
    p.add_argument("--ui", metavar="DIR", help="serve a built UI from this directory under /ui")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FingerprintMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
