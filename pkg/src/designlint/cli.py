"""Command-line interface: audit, trends build, diff, and patch commands.

Exit codes follow the linter convention: 0 when the audit found no issues,
1 when issues were found, 2 on usage or ingest errors.
"""

from __future__ import annotations

import argparse
import datetime
import json
import logging
import os
import sys
from pathlib import Path

from .audit import run_audit
from .comparison import TrendCategory
from .descriptor import Descriptor
from .errors import DesignlintError, ReferenceIngestError
from .ingest import apply_css_patch, ingest_html, parse_stylesheet
from .model import PageSnapshot, snapshot_to_dict, validate_snapshot
from .report import diff_reports, render_accessible_html, report_from_dict

logger = logging.getLogger(__name__)

EXIT_CLEAN = 0
EXIT_ISSUES = 1
EXIT_ERROR = 2

_CATEGORY_ALIASES = {
    "blog": TrendCategory.BLOG,
    "tutorial": TrendCategory.TUTORIAL,
    "personal_website": TrendCategory.PERSONAL_WEBSITE,
    "personal-website": TrendCategory.PERSONAL_WEBSITE,
    "organization_website": TrendCategory.ORGANIZATION_WEBSITE,
    "organization-website": TrendCategory.ORGANIZATION_WEBSITE,
    "news_magazine": TrendCategory.NEWS_MAGAZINE,
    "news-magazine": TrendCategory.NEWS_MAGAZINE,
}


def load_snapshot(path: str | Path, kind: str = "auto") -> PageSnapshot:
    """Load an input as a snapshot; HTML goes through static ingest."""
    path = Path(path)
    if not path.exists():
        raise DesignlintError(f"input not found: {path}")
    if kind == "auto":
        kind = "snapshot" if path.suffix == ".json" else "static"
    if kind == "static":
        return ingest_html(path.read_text(encoding="utf-8"), source_id=str(path))
    raw = json.loads(path.read_text(encoding="utf-8"))
    return validate_snapshot(raw)


def _attach_screenshot_colors(snapshot: PageSnapshot, image_path: str) -> None:
    """Decode an image and attach its dominant colors to the snapshot."""
    from PIL import Image

    from .color import dominant_colors

    with Image.open(image_path) as img:
        img = img.convert("RGB")
        img.thumbnail((64, 64))
        import numpy as np

        snapshot.screenshot_colors = tuple(dominant_colors(np.asarray(img), k=5))


def _parse_css_patch(path: str) -> dict[str, dict[str, str]]:
    rules, _ = parse_stylesheet(Path(path).read_text(encoding="utf-8"))
    patch: dict[str, dict[str, str]] = {}
    for rule in rules:
        patch.setdefault(rule.selector.raw, {}).update(rule.declarations)
    return patch


def _category(value: str) -> TrendCategory:
    key = value.strip().lower()
    if key not in _CATEGORY_ALIASES:
        raise argparse.ArgumentTypeError(
            f"unknown category {value!r}; choose from {sorted(set(_CATEGORY_ALIASES))}"
        )
    return _CATEGORY_ALIASES[key]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="designlint",
        description="Offline visual-design auditor for web pages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    audit = sub.add_parser("audit", help="audit a page and report design issues")
    audit.add_argument("input", help="HTML file or snapshot JSON")
    audit.add_argument("--input-kind", choices=("auto", "static", "snapshot"), default="auto")
    audit.add_argument("--reference", help="reference page (HTML or snapshot) to compare against")
    audit.add_argument("--trends", help="trend manifest JSON")
    audit.add_argument("--category", type=_category, help="trend category (required with --trends)")
    audit.add_argument("--format", choices=("json", "html", "both"), default="json")
    audit.add_argument("--out", help="output path (base path when --format both)")
    audit.add_argument("--offline", action="store_true",
                       help="force the deterministic descriptor; no network at all")
    audit.add_argument("--screenshot", help="page screenshot; dominant colors feed the audit")
    audit.add_argument("--diff-against", help="previous report JSON; adds a changes section")
    audit.add_argument("--group-by-element", action="store_true",
                       help="group HTML report entries by element group instead of category")
    audit.add_argument("--timestamp", help="embed this timestamp in run metadata")
    audit.add_argument("--ocr", help="OCR sidecar JSON; lines are converted and attached")
    audit.add_argument("--strict-contrast", action="store_true",
                       help="grade the contrast bar by text size (extension profile)")

    trends = sub.add_parser("trends", help="trend corpus utilities")
    trends_sub = trends.add_subparsers(dest="trends_command", required=True)
    build = trends_sub.add_parser("build", help="build a trend manifest from a snapshot directory")
    build.add_argument("directory", help="directory of *.snapshot.json / *.json files")
    build.add_argument("--category", type=_category, required=True)
    build.add_argument("--out", required=True, help="manifest output path")

    diff = sub.add_parser("diff", help="diff two audit reports")
    diff.add_argument("before", help="earlier report JSON")
    diff.add_argument("after", help="later report JSON")
    diff.add_argument("--patch", help="CSS patch whose changes the diff should echo")

    patch = sub.add_parser("patch", help="apply a CSS patch to a page and emit the snapshot")
    patch.add_argument("input", help="HTML file (static ingest)")
    patch.add_argument("--apply", required=True, help="CSS file with the patch rules")
    patch.add_argument("--out", required=True, help="snapshot JSON output path")

    return parser


def _load_trend_corpus(manifest_path: str, category: TrendCategory) -> list[PageSnapshot]:
    manifest_file = Path(manifest_path)
    manifest = json.loads(manifest_file.read_text(encoding="utf-8"))
    manifest_category = manifest.get("category", "")
    if _CATEGORY_ALIASES.get(manifest_category) is not category:
        raise DesignlintError(
            f"manifest category {manifest_category!r} does not match --category "
            f"{category.value!r}"
        )
    corpus = []
    for site in manifest.get("sites", []):
        site_path = (manifest_file.parent / site).resolve()
        corpus.append(load_snapshot(site_path, kind="snapshot"))
    return corpus


def _cmd_audit(args: argparse.Namespace) -> int:
    snapshot = load_snapshot(args.input, args.input_kind)
    if args.screenshot:
        _attach_screenshot_colors(snapshot, args.screenshot)
    if args.ocr:
        from .ocr import convert_ocr_response

        raw_lines = json.loads(Path(args.ocr).read_text(encoding="utf-8"))
        snapshot.ocr_lines = tuple(convert_ocr_response(raw_lines))

    descriptor = Descriptor(mode="offline" if args.offline else "auto")
    reference = None
    if args.reference:
        try:
            reference = load_snapshot(args.reference, "auto")
        except (DesignlintError, json.JSONDecodeError, OSError) as exc:
            raise ReferenceIngestError(f"cannot ingest reference {args.reference}: {exc}") from None

    trend_corpus = None
    if args.trends:
        if args.category is None:
            print("error: --trends requires --category", file=sys.stderr)
            return EXIT_ERROR
        trend_corpus = _load_trend_corpus(args.trends, args.category)

    report = run_audit(
        snapshot,
        descriptor=descriptor,
        reference=reference,
        trend_corpus=trend_corpus,
        trend_category=args.category,
        timestamp=args.timestamp,
        contrast_profile="strict" if args.strict_contrast else "flat",
    )

    payload = report.to_dict()
    if args.diff_against:
        previous = report_from_dict(json.loads(Path(args.diff_against).read_text(encoding="utf-8")))
        payload["changes"] = diff_reports(previous, report).to_dict()

    json_text = json.dumps(payload, indent=2) + "\n"
    html_text = render_accessible_html(report, by_element=args.group_by_element)

    if args.out:
        out = Path(args.out)
        if args.format == "both":
            out.with_suffix(".json").write_text(json_text, encoding="utf-8")
            out.with_suffix(".html").write_text(html_text, encoding="utf-8")
        elif args.format == "html":
            out.write_text(html_text, encoding="utf-8")
        else:
            out.write_text(json_text, encoding="utf-8")
    else:
        sys.stdout.write(html_text if args.format == "html" else json_text)

    return EXIT_ISSUES if report.total_issues > 0 else EXIT_CLEAN


def _cmd_trends_build(args: argparse.Namespace) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return EXIT_ERROR
    sites = sorted(directory.glob("*.snapshot.json"))
    if not sites:
        sites = sorted(p for p in directory.glob("*.json") if p.name != "manifest.json")
    if not sites:
        print(f"error: no snapshot JSON files in {directory}", file=sys.stderr)
        return EXIT_ERROR
    for site in sites:
        load_snapshot(site, kind="snapshot")  # validate before listing
    out = Path(args.out)
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    captured = (
        datetime.datetime.fromtimestamp(int(epoch), datetime.timezone.utc).date()
        if epoch
        else datetime.date.today()
    )
    manifest = {
        "category": args.category.value,
        "sites": [os.path.relpath(site, out.parent or Path(".")) for site in sites],
        "captured": captured.isoformat(),
    }
    out.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    print(f"wrote manifest for {len(sites)} sites to {out}", file=sys.stderr)
    return EXIT_CLEAN


def _cmd_diff(args: argparse.Namespace) -> int:
    before = report_from_dict(json.loads(Path(args.before).read_text(encoding="utf-8")))
    after = report_from_dict(json.loads(Path(args.after).read_text(encoding="utf-8")))
    patch = _parse_css_patch(args.patch) if args.patch else None
    summary = diff_reports(before, after, patch)
    sys.stdout.write(summary.to_json())
    return EXIT_CLEAN


def _cmd_patch(args: argparse.Namespace) -> int:
    snapshot = load_snapshot(args.input, "static")
    patch = _parse_css_patch(args.apply)
    patched = apply_css_patch(snapshot, patch)
    Path(args.out).write_text(
        json.dumps(snapshot_to_dict(patched), indent=2) + "\n", encoding="utf-8"
    )
    print(f"wrote patched snapshot to {args.out}", file=sys.stderr)
    return EXIT_CLEAN


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0

    try:
        if args.command == "audit":
            return _cmd_audit(args)
        if args.command == "trends":
            return _cmd_trends_build(args)
        if args.command == "diff":
            return _cmd_diff(args)
        if args.command == "patch":
            return _cmd_patch(args)
    except (DesignlintError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    parser.error(f"unknown command {args.command!r}")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
