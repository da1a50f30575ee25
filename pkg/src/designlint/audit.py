"""Audit orchestration: run every check on a snapshot and assemble the report."""

from __future__ import annotations

import hashlib
import json

from .checks.color import (
    check_contrast,
    check_saturated_background,
    harmony_findings,
    suggest_harmony,
    summarize_color_scheme,
)
from .checks.layout import (
    check_spacing,
    check_spatial_alignment,
    check_textual_alignment,
    find_alignment_groups,
)
from .checks.text import (
    BODY_MIN_FONT_PX,
    LINE_MAX_CHARS,
    LINE_MIN_CHARS,
    TITLE_MIN_FONT_PX,
    check_font_family,
    check_font_size,
    check_line_length,
    check_line_spacing,
    classify_roles,
)
from .comparison import (
    SiteSummary,
    TrendCategory,
    aggregate_trends,
    compare_with_reference,
    summarize_site,
)
from .descriptor import Descriptor
from .findings import Finding
from .groups import group_elements
from .model import PageSnapshot, snapshot_to_dict
from .ocr import match_elements_to_lines
from .report import AuditReport, RunMeta, assemble_report


def input_hash(snapshot: PageSnapshot) -> str:
    canonical = json.dumps(snapshot_to_dict(snapshot), sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def run_checks(
    snapshot: PageSnapshot, descriptor: Descriptor, contrast_profile: str = "flat"
) -> list[Finding]:
    """All per-group checks (everything except the holistic harmony entry)."""
    groups = group_elements(snapshot)
    roles = classify_roles(groups, snapshot)
    matches = match_elements_to_lines(snapshot) if snapshot.ocr_lines else None

    findings: list[Finding] = []
    findings += check_font_size(groups, roles)
    findings += check_font_family(groups, roles, descriptor)
    findings += check_line_length(groups, roles, snapshot, matches)
    findings += check_line_spacing(groups, roles)
    findings += check_spacing(snapshot, groups)
    alignment = find_alignment_groups(snapshot)
    findings += check_spatial_alignment(alignment, groups, snapshot)
    findings += check_textual_alignment(groups, roles)
    findings += check_contrast(groups, snapshot, contrast_profile)
    return findings


def guideline_section(summary: SiteSummary) -> dict:
    """The guideline-based comparison: the site's common values vs the minimums."""
    notes: list[str] = []
    values: dict[str, float | None] = {
        "title_font_px": summary.modal_title_font_px,
        "body_font_px": summary.modal_body_font_px,
        "margin_px": summary.modal_margin_px,
        "padding_px": summary.modal_padding_px,
        "line_length_chars": summary.line_length_stats[0] if summary.line_length_stats else None,
    }
    if summary.modal_title_font_px is not None:
        verdict = (
            "meets" if summary.modal_title_font_px >= TITLE_MIN_FONT_PX else "is below"
        )
        notes.append(
            f"Your most common title font size is {summary.modal_title_font_px:g}px, which "
            f"{verdict} the {TITLE_MIN_FONT_PX:g}px guideline minimum."
        )
    if summary.modal_body_font_px is not None:
        verdict = "meets" if summary.modal_body_font_px >= BODY_MIN_FONT_PX else "is below"
        notes.append(
            f"Your most common body font size is {summary.modal_body_font_px:g}px, which "
            f"{verdict} the {BODY_MIN_FONT_PX:g}px guideline minimum."
        )
    if summary.line_length_stats is not None:
        median = summary.line_length_stats[0]
        if median > LINE_MAX_CHARS:
            verdict = f"is above the {LINE_MIN_CHARS}-{LINE_MAX_CHARS} character band"
        elif median < LINE_MIN_CHARS:
            verdict = f"is below the {LINE_MIN_CHARS}-{LINE_MAX_CHARS} character band"
        else:
            verdict = f"sits inside the {LINE_MIN_CHARS}-{LINE_MAX_CHARS} character band"
        notes.append(f"Your median body line is {median:g} characters, which {verdict}.")
    if summary.family_frequencies:
        top = next(iter(summary.family_frequencies))
        notes.append(f"The most used font family is {top}.")
    if summary.contrast_failures:
        tags = ", ".join(sorted({tag for tag, _ in summary.contrast_failures}))
        notes.append(f"Text in the {tags} tag(s) falls below the recommended contrast.")
    return {"values": values, "notes": notes}


def run_audit(
    snapshot: PageSnapshot,
    *,
    descriptor: Descriptor | None = None,
    reference: PageSnapshot | None = None,
    trend_corpus: list[PageSnapshot] | None = None,
    trend_category: TrendCategory | None = None,
    timestamp: str | None = None,
    contrast_profile: str = "flat",
) -> AuditReport:
    """The full pipeline: checks, harmony, comparisons, report assembly."""
    descriptor = descriptor or Descriptor(mode="offline")
    groups = group_elements(snapshot)

    findings = run_checks(snapshot, descriptor, contrast_profile)
    scheme = summarize_color_scheme(snapshot, descriptor)
    flags = check_saturated_background(groups, snapshot)
    harmony = suggest_harmony(snapshot, groups, descriptor, scheme)
    findings += harmony_findings(flags, scheme, harmony)

    summary = summarize_site(snapshot, descriptor)
    comparison: dict = {"guideline": guideline_section(summary)}
    if reference is not None:
        comparison["reference"] = compare_with_reference(
            summary, reference, descriptor
        ).to_dict()
    if trend_corpus is not None and trend_category is not None:
        comparison["trend"] = aggregate_trends(
            trend_corpus, trend_category, descriptor
        ).to_dict()

    doc_order = {node.id: i for i, node in enumerate(snapshot.iter_nodes())}
    meta = RunMeta(
        source_id=snapshot.source_id,
        input_hash=input_hash(snapshot),
        capture_mode=snapshot.capture_mode.value,
        descriptor="remote" if descriptor.remote_enabled else "deterministic",
        timestamp=timestamp,
    )
    return assemble_report(
        findings,
        meta,
        groups=groups,
        doc_order=doc_order,
        comparison=comparison,
        harmony=harmony,
    )
