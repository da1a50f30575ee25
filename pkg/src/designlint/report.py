"""Report assembly, JSON/HTML rendering, and run-to-run diffing."""

from __future__ import annotations

import html as html_escape
import json
from dataclasses import dataclass, field
from typing import Any

from .errors import MismatchedSourceError
from .findings import (
    Category,
    DesignIssue,
    DesignPass,
    Finding,
    Severity,
    SkippedCheck,
)
from .checks.color import HarmonySuggestion
from .groups import StyleGroup
from .guidelines import GUIDELINES
from .model import ComputedStyle

TOOL_VERSION = "0.1.0"

#: Categories whose suggestions are alternatives (apply one), not a set.
ALTERNATIVE_SUGGESTION_CATEGORIES = frozenset({Category.COLOR_CONTRAST})


@dataclass
class RunMeta:
    source_id: str
    input_hash: str
    capture_mode: str
    descriptor: str
    version: str = TOOL_VERSION
    timestamp: str | None = None  # opt-in: reports stay byte-reproducible by default

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "source": self.source_id,
            "input_hash": self.input_hash,
            "capture_mode": self.capture_mode,
            "descriptor": self.descriptor,
            "version": self.version,
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out


@dataclass
class AuditReport:
    run_meta: RunMeta
    issues: list[DesignIssue] = field(default_factory=list)
    passes: list[DesignPass] = field(default_factory=list)
    skipped: list[SkippedCheck] = field(default_factory=list)
    groups: list[dict] = field(default_factory=list)
    comparison: dict | None = None
    harmony: dict | None = None

    @property
    def counts(self) -> dict[str, dict[str, int]]:
        out = {
            category.value: {"issues": 0, "passes": 0}
            for category in Category
        }
        for issue in self.issues:
            out[issue.category.value]["issues"] += 1
        for ok in self.passes:
            out[ok.category.value]["passes"] += 1
        return out

    @property
    def total_issues(self) -> int:
        return len(self.issues)

    def to_dict(self) -> dict:
        return {
            "source": self.run_meta.source_id,
            "summary": {
                "total_issues": self.total_issues,
                "total_passes": len(self.passes),
                "counts": self.counts,
            },
            "issues": [_issue_to_dict(i) for i in self.issues],
            "passes": [_pass_to_dict(p) for p in self.passes],
            "skipped": [{"category": s.category.value, "reason": s.reason} for s in self.skipped],
            "groups": self.groups,
            "comparison": self.comparison,
            "harmony": self.harmony,
            "run_meta": self.run_meta.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _issue_to_dict(issue: DesignIssue) -> dict:
    out: dict[str, Any] = {
        "category": issue.category.value,
        "group_key": issue.group_key,
        "member_ids": list(issue.member_ids),
        "explanation": issue.explanation,
        "guideline_ref": issue.guideline_ref,
        "severity": issue.severity.value,
        "selector": issue.selector,
        "suggestions": [
            {"property": s.css_property, "value": s.new_value, "rationale": s.rationale}
            for s in issue.suggestions
        ],
    }
    if issue.skipped_reason is not None:
        out["skipped_reason"] = issue.skipped_reason
    return out


def _pass_to_dict(ok: DesignPass) -> dict:
    return {
        "category": ok.category.value,
        "group_key": ok.group_key,
        "member_ids": list(ok.member_ids),
        "explanation": ok.explanation,
        "guideline_ref": ok.guideline_ref,
    }


def style_css_map(style: ComputedStyle) -> dict[str, str]:
    """The audited style as CSS property -> value strings (for diffs and HTML)."""
    out = {
        "font-size": f"{style.font_size_px:g}px",
        "font-family": ", ".join(style.font_families),
        "color": style.color.css(),
        "background-color": style.background_color.css(),
        "text-align": style.text_align,
        "margin": " ".join(f"{v:g}px" for v in style.margin.sides()),
        "padding": " ".join(f"{v:g}px" for v in style.padding.sides()),
    }
    if style.line_height_px is not None:
        out["line-height"] = f"{style.line_height_px:g}px"
    if style.border_color is not None:
        out["border-color"] = style.border_color.css()
    return out


def group_entries(groups: list[StyleGroup]) -> list[dict]:
    return [
        {
            "group_key": g.group_key,
            "selector": g.selector,
            "member_ids": list(g.member_ids),
            "sample_text": g.sample_text,
            "style": style_css_map(g.shared_style),
        }
        for g in groups
    ]


def assemble_report(
    findings: list[Finding],
    run_meta: RunMeta,
    *,
    groups: list[StyleGroup] | None = None,
    doc_order: dict[str, int] | None = None,
    comparison: dict | None = None,
    harmony: HarmonySuggestion | None = None,
) -> AuditReport:
    """Deterministic assembly: categories in enum order, then document order
    of each finding's first member."""
    doc_order = doc_order or {}
    category_rank = {category: i for i, category in enumerate(Category)}

    def rank(finding) -> tuple:
        members = getattr(finding, "member_ids", [])
        first = min((doc_order.get(m, 1 << 30) for m in members), default=1 << 30)
        return (category_rank[finding.category], first, getattr(finding, "group_key", ""))

    issues = sorted((f for f in findings if isinstance(f, DesignIssue)), key=rank)
    passes = sorted((f for f in findings if isinstance(f, DesignPass)), key=rank)
    skipped = sorted(
        (f for f in findings if isinstance(f, SkippedCheck)),
        key=lambda s: category_rank[s.category],
    )
    return AuditReport(
        run_meta=run_meta,
        issues=issues,
        passes=passes,
        skipped=skipped,
        groups=group_entries(groups) if groups else [],
        comparison=comparison,
        harmony=_harmony_to_dict(harmony) if harmony is not None else None,
    )


def _harmony_to_dict(harmony: HarmonySuggestion) -> dict:
    return {
        "scheme_summary": harmony.scheme_summary,
        "rationale": harmony.rationale,
        "mode": harmony.palette.mode.value,
        "seed": harmony.palette.seed.css(),
        "palette": {role: color.css() for role, color in harmony.palette.roles.items()},
        "assignments": {
            key: [
                {"property": a.css_property, "value": a.color.css(), "role": a.role}
                for a in entries
            ]
            for key, entries in harmony.assignments.items()
        },
    }


def report_from_dict(data: dict) -> AuditReport:
    """Rebuild a report from its JSON form (enough for diffing and rendering)."""
    issues = [
        DesignIssue(
            category=Category(i["category"]),
            group_key=i["group_key"],
            member_ids=list(i.get("member_ids", [])),
            explanation=i.get("explanation", ""),
            guideline_ref=i.get("guideline_ref", ""),
            suggestions=[
                _suggestion_from_dict(s) for s in i.get("suggestions", [])
            ],
            severity=Severity(i.get("severity", "recommended")),
            selector=i.get("selector", ""),
            skipped_reason=i.get("skipped_reason"),
        )
        for i in data.get("issues", [])
    ]
    passes = [
        DesignPass(
            category=Category(p["category"]),
            group_key=p["group_key"],
            member_ids=list(p.get("member_ids", [])),
            explanation=p.get("explanation", ""),
            guideline_ref=p.get("guideline_ref", ""),
        )
        for p in data.get("passes", [])
    ]
    skipped = [
        SkippedCheck(Category(s["category"]), s.get("reason", ""))
        for s in data.get("skipped", [])
    ]
    meta = data.get("run_meta", {})
    return AuditReport(
        run_meta=RunMeta(
            source_id=meta.get("source", data.get("source", "")),
            input_hash=meta.get("input_hash", ""),
            capture_mode=meta.get("capture_mode", "static"),
            descriptor=meta.get("descriptor", "deterministic"),
            version=meta.get("version", TOOL_VERSION),
            timestamp=meta.get("timestamp"),
        ),
        issues=issues,
        passes=passes,
        skipped=skipped,
        groups=data.get("groups", []),
        comparison=data.get("comparison"),
        harmony=data.get("harmony"),
    )


def _suggestion_from_dict(s: dict):
    from .findings import Suggestion

    return Suggestion(s["property"], s["value"], s.get("rationale", ""))


def build_patch(
    report: AuditReport, categories: tuple[Category, ...] | None = None
) -> dict[str, dict[str, str]]:
    """Turn a report's suggestions into a CSS patch (selector -> declarations).

    Alternative suggestions (contrast) contribute only their preferred first
    entry; cumulative suggestions apply in full. The holistic harmony entry is
    excluded: it is a design decision, not an auto-fix.
    """
    patch: dict[str, dict[str, str]] = {}
    for issue in report.issues:
        if categories is not None and issue.category not in categories:
            continue
        if issue.category is Category.COLOR_HARMONY or not issue.selector:
            continue
        chosen = (
            issue.suggestions[:1]
            if issue.category in ALTERNATIVE_SUGGESTION_CATEGORIES
            else issue.suggestions
        )
        for suggestion in chosen:
            patch.setdefault(issue.selector, {})[suggestion.css_property] = suggestion.new_value
    return patch


@dataclass
class ChangeSummary:
    """What changed between two audits of the same source."""

    resolved: list[tuple[str, str]]  # (category, group_key)
    introduced: list[tuple[str, str]]
    unchanged_count: int
    css_diff: list[tuple[str, str, str | None, str]]  # (selector, property, old, new)

    def to_dict(self) -> dict:
        return {
            "resolved": [list(pair) for pair in self.resolved],
            "introduced": [list(pair) for pair in self.introduced],
            "unchanged_count": self.unchanged_count,
            "css_diff": [list(entry) for entry in self.css_diff],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def diff_reports(
    before: AuditReport,
    after: AuditReport,
    css_patch: dict[str, dict[str, str]] | None = None,
) -> ChangeSummary:
    """Issues resolved and introduced between runs, matched by (category, group)."""
    if before.run_meta.source_id != after.run_meta.source_id:
        raise MismatchedSourceError(
            f"reports audit different sources: {before.run_meta.source_id!r} vs "
            f"{after.run_meta.source_id!r}"
        )
    before_keys = {(i.category.value, i.group_key) for i in before.issues}
    after_keys = {(i.category.value, i.group_key) for i in after.issues}
    category_rank = {category.value: i for i, category in enumerate(Category)}

    def ordered(keys: set[tuple[str, str]]) -> list[tuple[str, str]]:
        return sorted(keys, key=lambda pair: (category_rank[pair[0]], pair[1]))

    css_diff: list[tuple[str, str, str | None, str]] = []
    if css_patch:
        old_styles = {g["selector"]: g.get("style", {}) for g in before.groups}
        for selector, declarations in css_patch.items():
            for prop, new_value in declarations.items():
                old = old_styles.get(selector, {}).get(prop)
                css_diff.append((selector, prop, old, new_value))
    return ChangeSummary(
        resolved=ordered(before_keys - after_keys),
        introduced=ordered(after_keys - before_keys),
        unchanged_count=len(before_keys & after_keys),
        css_diff=css_diff,
    )


# --- accessible HTML rendering ----------------------------------------------

_HTML_STYLE = """
body { font-family: Arial, sans-serif; margin: 24px; line-height: 1.5; }
h1 { font-size: 24px; } h2 { font-size: 20px; } h3 { font-size: 16px; }
section { margin-bottom: 24px; }
.finding { border: 1px solid #767676; padding: 12px; margin-bottom: 12px; }
.sample { color: #222222; font-style: italic; }
"""


def _esc(text: str) -> str:
    return html_escape.escape(str(text), quote=True)


def render_accessible_html(report: AuditReport, by_element: bool = False) -> str:
    """Screen-reader-first rendering: one h1, h2 per section, h3 per finding,
    all counts in text, no scripts or event handlers, inline styles only."""
    sample_by_group = {g["group_key"]: g.get("sample_text") for g in report.groups}
    out: list[str] = []
    out.append("<!DOCTYPE html>")
    out.append('<html lang="en"><head><meta charset="utf-8">')
    out.append(f"<title>Design audit: {_esc(report.run_meta.source_id)}</title>")
    out.append(f"<style>{_HTML_STYLE}</style></head><body>")
    out.append(f"<h1>Design audit of {_esc(report.run_meta.source_id)}</h1>")
    counts = report.counts
    out.append(
        f"<p>{report.total_issues} issues and {len(report.passes)} passes across "
        f"{len(Category)} design categories.</p>"
    )
    out.append("<section aria-label='Issue summary'><ul>")
    for category in Category:
        c = counts[category.value]
        out.append(
            f"<li>{_esc(_title(category.value))}: {c['issues']} issues, "
            f"{c['passes']} passes</li>"
        )
    out.append("</ul></section>")

    if report.comparison:
        out.append(_render_comparison(report.comparison))
    if report.harmony:
        out.append(_render_harmony(report.harmony))

    if by_element:
        out.extend(_render_by_element(report, sample_by_group))
    else:
        out.extend(_render_by_category(report, sample_by_group))

    out.append("</body></html>")
    return "\n".join(out)


def _title(value: str) -> str:
    return value.replace("_", " ").capitalize()


def _render_finding(entry: dict, sample: str | None, is_issue: bool) -> list[str]:
    out = [f"<div class='finding'><h3>{_esc(entry['group_key'])}</h3>"]
    if sample:
        out.append(f"<p class='sample'>HTML text: {_esc(sample)}</p>")
    label = "Issue" if is_issue else "Pass"
    severity = f" ({_esc(entry.get('severity', ''))})" if is_issue else ""
    out.append(f"<p>{label}{severity}: {_esc(entry['explanation'])}</p>")
    if entry.get("member_ids"):
        out.append(f"<p>Elements: {_esc(', '.join(entry['member_ids']))}</p>")
    if is_issue and entry.get("suggestions"):
        out.append("<p>Suggested CSS changes:</p><ul>")
        for s in entry["suggestions"]:
            rationale = f" to {_esc(s['rationale'])}" if s.get("rationale") else ""
            out.append(
                f"<li><code>{_esc(s['property'])}: {_esc(s['value'])};</code>{rationale}</li>"
            )
        out.append("</ul>")
    out.append(f"<p>Guideline: {_esc(entry.get('guideline_ref', ''))}</p>")
    out.append("</div>")
    return out


def _render_by_category(report: AuditReport, samples: dict) -> list[str]:
    out = []
    skipped_by_category = {s.category: s.reason for s in report.skipped}
    counts = report.counts
    for category in Category:
        issues = [i for i in report.issues if i.category is category]
        passes = [p for p in report.passes if p.category is category]
        c = counts[category.value]
        out.append("<section>")
        out.append(f"<h2>{_esc(_title(category.value))}</h2>")
        guideline = GUIDELINES[category]
        out.append(f"<p>{_esc(guideline.summary)} (guideline {_esc(guideline.id)})</p>")
        if category in skipped_by_category:
            out.append(
                f"<p><strong>Skipped:</strong> {_esc(skipped_by_category[category])}</p>"
            )
        out.append(f"<p>{c['issues']} issues, {c['passes']} passes.</p>")
        for issue in issues:
            out.extend(
                _render_finding(_issue_to_dict(issue), samples.get(issue.group_key), True)
            )
        if passes:
            out.append(f"<details><summary>Passes ({len(passes)})</summary>")
            for ok in passes:
                out.extend(
                    _render_finding(_pass_to_dict(ok), samples.get(ok.group_key), False)
                )
            out.append("</details>")
        out.append("</section>")
    return out


def _render_by_element(report: AuditReport, samples: dict) -> list[str]:
    """Alternate view: findings grouped per style group instead of category."""
    by_group: dict[str, list[tuple[bool, dict]]] = {}
    for issue in report.issues:
        by_group.setdefault(issue.group_key, []).append((True, _issue_to_dict(issue)))
    for ok in report.passes:
        by_group.setdefault(ok.group_key, []).append((False, _pass_to_dict(ok)))
    out = []
    for group_key, entries in by_group.items():
        out.append("<section>")
        out.append(f"<h2>Group {_esc(group_key)}</h2>")
        n_issues = sum(1 for is_issue, _ in entries if is_issue)
        out.append(f"<p>{n_issues} issues, {len(entries) - n_issues} passes.</p>")
        for is_issue, entry in entries:
            out.extend(_render_finding(entry, samples.get(group_key), is_issue))
        out.append("</section>")
    return out


def _render_comparison(comparison: dict) -> str:
    out = ["<section><h2>Design comparison</h2>"]
    guideline = comparison.get("guideline")
    if guideline:
        out.append("<p>Against the guidelines:</p><ul>")
        for note in guideline.get("notes", []):
            out.append(f"<li>{_esc(note)}</li>")
        out.append("</ul>")
    reference = comparison.get("reference")
    if reference:
        out.append(
            f"<p>Reference website: {_esc(reference.get('reference_source', ''))}</p><ul>"
        )
        for metric, value in (reference.get("reference_values") or {}).items():
            if value is not None:
                out.append(f"<li>Reference {_esc(_title(metric))}: {value}</li>")
        for category, tags in (reference.get("reference_violations") or {}).items():
            out.append(
                f"<li>The reference website violates the {_esc(_title(category))} guideline "
                f"in the {_esc(', '.join(tags))} tag(s).</li>"
            )
        out.append("</ul>")
    trend = comparison.get("trend")
    if trend:
        out.append(
            f"<p>Trends across {trend.get('n_sites', 0)} {_esc(trend.get('category', ''))} "
            "sites:</p><ul>"
        )
        for metric, data in (trend.get("metrics") or {}).items():
            out.append(
                f"<li>{_esc(_title(metric))}: most often {data['modal']} "
                f"(range {data['range'][0]} to {data['range'][1]})</li>"
            )
        families = ", ".join(f"{name} ({n} sites)" for name, n in trend.get("top_families", [])[:5])
        if families:
            out.append(f"<li>Most common font families: {_esc(families)}</li>")
        out.append("</ul>")
    out.append("</section>")
    return "\n".join(out)


def _render_harmony(harmony: dict) -> str:
    out = ["<section><h2>Color harmony suggestion</h2>"]
    out.append(f"<p>{_esc(harmony.get('scheme_summary', ''))}</p>")
    out.append(f"<p>{_esc(harmony.get('rationale', ''))}</p>")
    out.append(
        f"<p>Suggested palette (mode: {_esc(harmony.get('mode', ''))}, seed "
        f"{_esc(harmony.get('seed', ''))}):</p><ul>"
    )
    for role, value in (harmony.get("palette") or {}).items():
        out.append(f"<li>{_esc(role)}: {_esc(value)}</li>")
    out.append("</ul>")
    assignments = harmony.get("assignments") or {}
    if assignments:
        out.append("<p>Where to apply the new colors:</p><ul>")
        for group_key, entries in assignments.items():
            changes = "; ".join(
                f"{e['property']}: {e['value']} ({e['role']})" for e in entries
            )
            out.append(f"<li>{_esc(group_key)}: {_esc(changes)}</li>")
        out.append("</ul>")
    out.append("</section>")
    return "\n".join(out)
