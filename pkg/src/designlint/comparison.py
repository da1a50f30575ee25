"""Design comparison: site summaries, reference flagging, corpus trends."""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from enum import Enum

from .checks.color import summarize_color_scheme
from .checks.layout import (
    ATOMIC_TAGS,
    CONTAINER_TAGS,
    AlignmentKind,
    find_alignment_groups,
)
from .checks.text import TextRole, classify_roles, element_line_texts
from .color import RECOMMENDED_LC, apca_lc, composite_over, effective_background
from .descriptor import Descriptor
from .errors import EmptyCorpusError
from .groups import group_elements
from .model import PageSnapshot, visible_elements
from .ocr import MatchResult, match_elements_to_lines


class TrendCategory(str, Enum):
    BLOG = "blog"
    TUTORIAL = "tutorial"
    PERSONAL_WEBSITE = "personal_website"
    ORGANIZATION_WEBSITE = "organization_website"
    NEWS_MAGAZINE = "news_magazine"


@dataclass
class SiteSummary:
    """Most common values per audited metric for one site."""

    source_id: str
    modal_title_font_px: float | None
    modal_body_font_px: float | None
    family_frequencies: dict[str, int]
    line_length_stats: tuple[float, float, float] | None  # (median, p10, p90)
    modal_margin_px: float | None
    modal_padding_px: float | None
    alignment_counts: dict[str, int]
    contrast_failures: list[tuple[str, float]]  # (element tag, Lc)
    scheme: dict[str, list[dict]]


def _modal(values: list[float]) -> float | None:
    """Most frequent value; the smaller value wins ties."""
    if not values:
        return None
    counts: dict[float, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return max(counts.items(), key=lambda kv: (kv[1], -kv[0]))[0]


def _nearest_rank(sorted_values: list[float], percent: float) -> float:
    idx = max(0, min(len(sorted_values) - 1, int(percent / 100 * len(sorted_values))))
    return sorted_values[idx]


def summarize_site(
    snapshot: PageSnapshot, descriptor: Descriptor | None = None
) -> SiteSummary:
    """Modal and statistical values for a site, deterministic tie-breaks."""
    descriptor = descriptor or Descriptor(mode="offline")
    groups = group_elements(snapshot)
    roles = classify_roles(groups, snapshot)
    index = snapshot.node_index()

    title_sizes: list[float] = []
    body_sizes: list[float] = []
    families: dict[str, int] = {}
    for group in groups:
        role = roles.get(group.group_key)
        if role is None:
            continue
        sizes = [index[m].style.font_size_px for m in group.member_ids if index[m].text]
        if role is TextRole.TITLE:
            title_sizes.extend(sizes)
        elif role is TextRole.BODY:
            body_sizes.extend(sizes)
        first_family = (group.shared_style.font_families or ("(unset)",))[0]
        families[first_family] = families.get(first_family, 0) + len(sizes)

    matches: MatchResult | None = (
        match_elements_to_lines(snapshot) if snapshot.ocr_lines else None
    )
    line_lengths: list[float] = []
    for group in groups:
        if roles.get(group.group_key) is not TextRole.BODY:
            continue
        for member_id in group.member_ids:
            lines = element_line_texts(index[member_id], matches)
            if lines:
                line_lengths.extend(float(len(" ".join(l.split()))) for l in lines)
    if line_lengths:
        ordered = sorted(line_lengths)
        line_stats = (
            float(statistics.median(ordered)),
            _nearest_rank(ordered, 10),
            _nearest_rank(ordered, 90),
        )
    else:
        line_stats = None

    margins: list[float] = []
    paddings: list[float] = []
    for element in visible_elements(snapshot):
        if element.tag in ATOMIC_TAGS:
            margins.extend(element.style.margin.sides())
        if element.tag in CONTAINER_TAGS:
            paddings.extend(element.style.padding.sides())

    alignment = find_alignment_groups(snapshot)
    alignment_counts = {kind.value: len(alignment[kind]) for kind in AlignmentKind}

    contrast_failures: list[tuple[str, float]] = []
    for group in groups:
        if not group.has_text():
            continue
        worst: float | None = None
        for member_id in group.member_ids:
            element = index[member_id]
            if not element.text:
                continue
            bg = effective_background(element, snapshot)
            lc = apca_lc(composite_over(element.style.color, bg), bg)
            if worst is None or abs(lc) < abs(worst):
                worst = lc
        if worst is not None and abs(worst) < RECOMMENDED_LC:
            contrast_failures.append((group.tag, round(worst, 1)))

    scheme = summarize_color_scheme(snapshot, descriptor)
    return SiteSummary(
        source_id=snapshot.source_id,
        modal_title_font_px=_modal(title_sizes),
        modal_body_font_px=_modal(body_sizes),
        family_frequencies=dict(sorted(families.items(), key=lambda kv: (-kv[1], kv[0]))),
        line_length_stats=line_stats,
        modal_margin_px=_modal(margins),
        modal_padding_px=_modal(paddings),
        alignment_counts=alignment_counts,
        contrast_failures=contrast_failures,
        scheme=scheme.scheme,
    )


_NUMERIC_METRICS = (
    ("title_font_px", "modal_title_font_px"),
    ("body_font_px", "modal_body_font_px"),
    ("margin_px", "modal_margin_px"),
    ("padding_px", "modal_padding_px"),
)


@dataclass
class ReferenceComparison:
    """How the audited site relates to a user-chosen reference site."""

    reference_source: str
    reference_values: dict[str, float | None]
    reference_violations: dict[str, list[str]]  # category value -> element tags
    deltas: dict[str, float | None]  # mine - reference

    def to_dict(self) -> dict:
        return {
            "reference_source": self.reference_source,
            "reference_values": self.reference_values,
            "reference_violations": self.reference_violations,
            "deltas": self.deltas,
        }


def compare_with_reference(
    mine: SiteSummary,
    ref_snapshot: PageSnapshot,
    descriptor: Descriptor | None = None,
) -> ReferenceComparison:
    """Summarize and audit the reference; report its values, its guideline
    violations by element type, and deltas against this site.

    Reference values are reported for context only; they are never copied
    into fix suggestions.
    """
    from .audit import run_checks  # late import; audit orchestrates checks

    descriptor = descriptor or Descriptor(mode="offline")
    ref_summary = summarize_site(ref_snapshot, descriptor)
    findings = run_checks(ref_snapshot, descriptor)

    violations: dict[str, list[str]] = {}
    from .findings import DesignIssue

    for finding in findings:
        if isinstance(finding, DesignIssue):
            tags = violations.setdefault(finding.category.value, [])
            tag = finding.group_key.split(".")[0].split(":")[0] or finding.group_key
            if tag not in tags:
                tags.append(tag)

    reference_values: dict[str, float | None] = {}
    deltas: dict[str, float | None] = {}
    for metric, attr in _NUMERIC_METRICS:
        ref_value = getattr(ref_summary, attr)
        my_value = getattr(mine, attr)
        reference_values[metric] = ref_value
        deltas[metric] = (
            round(my_value - ref_value, 2)
            if ref_value is not None and my_value is not None
            else None
        )
    return ReferenceComparison(
        reference_source=ref_summary.source_id,
        reference_values=reference_values,
        reference_violations=violations,
        deltas=deltas,
    )


@dataclass
class MetricTrend:
    modal: float
    range: tuple[float, float]  # (p10, p90) of per-site modal values
    frequency: dict[float, int]  # value -> site count


@dataclass
class TrendProfile:
    """Aggregated design trends over a category corpus, one vote per site."""

    category: TrendCategory
    n_sites: int
    metrics: dict[str, MetricTrend]
    top_families: list[tuple[str, int]]
    top_colors: list[tuple[str, int]]

    def to_dict(self) -> dict:
        return {
            "category": self.category.value,
            "n_sites": self.n_sites,
            "metrics": {
                name: {
                    "modal": t.modal,
                    "range": list(t.range),
                    "frequency": {str(k): v for k, v in sorted(t.frequency.items())},
                }
                for name, t in sorted(self.metrics.items())
            },
            "top_families": [list(pair) for pair in self.top_families],
            "top_colors": [list(pair) for pair in self.top_colors],
        }


def aggregate_trends(
    corpus: list[PageSnapshot],
    category: TrendCategory,
    descriptor: Descriptor | None = None,
) -> TrendProfile:
    """Pool per-site modal values; every site votes once per metric."""
    if not corpus:
        raise EmptyCorpusError("trend corpus is empty")
    descriptor = descriptor or Descriptor(mode="offline")
    summaries = [summarize_site(snapshot, descriptor) for snapshot in corpus]

    metrics: dict[str, MetricTrend] = {}
    for metric, attr in _NUMERIC_METRICS + (("line_length_chars", None),):
        votes: list[float] = []
        for summary in summaries:
            if metric == "line_length_chars":
                value = summary.line_length_stats[0] if summary.line_length_stats else None
            else:
                value = getattr(summary, attr)
            if value is not None:
                votes.append(value)
        if not votes:
            continue
        frequency: dict[float, int] = {}
        for v in votes:
            frequency[v] = frequency.get(v, 0) + 1
        ordered = sorted(votes)
        metrics[metric] = MetricTrend(
            modal=max(frequency.items(), key=lambda kv: (kv[1], -kv[0]))[0],
            range=(_nearest_rank(ordered, 10), _nearest_rank(ordered, 90)),
            frequency=frequency,
        )

    family_sites: dict[str, int] = {}
    for summary in summaries:
        for family in set(summary.family_frequencies):
            family_sites[family] = family_sites.get(family, 0) + 1
    top_families = sorted(family_sites.items(), key=lambda kv: (-kv[1], kv[0]))[:10]

    color_sites: dict[str, int] = {}
    for summary in summaries:
        names = {
            entry["name"]
            for bucket in ("background", "text", "border")
            for entry in summary.scheme.get(bucket, [])
        }
        for name in names:
            color_sites[name] = color_sites.get(name, 0) + 1
    top_colors = sorted(color_sites.items(), key=lambda kv: (-kv[1], kv[0]))[:10]

    return TrendProfile(
        category=category,
        n_sites=len(corpus),
        metrics=metrics,
        top_families=top_families,
        top_colors=top_colors,
    )
