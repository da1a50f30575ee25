"""Text checks: font size, font family, line length and title breaks, line spacing."""

from __future__ import annotations

import math
import statistics
from enum import Enum

from ..descriptor import Descriptor, DescriptorKind, DescriptorRequest
from ..findings import Category, DesignIssue, DesignPass, Finding, Severity, SkippedCheck, Suggestion
from ..fonts import FamilyClass, SUGGESTED_SANS_STACK, classify_family
from ..groups import StyleGroup
from ..guidelines import guideline_ref
from ..model import ElementNode, PageSnapshot
from ..ocr import MatchResult

BODY_MIN_FONT_PX = 16.0
TITLE_MIN_FONT_PX = 20.0
LINE_SPACING_FACTOR = 1.5
LINE_MIN_CHARS = 50
LINE_MAX_CHARS = 75
#: Text at or above this multiple of the modal body size reads as a title.
TITLE_SCALE = 1.5
#: Span text this long behaves like body copy.
SPAN_BODY_CHARS = 20

TITLE_TAGS = frozenset({"h1", "h2", "h3", "h4", "h5", "h6"})
BODY_TAGS = frozenset({"p", "li", "td", "a", "label"})


class TextRole(str, Enum):
    TITLE = "title"
    BODY = "body"
    DECORATIVE = "decorative"
    OTHER = "other"


def _is_body_tagged(element: ElementNode) -> bool:
    if element.tag in BODY_TAGS:
        return True
    return element.tag == "span" and len(element.text or "") >= SPAN_BODY_CHARS


def modal_body_font_size(snapshot: PageSnapshot) -> float:
    """Most common font size among body-tagged text elements (smallest wins ties)."""
    sizes = [
        node.style.font_size_px
        for node in snapshot.iter_nodes()
        if node.text and _is_body_tagged(node)
    ]
    if not sizes:
        return 16.0
    counts: dict[float, int] = {}
    for size in sizes:
        counts[size] = counts.get(size, 0) + 1
    best = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))
    return best[0]


def classify_text_role(group: StyleGroup, snapshot: PageSnapshot,
                       modal_body_px: float | None = None) -> TextRole:
    """Title / body / decorative / other for a text-bearing group."""
    if modal_body_px is None:
        modal_body_px = modal_body_font_size(snapshot)
    if group.tag in TITLE_TAGS or group.shared_style.font_size_px >= TITLE_SCALE * modal_body_px:
        return TextRole.TITLE
    members = group.members(snapshot)
    if any(_is_body_tagged(m) for m in members):
        return TextRole.BODY
    verdict = classify_family(group.shared_style.font_families)
    if verdict.family_class is FamilyClass.DECORATIVE:
        return TextRole.DECORATIVE
    return TextRole.OTHER


def classify_roles(groups: list[StyleGroup], snapshot: PageSnapshot) -> dict[str, TextRole]:
    """Role per text-bearing group key."""
    modal = modal_body_font_size(snapshot)
    return {
        g.group_key: classify_text_role(g, snapshot, modal)
        for g in groups
        if g.has_text()
    }


def check_font_size(groups: list[StyleGroup], roles: dict[str, TextRole]) -> list[Finding]:
    """Body text below 16px and titles below 20px are illegible."""
    findings: list[Finding] = []
    ref = guideline_ref(Category.FONT_SIZE)
    for group in groups:
        role = roles.get(group.group_key)
        if role is None:
            continue
        size = group.shared_style.font_size_px
        minimum = {TextRole.BODY: BODY_MIN_FONT_PX, TextRole.TITLE: TITLE_MIN_FONT_PX}.get(role)
        if minimum is not None and size < minimum:
            findings.append(
                DesignIssue(
                    category=Category.FONT_SIZE,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=(
                        f"{role.value.capitalize()} text is {_fmt(size)}px, below the "
                        f"recommended minimum of {_fmt(minimum)}px."
                    ),
                    guideline_ref=ref,
                    suggestions=[
                        Suggestion("font-size", f"{_fmt(minimum)}px",
                                   f"meet the {_fmt(minimum)}px minimum for {role.value} text")
                    ],
                    severity=Severity.MUST_FIX,
                    selector=group.selector,
                )
            )
        else:
            detail = (
                f"{_fmt(size)}px meets the {_fmt(minimum)}px minimum for {role.value} text."
                if minimum is not None
                else f"No minimum size applies to {role.value} text."
            )
            findings.append(
                DesignPass(
                    category=Category.FONT_SIZE,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=detail,
                    guideline_ref=ref,
                )
            )
    return findings


def check_font_family(
    groups: list[StyleGroup],
    roles: dict[str, TextRole],
    descriptor: Descriptor,
) -> list[Finding]:
    """Serif or decorative faces on body/title text get a sans-serif suggestion."""
    text_groups = [g for g in groups if g.group_key in roles]
    review = descriptor.describe(
        DescriptorRequest(
            kind=DescriptorKind.FONT_REVIEW,
            payload={
                "groups": {g.group_key: list(g.shared_style.font_families) for g in text_groups}
            },
        )
    )
    findings: list[Finding] = []
    ref = guideline_ref(Category.FONT_FAMILY)
    for group in text_groups:
        role = roles[group.group_key]
        verdict = classify_family(group.shared_style.font_families)
        advice = review.details.get("issues", {}).get(group.group_key) or review.details.get(
            "passes", {}
        ).get(group.group_key, "")
        note = f" ({verdict.note})" if verdict.note else ""
        bad = (
            verdict.family_class in (FamilyClass.SERIF, FamilyClass.DECORATIVE)
            and role in (TextRole.BODY, TextRole.TITLE)
        )
        if bad:
            findings.append(
                DesignIssue(
                    category=Category.FONT_FAMILY,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=(
                        f"'{verdict.family}' is a {verdict.family_class.value} face on "
                        f"{role.value} text.{note} {advice}".strip()
                    ),
                    guideline_ref=ref,
                    suggestions=[
                        Suggestion("font-family", SUGGESTED_SANS_STACK,
                                   "sans-serif families read better on screens")
                    ],
                    selector=group.selector,
                )
            )
        else:
            findings.append(
                DesignPass(
                    category=Category.FONT_FAMILY,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=(
                        f"'{verdict.family}' ({verdict.family_class.value}) suits "
                        f"{role.value} text.{note} {advice}".strip()
                    ),
                    guideline_ref=ref,
                )
            )
    return findings


def element_line_texts(element: ElementNode, matches: MatchResult | None) -> list[str] | None:
    """Rendered line texts for an element, from OCR matches or native line boxes.

    With native geometry only, per-line text is estimated by splitting the
    element's text evenly across its line boxes.
    """
    if matches is not None:
        lines = matches.lines_for_element(element.id)
        if lines:
            return lines
    if element.line_boxes and element.text:
        count = len(element.line_boxes)
        text = element.text
        size = math.ceil(len(text) / count)
        return [text[i * size : (i + 1) * size] for i in range(count)]
    return None


def check_line_length(
    groups: list[StyleGroup],
    roles: dict[str, TextRole],
    snapshot: PageSnapshot,
    matches: MatchResult | None,
) -> list[Finding]:
    """Body lines outside 50-75 characters and wrapped titles."""
    has_line_info = matches is not None or any(
        node.line_boxes for node in snapshot.iter_nodes()
    )
    if not has_line_info:
        return [
            SkippedCheck(
                Category.LINE_LENGTH,
                "requires a rendered snapshot with OCR lines or native line boxes",
            )
        ]

    findings: list[Finding] = []
    ref = guideline_ref(Category.LINE_LENGTH)
    index = snapshot.node_index()
    for group in groups:
        role = roles.get(group.group_key)
        if role is None:
            continue
        if role not in (TextRole.TITLE, TextRole.BODY):
            findings.append(
                DesignPass(
                    category=Category.LINE_LENGTH,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=f"Line-length rules apply to body and title text, not {role.value} text.",
                    guideline_ref=ref,
                )
            )
            continue
        member_lines = {
            mid: element_line_texts(index[mid], matches) for mid in group.member_ids
        }
        known = {mid: lines for mid, lines in member_lines.items() if lines}
        if not known:
            findings.append(
                DesignPass(
                    category=Category.LINE_LENGTH,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation="No rendered line information for this group.",
                    guideline_ref=ref,
                )
            )
            continue

        if role is TextRole.TITLE:
            wrapped = [mid for mid, lines in known.items() if len(lines) > 1]
            if wrapped:
                width = _suggest_title_width(wrapped, index)
                findings.append(
                    DesignIssue(
                        category=Category.LINE_LENGTH,
                        group_key=group.group_key,
                        member_ids=wrapped,
                        explanation="Title text wraps onto multiple lines.",
                        guideline_ref=ref,
                        suggestions=[
                            Suggestion("width", width,
                                       "widen the container so the title fits one line")
                        ],
                        selector=group.selector,
                    )
                )
            else:
                findings.append(
                    DesignPass(
                        category=Category.LINE_LENGTH,
                        group_key=group.group_key,
                        member_ids=list(known),
                        explanation="Title fits on a single line.",
                        guideline_ref=ref,
                    )
                )
            continue

        if role is not TextRole.BODY:
            continue
        lengths = [len(" ".join(line.split())) for lines in known.values() for line in lines]
        median = statistics.median(lengths)
        multiline = any(len(lines) > 1 for lines in known.values())
        box = next((index[mid].box for mid in known if index[mid].box), None)
        if median > LINE_MAX_CHARS:
            value = f"{round(box.width * 60 / median)}px" if box else "60ch"
            findings.append(
                DesignIssue(
                    category=Category.LINE_LENGTH,
                    group_key=group.group_key,
                    member_ids=list(known),
                    explanation=(
                        f"Median line is {round(median)} characters, above the "
                        f"{LINE_MAX_CHARS}-character maximum for body text."
                    ),
                    guideline_ref=ref,
                    suggestions=[Suggestion("max-width", value, "shorten lines to roughly 60 characters")],
                    selector=group.selector,
                )
            )
        elif median < LINE_MIN_CHARS and multiline:
            value = f"{round(box.width * 60 / max(median, 1))}px" if box else "60ch"
            findings.append(
                DesignIssue(
                    category=Category.LINE_LENGTH,
                    group_key=group.group_key,
                    member_ids=list(known),
                    explanation=(
                        f"Median line is {round(median)} characters, below the "
                        f"{LINE_MIN_CHARS}-character minimum for wrapped body text."
                    ),
                    guideline_ref=ref,
                    suggestions=[Suggestion("width", value, "lengthen lines to roughly 60 characters")],
                    selector=group.selector,
                )
            )
        else:
            findings.append(
                DesignPass(
                    category=Category.LINE_LENGTH,
                    group_key=group.group_key,
                    member_ids=list(known),
                    explanation=f"Median line of {round(median)} characters is comfortable.",
                    guideline_ref=ref,
                )
            )
    return findings


def _suggest_title_width(member_ids: list[str], index: dict[str, ElementNode]) -> str:
    widths = []
    for mid in member_ids:
        node = index[mid]
        if node.line_boxes:
            widths.append(sum(b.width for b in node.line_boxes))
        elif node.box:
            widths.append(node.box.width * 2)
    if not widths:
        return "auto"
    return f"{math.ceil(max(widths)) + 2}px"


def check_line_spacing(groups: list[StyleGroup], roles: dict[str, TextRole]) -> list[Finding]:
    """Body text needs line height of at least 1.5x the font size."""
    findings: list[Finding] = []
    ref = guideline_ref(Category.LINE_SPACING)
    for group in groups:
        role = roles.get(group.group_key)
        if role is None:
            continue
        style = group.shared_style
        if role is not TextRole.BODY:
            findings.append(
                DesignPass(
                    category=Category.LINE_SPACING,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=f"Line-spacing minimum applies to body text, not {role.value} text.",
                    guideline_ref=ref,
                )
            )
            continue
        if style.line_height_px is None:
            findings.append(
                DesignPass(
                    category=Category.LINE_SPACING,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation="Line height unknown for this group; assuming the default.",
                    guideline_ref=ref,
                )
            )
            continue
        required = LINE_SPACING_FACTOR * style.font_size_px
        if style.line_height_px < required:
            findings.append(
                DesignIssue(
                    category=Category.LINE_SPACING,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=(
                        f"Line height {_fmt(style.line_height_px)}px is below "
                        f"{LINE_SPACING_FACTOR}x the {_fmt(style.font_size_px)}px font size "
                        f"({_fmt(required)}px)."
                    ),
                    guideline_ref=ref,
                    suggestions=[
                        Suggestion("line-height", str(LINE_SPACING_FACTOR),
                                   "give paragraph lines breathing room")
                    ],
                    selector=group.selector,
                )
            )
        else:
            findings.append(
                DesignPass(
                    category=Category.LINE_SPACING,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=(
                        f"Line height {_fmt(style.line_height_px)}px meets "
                        f"{LINE_SPACING_FACTOR}x the font size."
                    ),
                    guideline_ref=ref,
                )
            )
    return findings


def _fmt(value: float) -> str:
    return f"{value:g}"
