"""Layout checks: whitespace, spatial alignment groups, textual alignment."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..findings import Category, DesignIssue, DesignPass, Finding, SkippedCheck, Suggestion
from ..groups import StyleGroup
from ..guidelines import guideline_ref
from ..model import BoundingBox, CaptureMode, ElementNode, PageSnapshot, visible_elements
from .text import TextRole

MIN_CONTAINER_PADDING_PX = 24.0
MIN_SIBLING_MARGIN_PX = 8.0
#: Edge/center coordinates closer than this are considered aligned.
ALIGNMENT_THRESHOLD_PX = 5.0
#: Smallest anchor deviation worth flagging as a misalignment.
MIN_FLAGGED_DEVIATION_PX = 1.0

CONTAINER_TAGS = frozenset(
    {"div", "section", "article", "nav", "aside", "header", "footer", "main",
     "button", "input", "textarea"}
)
ATOMIC_TAGS = frozenset(
    {"p", "h1", "h2", "h3", "h4", "h5", "h6", "li", "a", "button", "input",
     "label", "img"}
)


class AlignmentKind(str, Enum):
    LEFT = "left"
    X_CENTER = "x_center"
    RIGHT = "right"
    TOP = "top"
    Y_CENTER = "y_center"
    BOTTOM = "bottom"


#: Kinds whose coordinate is horizontal (elements stack vertically).
HORIZONTAL_KINDS = (AlignmentKind.LEFT, AlignmentKind.X_CENTER, AlignmentKind.RIGHT)
VERTICAL_KINDS = (AlignmentKind.TOP, AlignmentKind.Y_CENTER, AlignmentKind.BOTTOM)


def alignment_coordinate(kind: AlignmentKind, box: BoundingBox) -> float:
    if kind is AlignmentKind.LEFT:
        return box.left
    if kind is AlignmentKind.X_CENTER:
        return box.x_center
    if kind is AlignmentKind.RIGHT:
        return box.right
    if kind is AlignmentKind.TOP:
        return box.top
    if kind is AlignmentKind.Y_CENTER:
        return box.y_center
    return box.bottom


@dataclass(frozen=True)
class AlignmentItem:
    """What alignment grouping needs to know about an element."""

    id: str
    box: BoundingBox
    text_align: str | None = None  # None for non-text elements


@dataclass
class AlignmentGroup:
    kind: AlignmentKind
    member_ids: list[str]
    anchor_value: float
    outliers: list[tuple[str, float]]  # (id, signed deviation from anchor)


def text_align_allows(item: AlignmentItem, kind: AlignmentKind) -> bool:
    """Text joins only groups that match its own alignment type."""
    if item.text_align is None or kind in VERTICAL_KINDS:
        return True
    align = item.text_align
    if kind is AlignmentKind.LEFT:
        return align in ("left", "start", "justify")
    if kind is AlignmentKind.X_CENTER:
        return align == "center"
    return align in ("right", "end")


def _interrupted(a: AlignmentItem, b: AlignmentItem, kind: AlignmentKind,
                 items: list[AlignmentItem]) -> bool:
    """True when another element's box intersects the open band between the pair."""
    if kind in HORIZONTAL_KINDS:
        gap_lo = min(a.box.bottom, b.box.bottom)
        gap_hi = max(a.box.top, b.box.top)
        cross_lo = max(a.box.left, b.box.left)
        cross_hi = min(a.box.right, b.box.right)
    else:
        gap_lo = min(a.box.right, b.box.right)
        gap_hi = max(a.box.left, b.box.left)
        cross_lo = max(a.box.top, b.box.top)
        cross_hi = min(a.box.bottom, b.box.bottom)
    if gap_lo >= gap_hi:
        return False  # boxes overlap along the separation axis
    if cross_lo > cross_hi:
        ca = alignment_coordinate(kind, a.box)
        cb = alignment_coordinate(kind, b.box)
        cross_lo, cross_hi = min(ca, cb), max(ca, cb)
    for other in items:
        if other.id in (a.id, b.id):
            continue
        if kind in HORIZONTAL_KINDS:
            o_axis_lo, o_axis_hi = other.box.top, other.box.bottom
            o_cross_lo, o_cross_hi = other.box.left, other.box.right
        else:
            o_axis_lo, o_axis_hi = other.box.left, other.box.right
            o_cross_lo, o_cross_hi = other.box.top, other.box.bottom
        if (o_axis_lo < gap_hi and o_axis_hi > gap_lo
                and o_cross_lo < cross_hi and o_cross_hi > cross_lo):
            return True
    return False


def pair_linked(a: AlignmentItem, b: AlignmentItem, kind: AlignmentKind,
                items: list[AlignmentItem],
                threshold: float = ALIGNMENT_THRESHOLD_PX) -> bool:
    """The grouping predicate: close coordinates, compatible text alignment,
    and no element in between."""
    if abs(alignment_coordinate(kind, a.box) - alignment_coordinate(kind, b.box)) >= threshold:
        return False
    if not (text_align_allows(a, kind) and text_align_allows(b, kind)):
        return False
    return not _interrupted(a, b, kind, items)


def group_boxes(
    items: list[AlignmentItem], threshold: float = ALIGNMENT_THRESHOLD_PX
) -> dict[AlignmentKind, list[AlignmentGroup]]:
    """Alignment groups (connected components of linked pairs) per kind."""
    out: dict[AlignmentKind, list[AlignmentGroup]] = {}
    order = {item.id: i for i, item in enumerate(items)}
    for kind in AlignmentKind:
        parent = {item.id: item.id for item in items}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, a in enumerate(items):
            for b in items[i + 1 :]:
                if pair_linked(a, b, kind, items, threshold):
                    parent[find(a.id)] = find(b.id)

        components: dict[str, list[AlignmentItem]] = {}
        for item in items:
            components.setdefault(find(item.id), []).append(item)

        groups = []
        for members in components.values():
            if len(members) < 2:
                continue
            members.sort(key=lambda m: order[m.id])
            anchor = _modal_value([alignment_coordinate(kind, m.box) for m in members])
            outliers = []
            for m in members:
                deviation = alignment_coordinate(kind, m.box) - anchor
                if 0 < abs(deviation) < threshold:
                    outliers.append((m.id, deviation))
            groups.append(
                AlignmentGroup(
                    kind=kind,
                    member_ids=[m.id for m in members],
                    anchor_value=anchor,
                    outliers=outliers,
                )
            )
        groups.sort(key=lambda g: order[g.member_ids[0]])
        out[kind] = groups
    return out


def _modal_value(values: list[float]) -> float:
    counts: dict[float, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return max(counts.items(), key=lambda kv: (kv[1], -kv[0]))[0]


def snapshot_alignment_items(snapshot: PageSnapshot) -> list[AlignmentItem]:
    items = []
    for element in visible_elements(snapshot):
        if element.box is None or element is snapshot.root:
            continue
        items.append(
            AlignmentItem(
                id=element.id,
                box=element.box,
                text_align=element.style.text_align if element.text else None,
            )
        )
    return items


def find_alignment_groups(snapshot: PageSnapshot) -> dict[AlignmentKind, list[AlignmentGroup]]:
    """Alignment groups for a rendered snapshot (empty when static)."""
    if snapshot.capture_mode is CaptureMode.STATIC:
        return {kind: [] for kind in AlignmentKind}
    return group_boxes(snapshot_alignment_items(snapshot))


# --- checks ------------------------------------------------------------------


def _group_of(element_id: str, groups: list[StyleGroup]) -> StyleGroup | None:
    for group in groups:
        if element_id in group.member_ids:
            return group
    return None


def check_spacing(snapshot: PageSnapshot, groups: list[StyleGroup]) -> list[Finding]:
    """Containers need 24px padding; atomic siblings need 8px separation.

    Fixes follow the down-right convention: only margin-bottom or
    margin-right are ever suggested.
    """
    ref = guideline_ref(Category.SPACING)
    involved: dict[str, StyleGroup] = {}
    problems: dict[str, list[Suggestion]] = {}
    explanations: dict[str, list[str]] = {}
    affected: dict[str, set[str]] = {}

    def add_problem(group: StyleGroup, member_id: str, text: str, suggestion: Suggestion) -> None:
        key = group.group_key
        involved[key] = group
        explanations.setdefault(key, [])
        if text not in explanations[key]:
            explanations[key].append(text)
        problems.setdefault(key, [])
        if suggestion not in problems[key]:
            problems[key].append(suggestion)
        affected.setdefault(key, set()).add(member_id)

    index = snapshot.node_index()
    for group in groups:
        if group.tag in CONTAINER_TAGS:
            involved[group.group_key] = group
            padding = group.shared_style.padding
            low = min(padding.sides())
            if low < MIN_CONTAINER_PADDING_PX:
                add_problem(
                    group,
                    group.member_ids[0],
                    f"Container padding is {low:g}px on its tightest side, below the "
                    f"{MIN_CONTAINER_PADDING_PX:g}px minimum.",
                    Suggestion("padding", f"{MIN_CONTAINER_PADDING_PX:g}px",
                               "give contained content room to breathe"),
                )
        if group.tag in ATOMIC_TAGS:
            involved.setdefault(group.group_key, group)

    rendered = snapshot.capture_mode is CaptureMode.RENDERED
    for node in snapshot.iter_nodes():
        kids = [
            child
            for child in node.children
            if child.id in index and _visible_here(child)
        ]
        for first, second in zip(kids, kids[1:]):
            if first.tag not in ATOMIC_TAGS or second.tag not in ATOMIC_TAGS:
                continue
            gap, axis = _sibling_gap(first, second, rendered)
            if gap is None or gap >= MIN_SIBLING_MARGIN_PX:
                continue
            group = _group_of(first.id, groups)
            if group is None:
                continue
            prop = "margin-bottom" if axis == "vertical" else "margin-right"
            add_problem(
                group,
                first.id,
                f"Only {gap:g}px separates <{first.tag}> from its next sibling; "
                f"{MIN_SIBLING_MARGIN_PX:g}px is the minimum.",
                Suggestion(prop, f"{MIN_SIBLING_MARGIN_PX:g}px",
                           "separate neighboring elements (down-right rule)"),
            )

    findings: list[Finding] = []
    for key, group in involved.items():
        if key in problems:
            findings.append(
                DesignIssue(
                    category=Category.SPACING,
                    group_key=key,
                    member_ids=sorted(affected[key], key=group.member_ids.index),
                    explanation=" ".join(explanations[key]),
                    guideline_ref=ref,
                    suggestions=problems[key],
                    selector=group.selector,
                )
            )
        else:
            findings.append(
                DesignPass(
                    category=Category.SPACING,
                    group_key=key,
                    member_ids=list(group.member_ids),
                    explanation="Spacing meets the padding and margin minimums.",
                    guideline_ref=ref,
                )
            )
    return findings


def _visible_here(node: ElementNode) -> bool:
    return (
        node.style.opacity > 0
        and node.style.display != "none"
        and (node.box is None or (node.box.width > 0 and node.box.height > 0))
    )


def _sibling_gap(first: ElementNode, second: ElementNode,
                 rendered: bool) -> tuple[float | None, str]:
    """Separation between adjacent siblings and its axis."""
    if rendered and first.box is not None and second.box is not None:
        if second.box.top >= first.box.bottom:
            return second.box.top - first.box.bottom, "vertical"
        if second.box.left >= first.box.right:
            return second.box.left - first.box.right, "horizontal"
        return 0.0, "vertical"  # overlapping boxes
    inline = first.style.display.startswith("inline") and second.style.display.startswith("inline")
    if inline:
        return first.style.margin.right + second.style.margin.left, "horizontal"
    return first.style.margin.bottom + second.style.margin.top, "vertical"


def check_spatial_alignment(
    alignment_groups: dict[AlignmentKind, list[AlignmentGroup]],
    groups: list[StyleGroup],
    snapshot: PageSnapshot,
) -> list[Finding]:
    """Flag members sitting 1-4px off their group's anchor."""
    if snapshot.capture_mode is CaptureMode.STATIC:
        return [
            SkippedCheck(Category.SPATIAL_ALIGNMENT, "requires a rendered snapshot with geometry")
        ]
    ref = guideline_ref(Category.SPATIAL_ALIGNMENT)
    index = snapshot.node_index()

    per_style_group: dict[str, dict] = {}
    involved_keys: dict[str, StyleGroup] = {}
    for kind, kind_groups in alignment_groups.items():
        for agroup in kind_groups:
            for member_id in agroup.member_ids:
                sgroup = _group_of(member_id, groups)
                if sgroup is not None:
                    involved_keys.setdefault(sgroup.group_key, sgroup)
            for member_id, deviation in agroup.outliers:
                if abs(deviation) < MIN_FLAGGED_DEVIATION_PX:
                    continue
                sgroup = _group_of(member_id, groups)
                if sgroup is None:
                    continue
                entry = per_style_group.setdefault(
                    sgroup.group_key, {"group": sgroup, "members": [], "suggestions": [],
                                       "texts": []}
                )
                entry["members"].append(member_id)
                prop = "margin-left" if kind in HORIZONTAL_KINDS else "margin-top"
                current = (
                    index[member_id].style.margin.left
                    if prop == "margin-left"
                    else index[member_id].style.margin.top
                )
                new_value = max(0.0, current - deviation)
                suggestion = Suggestion(
                    prop,
                    f"{new_value:g}px",
                    f"shift by {-deviation:g}px to meet the group's {kind.value} anchor "
                    f"at {agroup.anchor_value:g}px",
                )
                if suggestion not in entry["suggestions"]:
                    entry["suggestions"].append(suggestion)
                entry["texts"].append(
                    f"<{index[member_id].tag} {member_id}> is {abs(deviation):g}px off the "
                    f"{kind.value} alignment of its neighbors."
                )

    findings: list[Finding] = []
    for key, sgroup in involved_keys.items():
        entry = per_style_group.get(key)
        if entry is None:
            findings.append(
                DesignPass(
                    category=Category.SPATIAL_ALIGNMENT,
                    group_key=key,
                    member_ids=list(sgroup.member_ids),
                    explanation="Members line up exactly with their alignment groups.",
                    guideline_ref=ref,
                )
            )
        else:
            findings.append(
                DesignIssue(
                    category=Category.SPATIAL_ALIGNMENT,
                    group_key=key,
                    member_ids=sorted(set(entry["members"])),
                    explanation=" ".join(dict.fromkeys(entry["texts"])),
                    guideline_ref=ref,
                    suggestions=entry["suggestions"],
                    selector=sgroup.selector,
                )
            )
    return findings


def check_textual_alignment(
    groups: list[StyleGroup], roles: dict[str, "TextRole"]
) -> list[Finding]:
    """Bullet and body text must not be center- or justify-aligned."""
    ref = guideline_ref(Category.TEXTUAL_ALIGNMENT)
    findings: list[Finding] = []
    for group in groups:
        role = roles.get(group.group_key)
        if role is None:
            continue
        align = group.shared_style.text_align
        long_text = group.tag == "li" or role is TextRole.BODY
        if long_text and align in ("center", "justify"):
            what = "Bullet" if group.tag == "li" else "Body"
            findings.append(
                DesignIssue(
                    category=Category.TEXTUAL_ALIGNMENT,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=f"{what} text is {align}-aligned; long text reads best left-aligned.",
                    guideline_ref=ref,
                    suggestions=[Suggestion("text-align", "left", "left-align long text")],
                    selector=group.selector,
                )
            )
        else:
            detail = (
                "Center alignment is fine for short headings."
                if align == "center"
                else f"{align}-aligned text meets the guideline."
            )
            findings.append(
                DesignPass(
                    category=Category.TEXTUAL_ALIGNMENT,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=detail,
                    guideline_ref=ref,
                )
            )
    return findings
