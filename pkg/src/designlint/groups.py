"""Style grouping: visible elements partitioned by identical audited styles.

Groups are the unit at which issues are reported, so a single suggestion can
fix every element that shares the style.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ComputedStyle, ElementNode, PageSnapshot, visible_elements

#: Maximum sample text length carried on a group.
_SAMPLE_LIMIT = 80

#: The style subset that participates in grouping and auditing.
AUDITED_STYLE_FIELDS = (
    "font_size_px",
    "font_families",
    "line_height_px",
    "color",
    "background_color",
    "text_align",
    "margin",
    "padding",
)


def audited_subset(style: ComputedStyle) -> tuple:
    return tuple(getattr(style, name) for name in AUDITED_STYLE_FIELDS)


@dataclass
class StyleGroup:
    """Elements sharing a tag, class list, and audited style subset."""

    group_key: str
    member_ids: list[str]
    tag: str
    classes: tuple[str, ...]
    shared_style: ComputedStyle
    sample_text: str | None = None

    @property
    def selector(self) -> str:
        """Selector usable in a CSS patch; bare tag for class-less groups."""
        if self.classes:
            return self.tag + "".join(f".{c}" for c in self.classes)
        return self.tag

    def has_text(self) -> bool:
        return self.sample_text is not None

    def members(self, snapshot: PageSnapshot) -> list[ElementNode]:
        index = snapshot.node_index()
        return [index[mid] for mid in self.member_ids]


def group_elements(snapshot: PageSnapshot) -> list[StyleGroup]:
    """Partition visible elements into style groups, in document order."""
    visible = visible_elements(snapshot)
    tag_positions: dict[str, dict[str, int]] = {}
    for element in visible:
        positions = tag_positions.setdefault(element.tag, {})
        positions[element.id] = len(positions) + 1

    buckets: dict[tuple, StyleGroup] = {}
    order: list[tuple] = []
    for element in visible:
        key = (element.tag, element.classes, audited_subset(element.style))
        group = buckets.get(key)
        if group is None:
            group = StyleGroup(
                group_key="",
                member_ids=[],
                tag=element.tag,
                classes=element.classes,
                shared_style=element.style,
            )
            buckets[key] = group
            order.append(key)
        group.member_ids.append(element.id)
        if group.sample_text is None and element.text:
            group.sample_text = element.text[:_SAMPLE_LIMIT]

    groups = [buckets[key] for key in order]
    bare_tag_counts: dict[str, int] = {}
    for group in groups:
        if not group.classes:
            bare_tag_counts[group.tag] = bare_tag_counts.get(group.tag, 0) + 1

    seen_keys: dict[str, int] = {}
    for group in groups:
        if group.classes:
            key = group.tag + "".join(f".{c}" for c in group.classes)
        elif bare_tag_counts.get(group.tag, 0) == 1:
            key = group.tag
        else:
            positions = tag_positions[group.tag]
            lo = min(positions[mid] for mid in group.member_ids)
            hi = max(positions[mid] for mid in group.member_ids)
            key = f"{group.tag}:nth({lo}..{hi})" if lo != hi else f"{group.tag}:nth({lo})"
        # Same tag + classes with different styles must still get unique keys.
        bump = seen_keys.get(key, 0)
        seen_keys[key] = bump + 1
        group.group_key = key if bump == 0 else f"{key}~{bump + 1}"
    return groups
