"""Cascade resolution: user-agent defaults, specificity, inheritance.

Produces a static-mode snapshot (computed styles, no geometry) from a parsed
tree and rule list. Precedence is (tier, specificity, source order) where the
tiers are user-agent < author < inline < !important.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..errors import UnknownSelectorError
from ..model import (
    CaptureMode,
    ComputedStyle,
    EdgeSizes,
    ElementNode,
    PageSnapshot,
    RgbaColor,
    TEXT_ALIGN_VALUES,
)
from .css import (
    CssRule,
    Selector,
    expand_box_shorthand,
    parse_color,
    parse_declarations,
    parse_length,
    parse_selector,
    parse_stylesheet,
)
from .html import RawNode, parse_html

logger = logging.getLogger(__name__)

DEFAULT_VIEWPORT = (1280, 800)
ROOT_FONT_SIZE = 16.0

_TIER_UA, _TIER_AUTHOR, _TIER_INLINE, _TIER_IMPORTANT = 0, 1, 2, 3

# Minimal user-agent sheet: heading sizes per the common browser defaults,
# plus the block margins/paddings browsers apply.
_UA_SHEET = """
body { margin: 8px; }
h1 { font-size: 32px; margin: 21.44px 0; }
h2 { font-size: 24px; margin: 19.92px 0; }
h3 { font-size: 18.72px; margin: 18.72px 0; }
h4 { font-size: 16px; margin: 21.28px 0; }
h5 { font-size: 13.28px; margin: 22.17px 0; }
h6 { font-size: 10.72px; margin: 24.97px 0; }
p { margin: 16px 0; }
ul { margin: 16px 0; padding: 0 0 0 40px; }
ol { margin: 16px 0; padding: 0 0 0 40px; }
blockquote { margin: 16px 40px; }
figure { margin: 16px 40px; }
"""

_UA_RULES: list[CssRule] = []


def _ua_rules() -> list[CssRule]:
    global _UA_RULES
    if not _UA_RULES:
        rules, _ = parse_stylesheet(_UA_SHEET, origin="ua")
        _UA_RULES = rules
    return _UA_RULES


_INLINE_TAGS = frozenset(
    {"a", "span", "em", "strong", "b", "i", "u", "small", "code", "abbr", "sub",
     "sup", "mark", "q", "cite", "time", "label"}
)
_INLINE_BLOCK_TAGS = frozenset({"img", "button", "input", "select", "textarea"})

_FONT_SIZE_KEYWORDS = {
    "xx-small": 9.33, "x-small": 10.0, "small": 13.33, "medium": 16.0,
    "large": 18.0, "x-large": 24.0, "xx-large": 32.0,
}


_UNDISPLAYED_TAGS = frozenset({"head", "title", "style", "script", "link", "meta"})


def _default_display(tag: str) -> str:
    if tag in _UNDISPLAYED_TAGS:
        return "none"
    if tag == "li":
        return "list-item"
    if tag in _INLINE_TAGS:
        return "inline"
    if tag in _INLINE_BLOCK_TAGS:
        return "inline-block"
    return "block"


@dataclass(frozen=True)
class _Inherited:
    font_size: float = ROOT_FONT_SIZE
    families: tuple[str, ...] = ("Times New Roman",)
    line_height: tuple[str, float | None] = ("normal", None)
    color: RgbaColor = RgbaColor(0, 0, 0)
    text_align: str = "left"


@dataclass
class StaticSource:
    """What a static snapshot was resolved from; kept so patches can re-resolve."""

    tree: RawNode
    rules: list[CssRule]
    base_notes: tuple[str, ...]
    source_id: str
    viewport: tuple[int, int]

    def next_order(self) -> int:
        return max((r.source_order for r in self.rules), default=-1) + 1


def parse_document(html_text: str) -> tuple[RawNode, list[CssRule], list[str]]:
    """Parse HTML with embedded CSS into (tree, rules, recovery notes)."""
    tree, css_texts, notes = parse_html(html_text)
    rules: list[CssRule] = []
    order = 0
    for css_text in css_texts:
        parsed, css_notes = parse_stylesheet(css_text, start_order=order)
        rules.extend(parsed)
        notes.extend(css_notes)
        order = max((r.source_order for r in rules), default=-1) + 1
    return tree, rules, notes


def _selector_matches(
    selector: Selector,
    subject: tuple[str, str | None, tuple[str, ...]],
    ancestors: list[tuple[str, str | None, tuple[str, ...]]],
) -> bool:
    if not selector.compounds[-1].matches(*subject):
        return False
    idx = len(selector.compounds) - 2
    ai = len(ancestors) - 1
    while idx >= 0 and ai >= 0:
        if selector.compounds[idx].matches(*ancestors[ai]):
            idx -= 1
        ai -= 1
    return idx < 0


_AUDITED_PROPS = {
    "font-size", "font-family", "line-height", "color", "background-color",
    "background", "border-color", "border", "text-align", "display", "opacity",
    "margin", "margin-top", "margin-right", "margin-bottom", "margin-left",
    "padding", "padding-top", "padding-right", "padding-bottom", "padding-left",
}


def _winning_declarations(
    node: RawNode,
    ancestors: list[tuple[str, str | None, tuple[str, ...]]],
    rules: list[CssRule],
    unknown_props: set[str],
) -> dict[str, str]:
    subject = (node.tag, node.attrs.get("id"), node.classes)
    best: dict[str, tuple[tuple, str]] = {}

    def offer(prop: str, value: str, key: tuple) -> None:
        if prop not in _AUDITED_PROPS:
            unknown_props.add(prop)
            return
        current = best.get(prop)
        if current is None or key >= current[0]:
            best[prop] = (key, value)

    for rule in _ua_rules():
        if _selector_matches(rule.selector, subject, ancestors):
            for prop, value in rule.declarations.items():
                offer(prop, value, (_TIER_UA, rule.specificity, rule.source_order))
    for rule in rules:
        if _selector_matches(rule.selector, subject, ancestors):
            for prop, value in rule.declarations.items():
                tier = _TIER_IMPORTANT if prop in rule.important else _TIER_AUTHOR
                offer(prop, value, (tier, rule.specificity, rule.source_order))
    inline = node.attrs.get("style")
    if inline:
        declarations, important = parse_declarations(inline)
        for prop, value in declarations.items():
            tier = _TIER_IMPORTANT if prop in important else _TIER_INLINE
            offer(prop, value, (tier, (0, 0, 0), 0))
    return {prop: value for prop, (_, value) in best.items()}


def _split_families(value: str) -> tuple[str, ...]:
    return tuple(
        part.strip().strip("'\"")
        for part in value.split(",")
        if part.strip().strip("'\"")
    )


def _first_color_token(value: str) -> RgbaColor | None:
    for token in value.split():
        color = parse_color(token)
        if color is not None:
            return color
    return None


def _resolve_font_size(value: str, inherited: _Inherited, notes: list[str]) -> float:
    lowered = value.strip().lower()
    if lowered in _FONT_SIZE_KEYWORDS:
        return _FONT_SIZE_KEYWORDS[lowered]
    if lowered == "smaller":
        return inherited.font_size / 1.2
    if lowered == "larger":
        return inherited.font_size * 1.2
    resolved = parse_length(
        value,
        em_base=inherited.font_size,
        rem_base=ROOT_FONT_SIZE,
        percent_base=inherited.font_size,
    )
    if resolved is None or resolved <= 0:
        notes.append(f"unresolvable font-size '{value}' ignored")
        return inherited.font_size
    return resolved


def _resolve_line_height(
    value: str, font_size: float, notes: list[str]
) -> tuple[str, float | None]:
    lowered = value.strip().lower()
    if lowered == "normal":
        return ("normal", None)
    try:
        factor = float(lowered)
        return ("factor", factor)
    except ValueError:
        pass
    resolved = parse_length(value, em_base=font_size, rem_base=ROOT_FONT_SIZE, percent_base=font_size)
    if resolved is None:
        notes.append(f"unresolvable line-height '{value}' ignored")
        return ("normal", None)
    return ("px", resolved)


def _line_height_px(spec: tuple[str, float | None], font_size: float) -> float:
    kind, value = spec
    if kind == "px" and value is not None:
        return value
    if kind == "factor" and value is not None:
        return value * font_size
    return 1.2 * font_size  # line-height: normal


def _resolve_edges(
    kind: str,
    winning: dict[str, str],
    ua_default: dict[str, float],
    font_size: float,
    notes: list[str],
    node_label: str,
) -> EdgeSizes:
    values = dict(ua_default)
    shorthand = winning.get(kind)
    if shorthand is not None:
        expanded = expand_box_shorthand(shorthand)
        if expanded is None:
            notes.append(f"unparseable {kind} shorthand '{shorthand}' on {node_label}")
        else:
            for side, raw in expanded.items():
                resolved = parse_length(raw, em_base=font_size, rem_base=ROOT_FONT_SIZE)
                if resolved is None and raw.strip().lower() == "auto":
                    resolved = 0.0
                if resolved is None:
                    notes.append(f"unresolvable {kind} value '{raw}' on {node_label}")
                    continue
                values[side] = resolved
    for side in ("top", "right", "bottom", "left"):
        raw = winning.get(f"{kind}-{side}")
        if raw is None:
            continue
        resolved = parse_length(raw, em_base=font_size, rem_base=ROOT_FONT_SIZE)
        if resolved is None and raw.strip().lower() == "auto":
            resolved = 0.0
        if resolved is None:
            notes.append(f"unresolvable {kind}-{side} value '{raw}' on {node_label}")
            continue
        values[side] = resolved
    for side, v in values.items():
        if v < 0:
            notes.append(f"negative {kind}-{side} ({v}px) on {node_label} clamped to 0")
            values[side] = 0.0
    return EdgeSizes(**values)


def _resolve_node(
    node: RawNode,
    ancestors: list[tuple[str, str | None, tuple[str, ...]]],
    inherited: _Inherited,
    rules: list[CssRule],
    counter: list[int],
    seen_ids: set[str],
    notes: list[str],
    unknown_props: set[str],
) -> ElementNode:
    preorder_index = counter[0]
    counter[0] += 1

    node_id = node.attrs.get("id") or f"n{preorder_index}"
    if node_id in seen_ids:
        replacement = f"n{preorder_index}"
        notes.append(f"duplicate id '{node_id}' reassigned to '{replacement}'")
        node_id = replacement
    seen_ids.add(node_id)

    winning = _winning_declarations(node, ancestors, rules, unknown_props)
    label = f"<{node.tag} id={node_id}>"

    font_size = (
        _resolve_font_size(winning["font-size"], inherited, notes)
        if "font-size" in winning
        else inherited.font_size
    )
    families = (
        _split_families(winning["font-family"]) or inherited.families
        if "font-family" in winning
        else inherited.families
    )
    line_height_spec = (
        _resolve_line_height(winning["line-height"], font_size, notes)
        if "line-height" in winning
        else inherited.line_height
    )
    if "color" in winning:
        color = parse_color(winning["color"])
        if color is None:
            notes.append(f"unparseable color '{winning['color']}' on {label}")
            color = inherited.color
    else:
        color = inherited.color
    if "text-align" in winning:
        text_align = winning["text-align"].strip().lower()
        if text_align not in TEXT_ALIGN_VALUES:
            notes.append(f"unknown text-align '{text_align}' on {label}")
            text_align = inherited.text_align
    else:
        text_align = inherited.text_align

    background = RgbaColor(0, 0, 0, 0.0)
    if "background-color" in winning:
        parsed = parse_color(winning["background-color"])
        if parsed is None:
            notes.append(f"unparseable background-color on {label}")
        else:
            background = parsed
    elif "background" in winning:
        parsed = _first_color_token(winning["background"])
        if parsed is not None:
            background = parsed

    border_color = None
    if "border-color" in winning:
        border_color = _first_color_token(winning["border-color"])
    elif "border" in winning:
        border_color = _first_color_token(winning["border"])

    ua_margin = {"top": 0.0, "right": 0.0, "bottom": 0.0, "left": 0.0}
    ua_padding = {"top": 0.0, "right": 0.0, "bottom": 0.0, "left": 0.0}
    margin = _resolve_edges("margin", winning, ua_margin, font_size, notes, label)
    padding = _resolve_edges("padding", winning, ua_padding, font_size, notes, label)

    display = winning.get("display", _default_display(node.tag)).strip().lower()
    opacity = 1.0
    if "opacity" in winning:
        try:
            opacity = max(0.0, min(1.0, float(winning["opacity"].rstrip("%"))
                                   / (100 if winning["opacity"].strip().endswith("%") else 1)))
        except ValueError:
            notes.append(f"unparseable opacity on {label}")

    style = ComputedStyle(
        font_size_px=font_size,
        font_families=families,
        line_height_px=_line_height_px(line_height_spec, font_size),
        color=color,
        background_color=background,
        border_color=border_color,
        text_align=text_align,
        margin=margin,
        padding=padding,
        display=display,
        opacity=opacity,
    )

    text = node.own_text
    if text is None and node.tag == "input":
        # An input renders its value or placeholder as visible text.
        text = node.attrs.get("value") or node.attrs.get("placeholder") or None

    element = ElementNode(
        id=node_id,
        tag=node.tag,
        classes=node.classes,
        text=text,
        style=style,
    )

    child_inherited = _Inherited(
        font_size=font_size,
        families=families,
        line_height=line_height_spec,
        color=color,
        text_align=text_align,
    )
    child_ancestors = ancestors + [(node.tag, node.attrs.get("id"), node.classes)]
    for child in node.children:
        child_el = _resolve_node(
            child, child_ancestors, child_inherited, rules, counter, seen_ids, notes,
            unknown_props,
        )
        child_el.parent = element.id
        element.children.append(child_el)
    return element


def resolve_cascade(
    tree: RawNode,
    rules: list[CssRule],
    *,
    source_id: str = "inline-document",
    viewport: tuple[int, int] = DEFAULT_VIEWPORT,
    base_notes: tuple[str, ...] = (),
) -> PageSnapshot:
    """Resolve computed styles for every element and build a static snapshot."""
    notes: list[str] = list(base_notes)
    unknown_props: set[str] = set()
    root = _resolve_node(tree, [], _Inherited(), rules, [0], set(), notes, unknown_props)
    for prop in sorted(unknown_props):
        notes.append(f"property '{prop}' is not audited; ignored")
    snapshot = PageSnapshot(
        source_id=source_id,
        viewport=viewport,
        root=root,
        capture_mode=CaptureMode.STATIC,
        notes=tuple(notes),
        static_source=StaticSource(
            tree=tree,
            rules=rules,
            base_notes=base_notes,
            source_id=source_id,
            viewport=viewport,
        ),
    )
    return snapshot


def ingest_html(
    html_text: str,
    *,
    source_id: str = "inline-document",
    viewport: tuple[int, int] = DEFAULT_VIEWPORT,
) -> PageSnapshot:
    """Parse an HTML document with embedded CSS into a static snapshot."""
    tree, rules, notes = parse_document(html_text)
    return resolve_cascade(
        tree, rules, source_id=source_id, viewport=viewport, base_notes=tuple(notes)
    )


def _tree_matches(tree: RawNode, selector: Selector) -> bool:
    def walk(node: RawNode, ancestors: list) -> bool:
        subject = (node.tag, node.attrs.get("id"), node.classes)
        if _selector_matches(selector, subject, ancestors):
            return True
        child_ancestors = ancestors + [subject]
        return any(walk(child, child_ancestors) for child in node.children)

    return walk(tree, [])


def apply_css_patch(snapshot: PageSnapshot, patch: dict[str, dict[str, str]]) -> PageSnapshot:
    """Re-resolve the cascade with ``patch`` rules appended at highest source order.

    ``patch`` maps selector text to property/value declarations. Raises
    :class:`UnknownSelectorError` when a selector matches nothing (a typo in
    a suggested fix).
    """
    source: StaticSource | None = snapshot.static_source
    if source is None:
        raise ValueError("snapshot was not produced by static ingest; cannot patch")

    order = source.next_order()
    new_rules = list(source.rules)
    for raw_selector, declarations in patch.items():
        for raw in raw_selector.split(","):
            selector = parse_selector(raw)
            if selector is None:
                raise UnknownSelectorError(f"unsupported patch selector '{raw.strip()}'")
            if not _tree_matches(source.tree, selector):
                raise UnknownSelectorError(f"patch selector '{raw.strip()}' matches no element")
            new_rules.append(
                CssRule(
                    selector=selector,
                    declarations={k.lower(): v for k, v in declarations.items()},
                    specificity=selector.specificity(),
                    source_order=order,
                    origin="patch",
                )
            )
            order += 1
    return resolve_cascade(
        source.tree,
        new_rules,
        source_id=source.source_id,
        viewport=source.viewport,
        base_notes=source.base_notes,
    )
