"""Color checks: contrast against APCA, saturated backgrounds, scheme summary,
and the holistic harmony suggestion built on a generated palette."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..color import (
    RECOMMENDED_LC,
    ColorPalette,
    apca_lc,
    composite_over,
    detect_mode,
    effective_background,
    generate_palette,
    lch_to_rgb,
    name_color,
    pick_primary_color,
    rgb_to_lch,
    screen_luminance,
)
from ..descriptor import Descriptor, DescriptorKind, DescriptorRequest
from ..findings import Category, DesignIssue, DesignPass, Finding, Severity, Suggestion
from ..groups import StyleGroup
from ..guidelines import guideline_ref
from ..model import ElementNode, PageSnapshot, RgbaColor, visible_elements

#: Backgrounds with CIELCh chroma above this (at mid lightness) look oversaturated.
SATURATED_CHROMA = 60.0
SATURATED_TONE_RANGE = (25.0, 75.0)
#: More distinct colors than this reads as cluttered.
MAX_DISTINCT_COLORS = 10

INTERACTIVE_TAGS = frozenset({"a", "button", "input", "select", "textarea"})
FORM_TAGS = frozenset({"input", "textarea", "select"})


def contrast_fix(
    text: RgbaColor, background: RgbaColor, threshold: float = RECOMMENDED_LC
) -> tuple[RgbaColor | None, RgbaColor | None]:
    """Minimal-tone-change replacements: (new text color, new background color).

    Either replacement alone reaches the threshold against the unchanged other
    color; a None entry means no tone on that axis can get there.
    """
    text_darker = screen_luminance(text) <= screen_luminance(background)
    new_text = _tone_adjusted(text, background, is_text=True, darker=text_darker,
                              threshold=threshold)
    new_bg = _tone_adjusted(background, text, is_text=False, darker=not text_darker,
                            threshold=threshold)
    return new_text, new_bg


def _tone_adjusted(
    color: RgbaColor, other: RgbaColor, *, is_text: bool, darker: bool, threshold: float
) -> RgbaColor | None:
    tone, chroma_val, hue = rgb_to_lch(color)

    def lc_at(t: float) -> float:
        candidate = lch_to_rgb(t, chroma_val, hue)
        pair = (candidate, other) if is_text else (other, candidate)
        return abs(apca_lc(*pair))

    extreme = 0.0 if darker else 100.0
    if lc_at(extreme) < threshold:
        return None
    lo, hi = extreme, tone  # lc_at(lo) satisfies; move lo toward the original tone
    for _ in range(30):
        mid = (lo + hi) / 2
        if lc_at(mid) >= threshold:
            lo = mid
        else:
            hi = mid
    return lch_to_rgb(lo, chroma_val, hue)


def required_lc(font_size_px: float, profile: str = "flat") -> float:
    """Contrast threshold for a text size.

    The default ``flat`` profile applies the recommended 74.7 everywhere. The
    optional ``strict`` profile grades the bar by text size (90 for small
    text, 75 for 18px+, 60 for 24px+); it is an extension for cautious users,
    not the baseline behavior.
    """
    if profile == "flat":
        return RECOMMENDED_LC
    if profile == "strict":
        if font_size_px >= 24:
            return 60.0
        if font_size_px >= 18:
            return 75.0
        return 90.0
    raise ValueError(f"unknown contrast profile {profile!r}")


def check_contrast(
    groups: list[StyleGroup], snapshot: PageSnapshot, profile: str = "flat"
) -> list[Finding]:
    """Text with |Lc| below the recommended threshold gets alternative colors."""
    ref = guideline_ref(Category.COLOR_CONTRAST)
    index = snapshot.node_index()
    findings: list[Finding] = []
    for group in groups:
        if not group.has_text():
            continue
        threshold = required_lc(group.shared_style.font_size_px, profile)
        worst: tuple[float, ElementNode, RgbaColor, RgbaColor] | None = None
        for member_id in group.member_ids:
            element = index[member_id]
            if not element.text:
                continue
            bg = effective_background(element, snapshot)
            text = composite_over(element.style.color, bg)
            lc = apca_lc(text, bg)
            if worst is None or abs(lc) < abs(worst[0]):
                worst = (lc, element, text, bg)
        if worst is None:
            continue
        lc, element, text, bg = worst
        if abs(lc) >= threshold:
            findings.append(
                DesignPass(
                    category=Category.COLOR_CONTRAST,
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    explanation=(
                        f"Contrast |Lc| {abs(lc):.1f} meets the {threshold:g} minimum."
                    ),
                    guideline_ref=ref,
                )
            )
            continue
        suggestions = []
        new_text, new_bg = contrast_fix(text, bg, threshold)
        if new_text is not None:
            suggestions.append(
                Suggestion("color", new_text.css(),
                           "adjust the text tone until contrast clears the threshold")
            )
        if new_bg is not None:
            suggestions.append(
                Suggestion("background-color", new_bg.css(),
                           "alternatively, adjust the background tone")
            )
        if not suggestions:
            # Neither side alone suffices (mid-tone on mid-tone): move both.
            dark_text = RgbaColor(0, 0, 0) if screen_luminance(bg) > 0.3 else RgbaColor(255, 255, 255)
            fixed_bg = _tone_adjusted(bg, dark_text, is_text=False,
                                      darker=dark_text.r == 255, threshold=threshold)
            suggestions.append(Suggestion("color", dark_text.css(), "move text to an extreme tone"))
            if fixed_bg is not None:
                suggestions.append(Suggestion("background-color", fixed_bg.css(),
                                              "and rebalance the background"))
        findings.append(
            DesignIssue(
                category=Category.COLOR_CONTRAST,
                group_key=group.group_key,
                member_ids=list(group.member_ids),
                explanation=(
                    f"Text {text.css()} on {bg.css()} has contrast |Lc| {abs(lc):.1f}, "
                    f"below the recommended {threshold:g}."
                ),
                guideline_ref=ref,
                suggestions=suggestions,
                severity=Severity.MUST_FIX,
                selector=group.selector,
            )
        )
    return findings


@dataclass
class SaturatedFlag:
    group_key: str
    member_ids: list[str]
    background: RgbaColor
    chroma: float
    selector: str


def check_saturated_background(groups: list[StyleGroup],
                               snapshot: PageSnapshot) -> list[SaturatedFlag]:
    """Groups whose set background is highly saturated at mid lightness."""
    index = snapshot.node_index()
    flags = []
    for group in groups:
        bg = group.shared_style.background_color
        if bg.a <= 0:
            continue
        tone, chroma_val, _ = rgb_to_lch(bg)
        lo, hi = SATURATED_TONE_RANGE
        nontrivial = group.has_text() or any(index[m].children for m in group.member_ids)
        if chroma_val > SATURATED_CHROMA and lo <= tone <= hi and nontrivial:
            flags.append(
                SaturatedFlag(
                    group_key=group.group_key,
                    member_ids=list(group.member_ids),
                    background=bg,
                    chroma=chroma_val,
                    selector=group.selector,
                )
            )
    return flags


@dataclass
class SchemeSummary:
    summary: str
    scheme: dict[str, list[dict]]
    distinct_count: int
    declared_by_frequency: list[RgbaColor] = field(default_factory=list)


def summarize_color_scheme(snapshot: PageSnapshot, descriptor: Descriptor) -> SchemeSummary:
    """Structured map of CSS-set and image-derived colors, plus a prose summary."""
    buckets: dict[str, dict[tuple, dict]] = {
        "background": {}, "text": {}, "border": {}, "interactive": {}, "image": {},
    }

    def add(bucket: str, color: RgbaColor, tag: str) -> None:
        entry = buckets[bucket].setdefault(
            color.rgb, {"color": color, "count": 0, "tags": []}
        )
        entry["count"] += 1
        if tag not in entry["tags"]:
            entry["tags"].append(tag)

    for element in visible_elements(snapshot):
        style = element.style
        if style.background_color.a > 0:
            add("background", style.background_color, element.tag)
            if element.tag in INTERACTIVE_TAGS:
                add("interactive", style.background_color, element.tag)
        if element.text:
            add("text", style.color, element.tag)
            if element.tag in INTERACTIVE_TAGS:
                add("interactive", style.color, element.tag)
        if style.border_color is not None and style.border_color.a > 0:
            add("border", style.border_color, element.tag)
    for color in (snapshot.screenshot_colors or ())[:3]:
        add("image", color, "screenshot")

    declared: dict[tuple, int] = {}
    for bucket in ("background", "text", "border"):
        for rgb, entry in buckets[bucket].items():
            declared[rgb] = declared.get(rgb, 0) + entry["count"]
    declared_sorted = [
        RgbaColor(*rgb) for rgb, _ in sorted(declared.items(), key=lambda kv: (-kv[1], kv[0]))
    ]

    scheme = {}
    for bucket, entries in buckets.items():
        ordered = sorted(entries.values(), key=lambda e: (-e["count"], e["color"].rgb))
        scheme[bucket] = [
            {
                "css": e["color"].css(),
                "name": name_color(e["color"], descriptor),
                "count": e["count"],
                "tags": e["tags"],
            }
            for e in ordered
        ]
    distinct = len(
        {entry["css"] for bucket in scheme.values() for entry in bucket}
    )
    response = descriptor.describe(
        DescriptorRequest(
            kind=DescriptorKind.COLOR_SCHEME_SUMMARY,
            payload={"scheme": scheme, "distinct_count": distinct},
        )
    )
    return SchemeSummary(
        summary=response.summary,
        scheme=scheme,
        distinct_count=distinct,
        declared_by_frequency=declared_sorted,
    )


@dataclass(frozen=True)
class RoleAssignment:
    css_property: str
    color: RgbaColor
    role: str


@dataclass
class HarmonySuggestion:
    """One holistic recolor plan spanning multiple element groups."""

    scheme_summary: str
    palette: ColorPalette
    assignments: dict[str, list[RoleAssignment]]
    rationale: str


def _page_background(snapshot: PageSnapshot) -> RgbaColor:
    body = next((n for n in snapshot.iter_nodes() if n.tag == "body"), snapshot.root)
    return effective_background(body, snapshot)


def suggest_harmony(
    snapshot: PageSnapshot,
    groups: list[StyleGroup],
    descriptor: Descriptor,
    scheme: SchemeSummary,
) -> HarmonySuggestion:
    """Palette from the page's primary color, assigned to groups by fixed rules."""
    dominants = list(snapshot.screenshot_colors or ())
    seed = pick_primary_color(dominants, scheme.declared_by_frequency)
    mode = detect_mode(_page_background(snapshot))
    palette = generate_palette(seed, mode)
    roles = palette.roles

    group_by_key = {g.group_key: g for g in groups}
    group_of_member: dict[str, StyleGroup] = {}
    for g in groups:
        for mid in g.member_ids:
            group_of_member[mid] = g

    assignments: dict[str, list[RoleAssignment]] = {}

    def assign(key: str, prop: str, role: str) -> None:
        entry = RoleAssignment(prop, roles[role], role)
        existing = assignments.setdefault(key, [])
        if all(e.css_property != prop for e in existing):
            existing.append(entry)

    # Backgrounds first: they define each subtree's context.
    for g in groups:
        if g.tag in ("html", "body"):
            assign(g.group_key, "background-color", "surface")
        elif g.tag == "button":
            assign(g.group_key, "background-color", "primary")
        elif g.tag in FORM_TAGS:
            assign(g.group_key, "background-color", "tertiary_container")
        elif g.shared_style.background_color.a > 0:
            assign(g.group_key, "background-color", "primary_container")
        if g.shared_style.border_color is not None:
            assign(g.group_key, "border-color", "outline")

    # Text colors follow the nearest assigned background up the tree.
    bg_role_of: dict[str, str] = {}

    def walk(node: ElementNode, context: str) -> None:
        g = group_of_member.get(node.id)
        if g is not None:
            for entry in assignments.get(g.group_key, ()):
                if entry.css_property == "background-color":
                    context = entry.role
        bg_role_of[node.id] = context
        for child in node.children:
            walk(child, context)

    walk(snapshot.root, "surface")

    from .text import TITLE_TAGS  # local import to avoid a cycle at module load

    for g in groups:
        if not g.has_text():
            continue
        context = bg_role_of.get(g.member_ids[0], "surface")
        on_role = f"on_{context}" if f"on_{context}" in roles else "on_surface"
        if g.tag in TITLE_TAGS and context == "surface":
            heading_ok = abs(apca_lc(roles["primary"], roles["surface"])) >= RECOMMENDED_LC
            assign(g.group_key, "color", "primary" if heading_ok else on_role)
        elif g.tag == "a" and context == "surface":
            link_ok = abs(apca_lc(roles["primary"], roles["surface"])) >= RECOMMENDED_LC
            assign(g.group_key, "color", "primary" if link_ok else on_role)
        else:
            assign(g.group_key, "color", on_role)

    # Closed-loop verification: every text assignment must clear the threshold
    # against its assigned (or inherited) background.
    for key, entries in assignments.items():
        color_entry = next((e for e in entries if e.css_property == "color"), None)
        if color_entry is None:
            continue
        g = group_by_key[key]
        context = bg_role_of.get(g.member_ids[0], "surface")
        bg_entry = next((e for e in entries if e.css_property == "background-color"), None)
        bg_color = bg_entry.color if bg_entry is not None else roles[context]
        if abs(apca_lc(color_entry.color, bg_color)) < RECOMMENDED_LC:
            bg_role = bg_entry.role if bg_entry is not None else context
            fallback = f"on_{bg_role}" if f"on_{bg_role}" in roles else "on_surface"
            entries[entries.index(color_entry)] = RoleAssignment(
                "color", roles[fallback], fallback
            )

    if descriptor.remote_enabled:
        _refine_remote(descriptor, palette, assignments, group_by_key)

    seed_name = name_color(seed, None)
    rationale = (
        f"Palette seeded from the page's primary color ({seed_name}, {seed.css()}) in "
        f"{mode.value} mode; colors are assigned in role pairs so every text/background "
        f"combination stays legible."
    )
    return HarmonySuggestion(
        scheme_summary=scheme.summary,
        palette=palette,
        assignments=assignments,
        rationale=rationale,
    )


def _refine_remote(
    descriptor: Descriptor,
    palette: ColorPalette,
    assignments: dict[str, list[RoleAssignment]],
    group_by_key: dict[str, StyleGroup],
) -> None:
    """Let a remote descriptor re-assign roles; invalid replies are discarded."""
    from ..ingest.css import parse_stylesheet

    payload = {
        "palette": {role: color.css() for role, color in palette.roles.items()},
        "groups": {key: [e.css_property for e in entries] for key, entries in assignments.items()},
    }
    response = descriptor.describe(
        DescriptorRequest(kind=DescriptorKind.PALETTE_ROLE_ASSIGNMENT, payload=payload)
    )
    css_text = response.details.get("css")
    if not css_text:
        return
    rules, _ = parse_stylesheet(css_text)
    color_by_css = {color.css(): role for role, color in palette.roles.items()}
    allowed_props = {"color", "background-color", "border-color"}
    selector_to_key = {g.selector: key for key, g in group_by_key.items()}
    for rule in rules:
        key = selector_to_key.get(rule.selector.raw)
        if key is None:
            continue
        for prop, value in rule.declarations.items():
            if prop not in allowed_props:
                return  # reply touches non-color properties; discard refinement
            role = color_by_css.get(value.strip())
            if role is None:
                continue
            entries = [e for e in assignments.get(key, []) if e.css_property != prop]
            entries.append(RoleAssignment(prop, palette.roles[role], role))
            assignments[key] = entries


def harmony_findings(
    flags: list[SaturatedFlag],
    scheme: SchemeSummary,
    harmony: HarmonySuggestion,
) -> list[Finding]:
    """Fold saturated-background flags and the palette plan into one holistic entry."""
    ref = guideline_ref(Category.COLOR_HARMONY)
    too_many = scheme.distinct_count > MAX_DISTINCT_COLORS
    if not flags and not too_many:
        return [
            DesignPass(
                category=Category.COLOR_HARMONY,
                group_key="page",
                member_ids=[],
                explanation=f"{harmony.scheme_summary} The palette reads as cohesive.",
                guideline_ref=ref,
            )
        ]
    parts = [harmony.scheme_summary]
    suggestions: list[Suggestion] = []
    member_ids: list[str] = []
    for flag in flags:
        name = name_color(flag.background, None)
        parts.append(
            f"The {name} background on {flag.group_key} is highly saturated "
            f"(chroma {flag.chroma:.0f}); a background with high saturation does not look good."
        )
        member_ids.extend(flag.member_ids)
        replacement = next(
            (e for e in harmony.assignments.get(flag.group_key, ())
             if e.css_property == "background-color"),
            None,
        )
        if replacement is not None:
            suggestions.append(
                Suggestion(
                    "background-color",
                    replacement.color.css(),
                    f"use the palette's {replacement.role} role on {flag.group_key}",
                )
            )
    if too_many:
        parts.append(
            f"{scheme.distinct_count} distinct colors are in use; too many colors can feel "
            "cluttered."
        )
    parts.append(harmony.rationale)
    return [
        DesignIssue(
            category=Category.COLOR_HARMONY,
            group_key="page",
            member_ids=member_ids,
            explanation=" ".join(parts),
            guideline_ref=ref,
            suggestions=suggestions,
            selector="",
        )
    ]
