"""The shipped guideline table: one row per check category.

Each row carries the rule summary, the CSS properties a fix may touch, and a
link slot for the full write-up shown in reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .findings import Category


@dataclass(frozen=True)
class Guideline:
    id: str
    category: Category
    summary: str
    css_properties: tuple[str, ...]
    link: str = ""


GUIDELINES: dict[Category, Guideline] = {
    g.category: g
    for g in (
        Guideline(
            id="text-legibility-1",
            category=Category.FONT_SIZE,
            summary="Body text should be 16px or above; title text should be 20px or above.",
            css_properties=("font-size",),
        ),
        Guideline(
            id="text-readability-1",
            category=Category.FONT_FAMILY,
            summary="Sans-serif families are generally more legible than serif on screens; "
            "reserve decorative and narrow faces for decorative text.",
            css_properties=("font-family",),
        ),
        Guideline(
            id="text-readability-2",
            category=Category.LINE_LENGTH,
            summary="Keep body lines 50-75 characters long and avoid line breaks in titles.",
            css_properties=("font-size", "width", "max-width"),
        ),
        Guideline(
            id="text-readability-3",
            category=Category.LINE_SPACING,
            summary="Line spacing should be at least 1.5 times the font size within paragraphs.",
            css_properties=("line-height",),
        ),
        Guideline(
            id="layout-spacing-1",
            category=Category.SPACING,
            summary="Containers need at least 24px of padding; neighboring elements need "
            "at least 8px of margin between them.",
            css_properties=("margin", "margin-bottom", "margin-right", "padding"),
        ),
        Guideline(
            id="layout-alignment-1",
            category=Category.SPATIAL_ALIGNMENT,
            summary="Close elements should align on shared edges or center axes.",
            css_properties=("width", "height", "margin", "margin-top", "margin-left",
                            "padding", "justify-content"),
        ),
        Guideline(
            id="layout-alignment-2",
            category=Category.TEXTUAL_ALIGNMENT,
            summary="Left-align long text and bullet lists; center only short headings.",
            css_properties=("text-align", "justify-content", "display"),
        ),
        Guideline(
            id="color-contrast-1",
            category=Category.COLOR_CONTRAST,
            summary="Provide ample lightness contrast between text and its background.",
            css_properties=("background-color", "color"),
        ),
        Guideline(
            id="color-harmony-1",
            category=Category.COLOR_HARMONY,
            summary="Choose a cohesive set of colors and avoid highly saturated backgrounds.",
            css_properties=("background-color", "border-color", "color"),
        ),
    )
}


def guideline_ref(category: Category) -> str:
    return GUIDELINES[category].id


def allowed_properties(category: Category) -> tuple[str, ...]:
    return GUIDELINES[category].css_properties
