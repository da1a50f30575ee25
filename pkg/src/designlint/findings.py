"""Finding types produced by the audit checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Category(str, Enum):
    """Design check categories, in report order."""

    FONT_SIZE = "font_size"
    FONT_FAMILY = "font_family"
    LINE_LENGTH = "line_length"
    LINE_SPACING = "line_spacing"
    SPACING = "spacing"
    SPATIAL_ALIGNMENT = "spatial_alignment"
    TEXTUAL_ALIGNMENT = "textual_alignment"
    COLOR_CONTRAST = "color_contrast"
    COLOR_HARMONY = "color_harmony"


TEXT_CATEGORIES = (Category.FONT_SIZE, Category.FONT_FAMILY, Category.LINE_LENGTH,
                   Category.LINE_SPACING)
LAYOUT_CATEGORIES = (Category.SPACING, Category.SPATIAL_ALIGNMENT,
                     Category.TEXTUAL_ALIGNMENT)
COLOR_CATEGORIES = (Category.COLOR_CONTRAST, Category.COLOR_HARMONY)


class Severity(str, Enum):
    MUST_FIX = "must_fix"
    RECOMMENDED = "recommended"


@dataclass(frozen=True)
class Suggestion:
    """One concrete CSS change."""

    css_property: str
    new_value: str
    rationale: str = ""


@dataclass
class DesignIssue:
    """One guideline violation for one style group."""

    category: Category
    group_key: str
    member_ids: list[str]
    explanation: str
    guideline_ref: str
    suggestions: list[Suggestion] = field(default_factory=list)
    severity: Severity = Severity.RECOMMENDED
    selector: str = ""
    skipped_reason: str | None = None


@dataclass
class DesignPass:
    """A guideline a style group already fulfils."""

    category: Category
    group_key: str
    member_ids: list[str]
    explanation: str
    guideline_ref: str


@dataclass
class SkippedCheck:
    """A whole check that could not run on this snapshot."""

    category: Category
    reason: str


Finding = DesignIssue | DesignPass | SkippedCheck
