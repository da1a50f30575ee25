"""The audit checks: text, layout, and color families."""

from .color import (
    HarmonySuggestion,
    RoleAssignment,
    SaturatedFlag,
    SchemeSummary,
    check_contrast,
    check_saturated_background,
    contrast_fix,
    harmony_findings,
    suggest_harmony,
    summarize_color_scheme,
)
from .layout import (
    ALIGNMENT_THRESHOLD_PX,
    ATOMIC_TAGS,
    CONTAINER_TAGS,
    AlignmentGroup,
    AlignmentItem,
    AlignmentKind,
    check_spacing,
    check_spatial_alignment,
    check_textual_alignment,
    find_alignment_groups,
    group_boxes,
)
from .text import (
    BODY_MIN_FONT_PX,
    TITLE_MIN_FONT_PX,
    TextRole,
    check_font_family,
    check_font_size,
    check_line_length,
    check_line_spacing,
    classify_roles,
    classify_text_role,
    element_line_texts,
    modal_body_font_size,
)

__all__ = [
    "ALIGNMENT_THRESHOLD_PX",
    "ATOMIC_TAGS",
    "BODY_MIN_FONT_PX",
    "CONTAINER_TAGS",
    "TITLE_MIN_FONT_PX",
    "AlignmentGroup",
    "AlignmentItem",
    "AlignmentKind",
    "HarmonySuggestion",
    "RoleAssignment",
    "SaturatedFlag",
    "SchemeSummary",
    "TextRole",
    "check_contrast",
    "check_font_family",
    "check_font_size",
    "check_line_length",
    "check_line_spacing",
    "check_saturated_background",
    "check_spacing",
    "check_spatial_alignment",
    "check_textual_alignment",
    "classify_roles",
    "classify_text_role",
    "contrast_fix",
    "element_line_texts",
    "find_alignment_groups",
    "group_boxes",
    "harmony_findings",
    "modal_body_font_size",
    "suggest_harmony",
    "summarize_color_scheme",
]
