"""designlint: offline visual-design auditor for web pages.

Audits text (font size, family, line length, line spacing), layout
(whitespace, spatial and textual alignment), and color (APCA contrast,
harmony) against design guidelines, and emits element-grouped issue reports
with concrete CSS fix suggestions.
"""

from .audit import run_audit, run_checks
from .comparison import (
    SiteSummary,
    TrendCategory,
    TrendProfile,
    aggregate_trends,
    compare_with_reference,
    summarize_site,
)
from .descriptor import Descriptor, DescriptorKind, DescriptorRequest, DescriptorResponse
from .groups import StyleGroup, group_elements
from .ingest import apply_css_patch, ingest_html, parse_document, resolve_cascade
from .model import (
    BoundingBox,
    CaptureMode,
    ComputedStyle,
    EdgeSizes,
    ElementNode,
    OcrLine,
    PageSnapshot,
    RgbaColor,
    snapshot_to_dict,
    validate_snapshot,
    visible_elements,
)
from .ocr import LineMatch, MatchKind, MatchResult, match_elements_to_lines, scale_ocr_lines
from .report import (
    AuditReport,
    ChangeSummary,
    build_patch,
    diff_reports,
    render_accessible_html,
    report_from_dict,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BoundingBox",
    "CaptureMode",
    "ChangeSummary",
    "ComputedStyle",
    "Descriptor",
    "DescriptorKind",
    "DescriptorRequest",
    "DescriptorResponse",
    "EdgeSizes",
    "ElementNode",
    "LineMatch",
    "MatchKind",
    "MatchResult",
    "OcrLine",
    "PageSnapshot",
    "RgbaColor",
    "SiteSummary",
    "StyleGroup",
    "TrendCategory",
    "TrendProfile",
    "aggregate_trends",
    "apply_css_patch",
    "build_patch",
    "compare_with_reference",
    "diff_reports",
    "group_elements",
    "ingest_html",
    "match_elements_to_lines",
    "parse_document",
    "render_accessible_html",
    "report_from_dict",
    "resolve_cascade",
    "run_audit",
    "run_checks",
    "scale_ocr_lines",
    "snapshot_to_dict",
    "summarize_site",
    "validate_snapshot",
    "visible_elements",
]
