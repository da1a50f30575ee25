"""Static ingestion: HTML with embedded CSS -> static-mode snapshot."""

from .cascade import (
    DEFAULT_VIEWPORT,
    StaticSource,
    apply_css_patch,
    ingest_html,
    parse_document,
    resolve_cascade,
)
from .css import CssRule, Selector, parse_color, parse_selector, parse_stylesheet
from .html import RawNode, parse_html

__all__ = [
    "CssRule",
    "DEFAULT_VIEWPORT",
    "RawNode",
    "Selector",
    "StaticSource",
    "apply_css_patch",
    "ingest_html",
    "parse_color",
    "parse_document",
    "parse_html",
    "parse_selector",
    "parse_stylesheet",
    "resolve_cascade",
]
