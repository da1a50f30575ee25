"""Shared test fixtures and snapshot builders."""

from __future__ import annotations

import socket
from pathlib import Path

import pytest

from designlint.model import (
    BoundingBox,
    ComputedStyle,
    EdgeSizes,
    ElementNode,
    OcrLine,
    PageSnapshot,
    RgbaColor,
    check_invariants,
)
from designlint.model import CaptureMode

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def no_network(monkeypatch):
    """Forbid any socket creation for the duration of a test."""

    def _deny(*args, **kwargs):
        raise AssertionError("network access attempted during an offline test")

    monkeypatch.setattr(socket, "socket", _deny)
    monkeypatch.setattr(socket, "create_connection", _deny)
    yield


def make_style(**kwargs) -> ComputedStyle:
    defaults = dict(
        font_size_px=16.0,
        font_families=("Arial",),
        line_height_px=24.0,
        color=RgbaColor(0, 0, 0),
        background_color=RgbaColor(0, 0, 0, 0.0),
        text_align="left",
        margin=EdgeSizes(),
        padding=EdgeSizes(),
        display="block",
        opacity=1.0,
    )
    defaults.update(kwargs)
    return ComputedStyle(**defaults)


def make_node(
    node_id: str,
    tag: str,
    *,
    text: str | None = None,
    box: tuple[float, float, float, float] | None = None,
    style: ComputedStyle | None = None,
    children: list[ElementNode] | None = None,
    line_boxes: list[tuple[float, float, float, float]] | None = None,
) -> ElementNode:
    node = ElementNode(
        id=node_id,
        tag=tag,
        text=text,
        style=style or make_style(),
        box=BoundingBox(*box) if box else None,
        line_boxes=tuple(BoundingBox(*b) for b in line_boxes) if line_boxes else None,
    )
    for child in children or []:
        child.parent = node_id
        node.children.append(child)
    return node


def make_snapshot(
    root: ElementNode,
    *,
    source: str = "test-page",
    viewport: tuple[int, int] = (1280, 800),
    ocr_lines: list[OcrLine] | None = None,
    screenshot_colors: list[RgbaColor] | None = None,
) -> PageSnapshot:
    snapshot = PageSnapshot(
        source_id=source,
        viewport=viewport,
        root=root,
        ocr_lines=tuple(ocr_lines) if ocr_lines else None,
        screenshot_colors=tuple(screenshot_colors) if screenshot_colors else None,
    )
    check_invariants(snapshot)
    snapshot.capture_mode = (
        CaptureMode.RENDERED
        if any(n.box is not None for n in snapshot.iter_nodes())
        else CaptureMode.STATIC
    )
    return snapshot


_WORDS = (
    "amber", "birch", "cedar", "dune", "ember", "fjord", "grove", "heath",
    "inlet", "juniper", "knoll", "larch", "mesa", "nook", "osier", "pine",
    "quarry", "ridge", "slate", "tarn", "umber", "vale", "wold", "yarrow",
)


def words(n: int, salt: int) -> str:
    """Deterministic distinct-ish text: n words drawn starting at ``salt``."""
    return " ".join(_WORDS[(salt + i) % len(_WORDS)] + str((salt + i) // len(_WORDS))
                    for i in range(n))


def ocr_line(text: str, x: float, y: float, w: float, h: float,
             page: tuple[int, int] = (1000, 2000)) -> OcrLine:
    """An OCR line whose normalized quad covers the given page-px box."""
    pw, ph = page
    return OcrLine(
        text=text,
        vertices=(
            (x / pw, y / ph),
            ((x + w) / pw, y / ph),
            ((x + w) / pw, (y + h) / ph),
            (x / pw, (y + h) / ph),
        ),
        page_width=pw,
        page_height=ph,
    )
