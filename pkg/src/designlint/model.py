"""Snapshot data model: the canonical audited unit shared by every module.

A page snapshot is an element tree with fully resolved styles (absolute px,
rgba), optional geometry, optional OCR lines, and optional dominant
screenshot colors. Snapshots are treated as immutable once validated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator

from .errors import InvariantError, SchemaError

#: Tags never meant to be visible on a rendered page.
METADATA_TAGS = frozenset({"script", "style", "link", "meta", "head", "title"})

TEXT_ALIGN_VALUES = ("left", "right", "center", "justify", "start", "end")


class CaptureMode(str, Enum):
    """How a snapshot was captured: static (styles only) or rendered (with geometry)."""

    STATIC = "static"
    RENDERED = "rendered"


@dataclass(frozen=True)
class RgbaColor:
    r: int
    g: int
    b: int
    a: float = 1.0

    def __post_init__(self) -> None:
        for name in ("r", "g", "b"):
            v = getattr(self, name)
            if not isinstance(v, int) or not 0 <= v <= 255:
                raise InvariantError(f"color channel {name}={v!r} outside 0-255")
        if not 0.0 <= self.a <= 1.0:
            raise InvariantError(f"alpha {self.a!r} outside [0,1]")

    @property
    def rgb(self) -> tuple[int, int, int]:
        return (self.r, self.g, self.b)

    def css(self) -> str:
        if self.a >= 1.0:
            return f"rgb({self.r}, {self.g}, {self.b})"
        return f"rgba({self.r}, {self.g}, {self.b}, {round(self.a, 3)})"


@dataclass(frozen=True)
class BoundingBox:
    x: float
    y: float
    width: float
    height: float

    def __post_init__(self) -> None:
        if self.width < 0 or self.height < 0:
            raise InvariantError(f"box dimensions must be >= 0, got {self.width}x{self.height}")

    @property
    def left(self) -> float:
        return self.x

    @property
    def right(self) -> float:
        return self.x + self.width

    @property
    def top(self) -> float:
        return self.y

    @property
    def bottom(self) -> float:
        return self.y + self.height

    @property
    def x_center(self) -> float:
        return self.x + self.width / 2

    @property
    def y_center(self) -> float:
        return self.y + self.height / 2

    @property
    def area(self) -> float:
        return self.width * self.height

    def intersection_area(self, other: "BoundingBox") -> float:
        w = min(self.right, other.right) - max(self.left, other.left)
        h = min(self.bottom, other.bottom) - max(self.top, other.top)
        if w <= 0 or h <= 0:
            return 0.0
        return w * h


@dataclass(frozen=True)
class EdgeSizes:
    """Per-side px sizes for margin or padding."""

    top: float = 0.0
    right: float = 0.0
    bottom: float = 0.0
    left: float = 0.0

    def sides(self) -> tuple[float, float, float, float]:
        return (self.top, self.right, self.bottom, self.left)


@dataclass(frozen=True)
class ComputedStyle:
    """The audited subset of an element's computed style, fully resolved."""

    font_size_px: float = 16.0
    font_families: tuple[str, ...] = ("Times New Roman",)
    line_height_px: float | None = None
    color: RgbaColor = RgbaColor(0, 0, 0)
    background_color: RgbaColor = RgbaColor(0, 0, 0, 0.0)
    border_color: RgbaColor | None = None
    text_align: str = "left"
    margin: EdgeSizes = EdgeSizes()
    padding: EdgeSizes = EdgeSizes()
    display: str = "block"
    opacity: float = 1.0

    def __post_init__(self) -> None:
        if self.font_size_px <= 0:
            raise InvariantError(f"font_size_px must be > 0, got {self.font_size_px}")
        if not 0.0 <= self.opacity <= 1.0:
            raise InvariantError(f"opacity {self.opacity} outside [0,1]")
        if self.text_align not in TEXT_ALIGN_VALUES:
            raise InvariantError(f"unknown text_align {self.text_align!r}")
        for edges in (self.margin, self.padding):
            if any(v < 0 for v in edges.sides()):
                raise InvariantError("edge sizes must be >= 0 after resolution")


@dataclass(frozen=True)
class OcrLine:
    """One recognized text line with its normalized quad."""

    text: str
    vertices: tuple[tuple[float, float], ...]
    page_width: int
    page_height: int

    def __post_init__(self) -> None:
        if not self.text:
            raise InvariantError("OCR line text must be non-empty")
        if len(self.vertices) != 4:
            raise InvariantError(f"OCR quad needs 4 vertices, got {len(self.vertices)}")


@dataclass
class ElementNode:
    """One element of the page tree."""

    id: str
    tag: str
    classes: tuple[str, ...] = ()
    parent: str | None = None
    children: list["ElementNode"] = field(default_factory=list)
    text: str | None = None
    style: ComputedStyle = field(default_factory=ComputedStyle)
    box: BoundingBox | None = None
    line_boxes: tuple[BoundingBox, ...] | None = None

    def iter(self) -> Iterator["ElementNode"]:
        """Preorder traversal of this subtree."""
        yield self
        for child in self.children:
            yield from child.iter()


@dataclass
class PageSnapshot:
    """Serialized page state consumed by the auditor."""

    source_id: str
    viewport: tuple[int, int]
    root: ElementNode
    ocr_lines: tuple[OcrLine, ...] | None = None
    screenshot_colors: tuple[RgbaColor, ...] | None = None
    capture_mode: CaptureMode = CaptureMode.STATIC
    notes: tuple[str, ...] = ()
    # Set by static ingest so a CSS patch can re-resolve the cascade;
    # never serialized.
    static_source: Any = field(default=None, repr=False, compare=False)

    def iter_nodes(self) -> Iterator[ElementNode]:
        return self.root.iter()

    def node_index(self) -> dict[str, ElementNode]:
        return {node.id: node for node in self.iter_nodes()}

    def parent_of(self, node_id: str) -> ElementNode | None:
        node = self.node_index().get(node_id)
        if node is None or node.parent is None:
            return None
        return self.node_index().get(node.parent)


def _require(raw: dict, key: str, path: str) -> Any:
    if not isinstance(raw, dict):
        raise SchemaError(f"expected object, got {type(raw).__name__}", path)
    if key not in raw:
        raise SchemaError(f"missing required field '{key}'", f"{path}.{key}" if path else key)
    return raw[key]


def _parse_color(raw: Any, path: str) -> RgbaColor:
    if not isinstance(raw, dict):
        raise SchemaError("color must be an object with r,g,b,a", path)
    try:
        return RgbaColor(
            r=int(_require(raw, "r", path)),
            g=int(_require(raw, "g", path)),
            b=int(_require(raw, "b", path)),
            a=float(raw.get("a", 1.0)),
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad color value: {exc}", path) from None


def _parse_box(raw: Any, path: str) -> BoundingBox:
    if not isinstance(raw, dict):
        raise SchemaError("box must be an object with x,y,width,height", path)
    try:
        return BoundingBox(
            x=float(_require(raw, "x", path)),
            y=float(_require(raw, "y", path)),
            width=float(_require(raw, "width", path)),
            height=float(_require(raw, "height", path)),
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad box value: {exc}", path) from None


def _parse_edges(raw: Any, path: str, notes: list[str]) -> EdgeSizes:
    if not isinstance(raw, dict):
        raise SchemaError("edge sizes must be an object with top,right,bottom,left", path)
    values = {}
    for side in ("top", "right", "bottom", "left"):
        try:
            v = float(raw.get(side, 0.0))
        except (TypeError, ValueError):
            raise SchemaError(f"bad edge size for {side}", path) from None
        if v < 0:
            notes.append(f"negative {path}.{side} ({v}px) clamped to 0")
            v = 0.0
        values[side] = v
    return EdgeSizes(**values)


def _parse_style(raw: Any, path: str, notes: list[str]) -> ComputedStyle:
    if not isinstance(raw, dict):
        raise SchemaError("style must be an object", path)
    families = _require(raw, "fontFamilies", path)
    if not isinstance(families, list) or not all(isinstance(f, str) for f in families):
        raise SchemaError("fontFamilies must be a list of strings", f"{path}.fontFamilies")
    line_height = raw.get("lineHeightPx")
    border = raw.get("borderColor")
    try:
        return ComputedStyle(
            font_size_px=float(_require(raw, "fontSizePx", path)),
            font_families=tuple(families),
            line_height_px=float(line_height) if line_height is not None else None,
            color=_parse_color(_require(raw, "color", path), f"{path}.color"),
            background_color=_parse_color(
                _require(raw, "backgroundColor", path), f"{path}.backgroundColor"
            ),
            border_color=_parse_color(border, f"{path}.borderColor") if border is not None else None,
            text_align=str(raw.get("textAlign", "left")),
            margin=_parse_edges(raw.get("margin", {}), f"{path}.margin", notes),
            padding=_parse_edges(raw.get("padding", {}), f"{path}.padding", notes),
            display=str(raw.get("display", "block")),
            opacity=float(raw.get("opacity", 1.0)),
        )
    except InvariantError:
        raise
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad style value: {exc}", path) from None


def _parse_node(raw: Any, path: str, parent_id: str | None, notes: list[str]) -> ElementNode:
    node_id = _require(raw, "id", path)
    tag = _require(raw, "tag", path)
    if not isinstance(node_id, str) or not node_id:
        raise SchemaError("node id must be a non-empty string", f"{path}.id")
    if not isinstance(tag, str) or not tag:
        raise SchemaError("node tag must be a non-empty string", f"{path}.tag")
    classes = raw.get("classes", [])
    if not isinstance(classes, list) or not all(isinstance(c, str) for c in classes):
        raise SchemaError("classes must be a list of strings", f"{path}.classes")
    text = raw.get("text")
    if text is not None and not isinstance(text, str):
        raise SchemaError("text must be a string", f"{path}.text")

    box = raw.get("box")
    line_boxes = raw.get("lineBoxes")
    if line_boxes is not None and text is None:
        raise SchemaError("lineBoxes present without text", f"{path}.lineBoxes")

    node = ElementNode(
        id=node_id,
        tag=tag.lower(),
        classes=tuple(classes),
        parent=parent_id,
        text=text,
        style=_parse_style(_require(raw, "style", path), f"{path}.style", notes),
        box=_parse_box(box, f"{path}.box") if box is not None else None,
        line_boxes=tuple(
            _parse_box(b, f"{path}.lineBoxes[{i}]") for i, b in enumerate(line_boxes)
        )
        if line_boxes is not None
        else None,
    )
    children = raw.get("children", [])
    if not isinstance(children, list):
        raise SchemaError("children must be a list", f"{path}.children")
    for i, child in enumerate(children):
        node.children.append(_parse_node(child, f"{path}.children[{i}]", node_id, notes))
    return node


def _parse_ocr_line(raw: Any, path: str) -> OcrLine:
    text = _require(raw, "text", path)
    vertices = _require(raw, "vertices", path)
    if not isinstance(vertices, list) or len(vertices) != 4:
        raise SchemaError("vertices must be a list of 4 [x,y] pairs", f"{path}.vertices")
    try:
        verts = tuple((float(v[0]), float(v[1])) for v in vertices)
    except (TypeError, ValueError, IndexError):
        raise SchemaError("bad vertex pair", f"{path}.vertices") from None
    return OcrLine(
        text=str(text),
        vertices=verts,
        page_width=int(_require(raw, "pageWidth", path)),
        page_height=int(_require(raw, "pageHeight", path)),
    )


def validate_snapshot(raw: dict) -> PageSnapshot:
    """Parse and validate a raw snapshot document.

    Fills ``capture_mode`` from the presence of geometry. Raises
    :class:`SchemaError` for shape problems and :class:`InvariantError` for
    model violations such as duplicate element ids.
    """
    if not isinstance(raw, dict):
        raise SchemaError(f"snapshot must be an object, got {type(raw).__name__}")
    allowed = {"source", "viewport", "root", "ocrLines", "screenshotColors"}
    extra = set(raw) - allowed
    if extra:
        raise SchemaError(f"unexpected top-level keys: {sorted(extra)}")

    source = _require(raw, "source", "")
    viewport_raw = _require(raw, "viewport", "")
    width = int(_require(viewport_raw, "width", "viewport"))
    height = int(_require(viewport_raw, "height", "viewport"))
    if width <= 0 or height <= 0:
        raise InvariantError(f"viewport dimensions must be > 0, got {width}x{height}")

    notes: list[str] = []
    root = _parse_node(_require(raw, "root", ""), "root", None, notes)

    ocr_lines = None
    if raw.get("ocrLines") is not None:
        lines = raw["ocrLines"]
        if not isinstance(lines, list):
            raise SchemaError("ocrLines must be a list", "ocrLines")
        ocr_lines = tuple(_parse_ocr_line(l, f"ocrLines[{i}]") for i, l in enumerate(lines))

    screenshot_colors = None
    if raw.get("screenshotColors") is not None:
        colors = raw["screenshotColors"]
        if not isinstance(colors, list):
            raise SchemaError("screenshotColors must be a list", "screenshotColors")
        screenshot_colors = tuple(
            _parse_color(c, f"screenshotColors[{i}]") for i, c in enumerate(colors)
        )

    snapshot = PageSnapshot(
        source_id=str(source),
        viewport=(width, height),
        root=root,
        ocr_lines=ocr_lines,
        screenshot_colors=screenshot_colors,
        notes=tuple(notes),
    )
    check_invariants(snapshot)
    snapshot.capture_mode = (
        CaptureMode.RENDERED
        if any(node.box is not None for node in snapshot.iter_nodes())
        else CaptureMode.STATIC
    )
    return snapshot


def check_invariants(snapshot: PageSnapshot) -> None:
    """Raise InvariantError on duplicate ids or broken parent links."""
    seen: set[str] = set()
    for node in snapshot.iter_nodes():
        if node.id in seen:
            raise InvariantError(f"duplicate id {node.id}")
        seen.add(node.id)
        for child in node.children:
            if child.parent != node.id:
                raise InvariantError(
                    f"child {child.id} has parent {child.parent!r}, expected {node.id!r}"
                )
        if node.line_boxes is not None and node.text is None:
            raise InvariantError(f"element {node.id} has line_boxes but no text")


def _color_to_dict(color: RgbaColor) -> dict:
    return {"r": color.r, "g": color.g, "b": color.b, "a": color.a}


def _box_to_dict(box: BoundingBox) -> dict:
    return {"x": box.x, "y": box.y, "width": box.width, "height": box.height}


def _edges_to_dict(edges: EdgeSizes) -> dict:
    return {"top": edges.top, "right": edges.right, "bottom": edges.bottom, "left": edges.left}


def _style_to_dict(style: ComputedStyle) -> dict:
    out: dict[str, Any] = {
        "fontSizePx": style.font_size_px,
        "fontFamilies": list(style.font_families),
    }
    if style.line_height_px is not None:
        out["lineHeightPx"] = style.line_height_px
    out["color"] = _color_to_dict(style.color)
    out["backgroundColor"] = _color_to_dict(style.background_color)
    if style.border_color is not None:
        out["borderColor"] = _color_to_dict(style.border_color)
    out["textAlign"] = style.text_align
    out["margin"] = _edges_to_dict(style.margin)
    out["padding"] = _edges_to_dict(style.padding)
    out["display"] = style.display
    out["opacity"] = style.opacity
    return out


def _node_to_dict(node: ElementNode) -> dict:
    out: dict[str, Any] = {"id": node.id, "tag": node.tag, "classes": list(node.classes)}
    if node.text is not None:
        out["text"] = node.text
    out["style"] = _style_to_dict(node.style)
    if node.box is not None:
        out["box"] = _box_to_dict(node.box)
    if node.line_boxes is not None:
        out["lineBoxes"] = [_box_to_dict(b) for b in node.line_boxes]
    out["children"] = [_node_to_dict(c) for c in node.children]
    return out


def snapshot_to_dict(snapshot: PageSnapshot) -> dict:
    """Serialize a snapshot back to the wire format (round-trips validate_snapshot)."""
    out: dict[str, Any] = {
        "source": snapshot.source_id,
        "viewport": {"width": snapshot.viewport[0], "height": snapshot.viewport[1]},
        "root": _node_to_dict(snapshot.root),
    }
    if snapshot.ocr_lines is not None:
        out["ocrLines"] = [
            {
                "text": line.text,
                "vertices": [[x, y] for x, y in line.vertices],
                "pageWidth": line.page_width,
                "pageHeight": line.page_height,
            }
            for line in snapshot.ocr_lines
        ]
    if snapshot.screenshot_colors is not None:
        out["screenshotColors"] = [_color_to_dict(c) for c in snapshot.screenshot_colors]
    return out


def visible_elements(snapshot: PageSnapshot) -> list[ElementNode]:
    """Elements meant to be visible, in document order.

    Excludes metadata tags, zero-opacity and display:none elements, and
    elements whose box (when present) has zero width or height. Descendants
    of an excluded element are pruned with it.
    """
    out: list[ElementNode] = []

    def walk(node: ElementNode) -> None:
        if node.tag in METADATA_TAGS:
            return
        if node.style.opacity == 0:
            return
        if node.style.display == "none":
            return
        if node.box is not None and (node.box.width == 0 or node.box.height == 0):
            return
        out.append(node)
        for child in node.children:
            walk(child)

    walk(snapshot.root)
    return out
