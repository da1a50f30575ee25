"""OCR-to-element matching: recovers rendered line structure for text checks.

Match kinds: one element spanning one line (1:1), a paragraph wrapping over
several lines (1:N), and several inline elements sharing one line (N:1).
Scores combine box proximity with a substring-friendly edit-distance
similarity so paragraph fragments still score high.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import DegenerateQuadError, InvariantError
from .model import BoundingBox, ElementNode, OcrLine, PageSnapshot, visible_elements

#: Boxes farther apart than this never match.
PROXIMITY_LIMIT_PX = 50.0
#: Score weights (proximity, similarity).
SCORE_WEIGHTS = (0.5, 0.5)
#: Pairs scoring below this are not considered.
MIN_MATCH_SCORE = 0.5
#: A line must overlap an element by this fraction of its own area to be
#: aggregated into a multi-line match.
CONTAINMENT_FRACTION = 0.8


class MatchKind(str, Enum):
    ONE_TO_ONE = "one_to_one"
    ONE_TO_MANY = "one_to_many"
    MANY_TO_ONE = "many_to_one"


def convert_ocr_response(raw) -> list[OcrLine]:
    """Convert common OCR API response shapes into the native line format.

    Accepts, per line: the native shape ({text, vertices, pageWidth,
    pageHeight}), vision-API-style entries ({text|description,
    boundingPoly/normalizedVertices as [{x, y}, ...]} with page dims beside
    them), or absolute-pixel entries ({text, bbox: [x0, y0, x1, y1],
    pageWidth, pageHeight}). Top-level shapes: a plain list, or
    {"pages": [{"width", "height", "lines": [...]}]}.
    """
    entries: list[tuple[dict, int | None, int | None]] = []
    if isinstance(raw, dict) and "pages" in raw:
        for page in raw["pages"]:
            width = int(page.get("width", 0)) or None
            height = int(page.get("height", 0)) or None
            for line in page.get("lines", []):
                entries.append((line, width, height))
    elif isinstance(raw, list):
        entries = [(line, None, None) for line in raw]
    else:
        raise InvariantError("unrecognized OCR response shape")

    out: list[OcrLine] = []
    for line, page_w, page_h in entries:
        text = line.get("text") or line.get("description") or ""
        width = int(line.get("pageWidth") or line.get("page_width") or page_w or 0)
        height = int(line.get("pageHeight") or line.get("page_height") or page_h or 0)
        if width <= 0 or height <= 0:
            raise InvariantError(f"OCR line {text[:30]!r} is missing page dimensions")

        if "vertices" in line and isinstance(line["vertices"], list):
            vertices = tuple((float(v[0]), float(v[1])) for v in line["vertices"])
        elif "bbox" in line:
            x0, y0, x1, y1 = (float(v) for v in line["bbox"])
            vertices = (
                (x0 / width, y0 / height), (x1 / width, y0 / height),
                (x1 / width, y1 / height), (x0 / width, y1 / height),
            )
        else:
            poly = line.get("boundingPoly") or {}
            points = poly.get("normalizedVertices") or line.get("normalizedVertices")
            if not points:
                absolute = poly.get("vertices")
                if not absolute:
                    raise InvariantError(f"OCR line {text[:30]!r} has no geometry")
                points = [
                    {"x": p.get("x", 0) / width, "y": p.get("y", 0) / height}
                    for p in absolute
                ]
            vertices = tuple(
                (float(p.get("x", 0.0)), float(p.get("y", 0.0))) for p in points[:4]
            )
        out.append(
            OcrLine(text=text, vertices=vertices, page_width=width, page_height=height)
        )
    return out


@dataclass(frozen=True)
class ScaledLine:
    """An OCR line in page pixel coordinates."""

    index: int
    text: str
    box: BoundingBox


@dataclass
class LineMatch:
    kind: MatchKind
    element_ids: list[str]
    line_indices: list[int]
    score: float

    def __post_init__(self) -> None:
        ne, nl = len(self.element_ids), len(self.line_indices)
        if self.kind is MatchKind.ONE_TO_ONE and (ne != 1 or nl != 1):
            raise InvariantError(f"one_to_one match must be 1 element / 1 line, got {ne}/{nl}")
        if self.kind is MatchKind.ONE_TO_MANY and (ne != 1 or nl < 2):
            raise InvariantError(f"one_to_many match must be 1 element / >=2 lines, got {ne}/{nl}")
        if self.kind is MatchKind.MANY_TO_ONE and (ne < 2 or nl != 1):
            raise InvariantError(f"many_to_one match must be >=2 elements / 1 line, got {ne}/{nl}")
        if not 0.0 <= self.score <= 1.0:
            raise InvariantError(f"match score {self.score} outside [0,1]")


@dataclass
class MatchResult:
    matches: list[LineMatch]
    lines: list[ScaledLine]
    unmatched_element_ids: list[str] = field(default_factory=list)
    unmatched_line_indices: list[int] = field(default_factory=list)

    def lines_for_element(self, element_id: str) -> list[str]:
        """Whitespace-normalized text of the lines matched to an element."""
        for match in self.matches:
            if element_id in match.element_ids:
                if match.kind is MatchKind.MANY_TO_ONE:
                    # The line is shared; each element contributes its own text,
                    # so report the single shared line.
                    return [" ".join(self.lines[match.line_indices[0]].text.split())]
                ordered = sorted(
                    match.line_indices,
                    key=lambda i: (self.lines[i].box.top, self.lines[i].box.left),
                )
                return [" ".join(self.lines[i].text.split()) for i in ordered]
        return []


def scale_ocr_lines(
    lines: list[OcrLine] | tuple[OcrLine, ...], canvas_w: float, canvas_h: float
) -> list[ScaledLine]:
    """Map normalized OCR quads onto the page canvas.

    Each vertex maps through scaling multipliers canvas/page per axis; the
    output box is the axis-aligned hull of the scaled quad.
    """
    if canvas_w <= 0 or canvas_h <= 0:
        raise ValueError(f"canvas dimensions must be > 0, got {canvas_w}x{canvas_h}")
    out = []
    for index, line in enumerate(lines):
        factor_x = canvas_w / line.page_width
        factor_y = canvas_h / line.page_height
        xs = [vx * line.page_width * factor_x for vx, _ in line.vertices]
        ys = [vy * line.page_height * factor_y for _, vy in line.vertices]
        width = max(xs) - min(xs)
        height = max(ys) - min(ys)
        if width <= 0 or height <= 0:
            raise DegenerateQuadError(
                f"OCR line {index} ({line.text[:30]!r}) has a zero-area quad"
            )
        out.append(
            ScaledLine(
                index=index,
                text=line.text,
                box=BoundingBox(x=min(xs), y=min(ys), width=width, height=height),
            )
        )
    return out


def normalize_text(text: str) -> str:
    return " ".join(text.split()).casefold()


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance (two-row DP)."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (ca != cb),
                )
            )
        previous = current
    return previous[-1]


def text_similarity(a: str, b: str) -> float:
    """Edit-distance similarity normalized so substrings of longer text score high.

    The unavoidable length-difference edits are discounted and the remainder
    is normalized by the shorter length.
    """
    na, nb = normalize_text(a), normalize_text(b)
    if not na and not nb:
        return 1.0
    if not na or not nb:
        return 0.0
    shorter = min(len(na), len(nb))
    delta = abs(len(na) - len(nb))
    distance = edit_distance(na, nb)
    excess = max(0, distance - delta)
    return max(0.0, 1.0 - excess / shorter)


def _box_distance(a: BoundingBox, b: BoundingBox) -> float:
    dx = max(0.0, max(a.left, b.left) - min(a.right, b.right))
    dy = max(0.0, max(a.top, b.top) - min(a.bottom, b.bottom))
    return (dx * dx + dy * dy) ** 0.5


def proximity(a: BoundingBox, b: BoundingBox) -> float:
    """Overlap fraction when boxes intersect, distance decay (to 0 at 50px) otherwise."""
    inter = a.intersection_area(b)
    if inter > 0:
        smaller = min(a.area, b.area)
        return inter / smaller if smaller > 0 else 0.0
    distance = _box_distance(a, b)
    if distance >= PROXIMITY_LIMIT_PX:
        return 0.0
    return 1.0 - distance / PROXIMITY_LIMIT_PX


def match_score(element: ElementNode, line: ScaledLine) -> float:
    """Weighted mean of box proximity and text similarity."""
    if element.box is None or not element.text:
        return 0.0
    w_prox, w_sim = SCORE_WEIGHTS
    return w_prox * proximity(element.box, line.box) + w_sim * text_similarity(
        element.text, line.text
    )


def _containment(line: ScaledLine, element: ElementNode) -> float:
    if element.box is None or line.box.area == 0:
        return 0.0
    return line.box.intersection_area(element.box) / line.box.area


def match_elements_to_lines(
    snapshot: PageSnapshot, canvas: tuple[float, float] | None = None
) -> MatchResult:
    """Greedy assignment of OCR lines to text elements by descending score."""
    if not snapshot.ocr_lines:
        return MatchResult(matches=[], lines=[])
    if canvas is None:
        root_box = snapshot.root.box
        canvas = (
            (root_box.width, root_box.height)
            if root_box is not None and root_box.area > 0
            else (float(snapshot.viewport[0]), float(snapshot.viewport[1]))
        )
    lines = scale_ocr_lines(snapshot.ocr_lines, canvas[0], canvas[1])
    elements = [e for e in visible_elements(snapshot) if e.text and e.box is not None]

    scores: dict[tuple[str, int], float] = {}
    for element in elements:
        for line in lines:
            s = match_score(element, line)
            if s >= MIN_MATCH_SCORE:
                scores[(element.id, line.index)] = s

    doc_order = {e.id: i for i, e in enumerate(elements)}
    ranked = sorted(
        scores.items(), key=lambda kv: (-kv[1], doc_order[kv[0][0]], kv[0][1])
    )

    element_by_id = {e.id: e for e in elements}
    assigned: dict[str, list[int]] = {}
    line_owner: dict[int, str] = {}
    for (eid, lidx), _ in ranked:
        if eid in assigned or lidx in line_owner:
            continue
        assigned[eid] = [lidx]
        line_owner[lidx] = eid

    # Aggregate wrapped paragraphs: add free lines contained in the element
    # whose text reads as part of it (1:N).
    for eid, line_indices in assigned.items():
        element = element_by_id[eid]
        extras = [
            line
            for line in lines
            if line.index not in line_owner
            and _containment(line, element) >= CONTAINMENT_FRACTION
            and text_similarity(element.text or "", line.text) >= 0.8
        ]
        if not extras:
            continue
        candidate = line_indices + [l.index for l in extras]
        ordered = sorted(candidate, key=lambda i: (lines[i].box.top, lines[i].box.left))
        concat = " ".join(lines[i].text for i in ordered)
        if text_similarity(element.text or "", concat) >= 0.8:
            for line in extras:
                line_owner[line.index] = eid
            assigned[eid] = ordered

    # Inline runs sharing one line (N:1).
    shared: dict[int, list[str]] = {}
    for eid2 in [e.id for e in elements if e.id not in assigned]:
        element = element_by_id[eid2]
        best = None
        for line in lines:
            owner = line_owner.get(line.index)
            if owner is None or len(assigned.get(owner, ())) != 1:
                continue
            s = scores.get((eid2, line.index))
            if s is None:
                continue
            if element.box is not None and element.box.intersection_area(line.box) <= 0:
                continue
            if best is None or s > best[1]:
                best = (line.index, s)
        if best is not None:
            shared.setdefault(best[0], []).append(eid2)

    matches: list[LineMatch] = []
    consumed_lines: set[int] = set()
    for element in elements:
        line_indices = assigned.get(element.id)
        if not line_indices:
            continue
        extra_elements = shared.get(line_indices[0], []) if len(line_indices) == 1 else []
        member_scores = [scores[(element.id, i)] for i in line_indices if (element.id, i) in scores]
        if extra_elements:
            eids = sorted([element.id] + extra_elements, key=lambda x: doc_order[x])
            member_scores += [scores[(e, line_indices[0])] for e in extra_elements]
            matches.append(
                LineMatch(
                    kind=MatchKind.MANY_TO_ONE,
                    element_ids=eids,
                    line_indices=list(line_indices),
                    score=sum(member_scores) / len(member_scores),
                )
            )
        elif len(line_indices) > 1:
            matches.append(
                LineMatch(
                    kind=MatchKind.ONE_TO_MANY,
                    element_ids=[element.id],
                    line_indices=list(line_indices),
                    score=sum(member_scores) / len(member_scores) if member_scores else 1.0,
                )
            )
        else:
            matches.append(
                LineMatch(
                    kind=MatchKind.ONE_TO_ONE,
                    element_ids=[element.id],
                    line_indices=list(line_indices),
                    score=member_scores[0] if member_scores else 1.0,
                )
            )
        consumed_lines.update(line_indices)

    matched_elements = {eid for m in matches for eid in m.element_ids}
    return MatchResult(
        matches=matches,
        lines=lines,
        unmatched_element_ids=[e.id for e in elements if e.id not in matched_elements],
        unmatched_line_indices=[l.index for l in lines if l.index not in consumed_lines],
    )
