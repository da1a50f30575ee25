"""CSS rule parsing: selectors, specificity, declarations, value parsing.

Selector support is deliberately narrow — tag, .class, #id, descendant
combinators, and comma groups — so cascade resolution stays auditable.
Anything else is skipped with a note.
"""

from __future__ import annotations

import colorsys
import re
from dataclasses import dataclass

from ..color.names import lookup as named_color
from ..model import RgbaColor

_COMPOUND_RE = re.compile(r"^([a-zA-Z][a-zA-Z0-9-]*)?((?:[.#][\w-]+)*)$")
_UNSUPPORTED_CHARS = re.compile(r"[\[\]:>+~*()]")


@dataclass(frozen=True)
class CompoundSelector:
    """One tag/.class/#id compound."""

    tag: str | None = None
    id: str | None = None
    classes: tuple[str, ...] = ()

    def matches(self, tag: str, node_id: str | None, classes: tuple[str, ...]) -> bool:
        if self.tag is not None and self.tag != tag:
            return False
        if self.id is not None and self.id != node_id:
            return False
        return all(c in classes for c in self.classes)


@dataclass(frozen=True)
class Selector:
    """Descendant chain of compounds; the last one is the subject."""

    compounds: tuple[CompoundSelector, ...]
    raw: str

    def specificity(self) -> tuple[int, int, int]:
        ids = sum(1 for c in self.compounds if c.id is not None)
        classes = sum(len(c.classes) for c in self.compounds)
        tags = sum(1 for c in self.compounds if c.tag is not None)
        return (ids, classes, tags)


@dataclass
class CssRule:
    """One parsed rule, with cascade bookkeeping."""

    selector: Selector
    declarations: dict[str, str]
    specificity: tuple[int, int, int]
    source_order: int
    important: frozenset[str] = frozenset()
    origin: str = "author"  # ua | author | inline | patch


def parse_selector(raw: str) -> Selector | None:
    """Parse one selector (no comma groups); None when unsupported."""
    raw = raw.strip()
    if not raw or _UNSUPPORTED_CHARS.search(raw):
        return None
    compounds = []
    for part in raw.split():
        m = _COMPOUND_RE.match(part)
        if not m:
            return None
        tag = m.group(1).lower() if m.group(1) else None
        sel_id = None
        classes: list[str] = []
        for token in re.findall(r"[.#][\w-]+", m.group(2) or ""):
            if token.startswith("#"):
                sel_id = token[1:]
            else:
                classes.append(token[1:])
        if tag is None and sel_id is None and not classes:
            return None
        compounds.append(CompoundSelector(tag=tag, id=sel_id, classes=tuple(classes)))
    if not compounds:
        return None
    return Selector(compounds=tuple(compounds), raw=raw)


def parse_declarations(body: str) -> tuple[dict[str, str], frozenset[str]]:
    """Parse 'prop: value; ...' into a map plus the !important property set."""
    declarations: dict[str, str] = {}
    important: set[str] = set()
    for chunk in body.split(";"):
        if ":" not in chunk:
            continue
        prop, _, value = chunk.partition(":")
        prop = prop.strip().lower()
        value = value.strip()
        if not prop or not value:
            continue
        if value.lower().endswith("!important"):
            value = value[: -len("!important")].rstrip().rstrip("!").rstrip()
            important.add(prop)
        declarations[prop] = value
    return declarations, frozenset(important)


_COMMENT_RE = re.compile(r"/\*.*?\*/", re.DOTALL)


def parse_stylesheet(
    css_text: str, start_order: int = 0, origin: str = "author"
) -> tuple[list[CssRule], list[str]]:
    """Parse a stylesheet into rules (one per comma-group member) plus notes."""
    text = _COMMENT_RE.sub(" ", css_text)
    rules: list[CssRule] = []
    notes: list[str] = []
    order = start_order
    i = 0
    while i < len(text):
        brace = text.find("{", i)
        if brace < 0:
            break
        selector_text = text[i:brace].strip()
        end = text.find("}", brace)
        if end < 0:
            notes.append("unterminated rule block dropped")
            break
        body = text[brace + 1 : end]
        i = end + 1
        if selector_text.startswith("@"):
            notes.append(f"at-rule '{selector_text.split()[0]}' ignored")
            # Nested blocks of at-rules are not interpreted; skip their body
            # which was already consumed up to the first '}'.
            continue
        declarations, important = parse_declarations(body)
        if not declarations:
            continue
        for raw_sel in selector_text.split(","):
            selector = parse_selector(raw_sel)
            if selector is None:
                if raw_sel.strip():
                    notes.append(f"unsupported selector '{raw_sel.strip()}' ignored")
                continue
            rules.append(
                CssRule(
                    selector=selector,
                    declarations=dict(declarations),
                    specificity=selector.specificity(),
                    source_order=order,
                    important=important,
                    origin=origin,
                )
            )
            order += 1
    return rules, notes


# --- value parsing ---------------------------------------------------------

_HEX_RE = re.compile(r"^#([0-9a-fA-F]{3,8})$")
_FUNC_RE = re.compile(r"^(rgba?|hsla?)\(([^)]*)\)$", re.IGNORECASE)


def _channel(token: str) -> int:
    token = token.strip()
    if token.endswith("%"):
        return round(float(token[:-1]) * 255 / 100)
    return round(float(token))


def parse_color(value: str) -> RgbaColor | None:
    """Parse a CSS color value; None when unrecognized."""
    value = value.strip()
    if not value:
        return None
    lowered = value.lower()
    if lowered == "transparent":
        return RgbaColor(0, 0, 0, 0.0)
    if lowered == "currentcolor":
        return None

    m = _HEX_RE.match(value)
    if m:
        digits = m.group(1)
        if len(digits) in (3, 4):
            digits = "".join(d * 2 for d in digits)
        if len(digits) == 6:
            digits += "ff"
        if len(digits) != 8:
            return None
        r, g, b, a = (int(digits[i : i + 2], 16) for i in (0, 2, 4, 6))
        return RgbaColor(r, g, b, round(a / 255, 4))

    m = _FUNC_RE.match(value)
    if m:
        func = m.group(1).lower()
        parts = [p for p in re.split(r"[,\s/]+", m.group(2).strip()) if p]
        try:
            if func.startswith("rgb") and len(parts) in (3, 4):
                r, g, b = (_channel(p) for p in parts[:3])
                a = _parse_alpha(parts[3]) if len(parts) == 4 else 1.0
                return RgbaColor(_clamp8(r), _clamp8(g), _clamp8(b), a)
            if func.startswith("hsl") and len(parts) in (3, 4):
                h = float(parts[0].rstrip("deg")) % 360 / 360
                s = float(parts[1].rstrip("%")) / 100
                l = float(parts[2].rstrip("%")) / 100
                a = _parse_alpha(parts[3]) if len(parts) == 4 else 1.0
                r, g, b = colorsys.hls_to_rgb(h, l, s)
                return RgbaColor(round(r * 255), round(g * 255), round(b * 255), a)
        except ValueError:
            return None
    return named_color(value)


def _parse_alpha(token: str) -> float:
    token = token.strip()
    if token.endswith("%"):
        return max(0.0, min(1.0, float(token[:-1]) / 100))
    return max(0.0, min(1.0, float(token)))


def _clamp8(v: int) -> int:
    return max(0, min(255, v))


def parse_length(
    value: str,
    *,
    em_base: float = 16.0,
    rem_base: float = 16.0,
    percent_base: float | None = None,
) -> float | None:
    """Resolve a CSS length to px; None when the unit is unsupported."""
    value = value.strip().lower()
    if not value:
        return None
    try:
        if value.endswith("px"):
            return float(value[:-2])
        if value.endswith("pt"):
            return float(value[:-2]) * 4 / 3
        if value.endswith("rem"):
            return float(value[:-3]) * rem_base
        if value.endswith("em"):
            return float(value[:-2]) * em_base
        if value.endswith("%"):
            if percent_base is None:
                return None
            return float(value[:-1]) / 100 * percent_base
        return float(value) if float(value) == 0 else None
    except ValueError:
        return None


#: Sides in CSS shorthand order.
SHORTHAND_SIDES = ("top", "right", "bottom", "left")


def expand_box_shorthand(value: str) -> dict[str, str] | None:
    """Expand 'margin: a [b [c [d]]]' into per-side values."""
    parts = value.split()
    if not 1 <= len(parts) <= 4:
        return None
    if len(parts) == 1:
        t = r = b = l = parts[0]
    elif len(parts) == 2:
        t, r = parts
        b, l = t, r
    elif len(parts) == 3:
        t, r, b = parts
        l = r
    else:
        t, r, b, l = parts
    return {"top": t, "right": r, "bottom": b, "left": l}
