"""Color primitives: contrast, compositing, naming, quantization, palettes."""

from __future__ import annotations

from ..model import ElementNode, PageSnapshot, RgbaColor
from .apca import RECOMMENDED_LC, apca_lc, screen_luminance
from .names import NAMED_COLORS, lookup, nearest_name
from .palette import (
    CONTRAST_PAIRS,
    DEFAULT_SEED,
    PALETTE_ROLES,
    ColorPalette,
    PaletteMode,
    detect_mode,
    generate_palette,
    pick_primary_color,
)
from .quantize import dominant_colors
from .space import (
    ACHROMATIC_CHROMA,
    chroma,
    grey_level,
    is_achromatic,
    lch_to_rgb,
    rgb_to_lab,
    rgb_to_lch,
    tone,
)

#: What the page shows behind everything else.
PAGE_DEFAULT_BACKGROUND = RgbaColor(255, 255, 255)


def composite_over(top: RgbaColor, bottom: RgbaColor) -> RgbaColor:
    """Source-over compositing of ``top`` onto an (assumed opaque) ``bottom``."""
    a = top.a
    return RgbaColor(
        round(top.r * a + bottom.r * (1 - a)),
        round(top.g * a + bottom.g * (1 - a)),
        round(top.b * a + bottom.b * (1 - a)),
        1.0,
    )


def effective_background(element: ElementNode, snapshot: PageSnapshot) -> RgbaColor:
    """The color actually behind ``element``: its own or the nearest ancestor
    background with alpha > 0, alpha-composited down to the page default."""
    chain: list[RgbaColor] = []
    index = snapshot.node_index()
    node: ElementNode | None = element
    while node is not None:
        bg = node.style.background_color
        if bg.a > 0:
            chain.append(bg)
            if bg.a >= 1.0:
                break
        node = index.get(node.parent) if node.parent else None

    result = PAGE_DEFAULT_BACKGROUND
    for bg in reversed(chain):
        result = composite_over(bg, result)
    return result


def effective_text_color(element: ElementNode, snapshot: PageSnapshot) -> RgbaColor:
    """Element text color composited over its effective background."""
    bg = effective_background(element, snapshot)
    return composite_over(element.style.color, bg)


def name_color(color: RgbaColor, descriptor=None) -> str:
    """Interpretable name for a color.

    Deterministic mode picks the nearest entry of the shipped name table; a
    remote descriptor, when configured, supplies a richer prose name.
    """
    if descriptor is not None and descriptor.remote_enabled:
        from ..descriptor import DescriptorKind, DescriptorRequest

        response = descriptor.describe(
            DescriptorRequest(
                kind=DescriptorKind.COLOR_NAME,
                payload={"color": {"r": color.r, "g": color.g, "b": color.b, "a": color.a}},
            )
        )
        return response.summary
    return nearest_name(color)


__all__ = [
    "ACHROMATIC_CHROMA",
    "CONTRAST_PAIRS",
    "DEFAULT_SEED",
    "NAMED_COLORS",
    "PAGE_DEFAULT_BACKGROUND",
    "PALETTE_ROLES",
    "RECOMMENDED_LC",
    "ColorPalette",
    "PaletteMode",
    "apca_lc",
    "chroma",
    "composite_over",
    "detect_mode",
    "dominant_colors",
    "effective_background",
    "effective_text_color",
    "generate_palette",
    "grey_level",
    "is_achromatic",
    "lch_to_rgb",
    "lookup",
    "name_color",
    "nearest_name",
    "pick_primary_color",
    "rgb_to_lab",
    "rgb_to_lch",
    "screen_luminance",
    "tone",
]
