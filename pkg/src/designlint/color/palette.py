"""Role-based color palette generation from a seed color.

A palette assigns one color to each UI role (primary, on_primary, surface,
outline, ...) by picking tones (CIE L*) along the seed's hue at role-specific
chroma. Every (x, on_x) pair is guaranteed legible: tones are pushed outward
until the pair clears the recommended Lc threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import InvariantError
from ..model import RgbaColor
from .apca import RECOMMENDED_LC, apca_lc
from .space import ACHROMATIC_CHROMA, grey_level, lch_to_rgb, rgb_to_lch


class PaletteMode(str, Enum):
    LIGHT = "light"
    DARK = "dark"


#: Seed used when a page exposes no chromatic color anywhere.
DEFAULT_SEED = RgbaColor(63, 81, 181)

# Fixed family for the error role, independent of the seed.
_ERROR_HUE = 27.0
_ERROR_CHROMA = 75.0

PALETTE_ROLES = (
    "primary",
    "on_primary",
    "primary_container",
    "on_primary_container",
    "secondary",
    "on_secondary",
    "secondary_container",
    "on_secondary_container",
    "tertiary",
    "on_tertiary",
    "tertiary_container",
    "on_tertiary_container",
    "error",
    "on_error",
    "error_container",
    "on_error_container",
    "surface",
    "on_surface",
    "outline",
)

#: (base role, text-on-base role) pairs bound by the contrast invariant.
CONTRAST_PAIRS = (
    ("primary", "on_primary"),
    ("primary_container", "on_primary_container"),
    ("secondary", "on_secondary"),
    ("secondary_container", "on_secondary_container"),
    ("tertiary", "on_tertiary"),
    ("tertiary_container", "on_tertiary_container"),
    ("error", "on_error"),
    ("error_container", "on_error_container"),
    ("surface", "on_surface"),
)

_LIGHT_TONES = {
    "primary": 40, "on_primary": 100,
    "primary_container": 90, "on_primary_container": 10,
    "secondary": 40, "on_secondary": 100,
    "secondary_container": 90, "on_secondary_container": 10,
    "tertiary": 40, "on_tertiary": 100,
    "tertiary_container": 90, "on_tertiary_container": 10,
    "error": 40, "on_error": 100,
    "error_container": 90, "on_error_container": 10,
    "surface": 98, "on_surface": 10,
    "outline": 50,
}

_DARK_TONES = {
    "primary": 80, "on_primary": 20,
    "primary_container": 30, "on_primary_container": 90,
    "secondary": 80, "on_secondary": 20,
    "secondary_container": 30, "on_secondary_container": 90,
    "tertiary": 80, "on_tertiary": 20,
    "tertiary_container": 30, "on_tertiary_container": 90,
    "error": 80, "on_error": 20,
    "error_container": 30, "on_error_container": 90,
    "surface": 6, "on_surface": 90,
    "outline": 60,
}


@dataclass(frozen=True)
class ColorPalette:
    """Role -> color map generated from a seed, in light or dark mode."""

    mode: PaletteMode
    roles: dict[str, RgbaColor]
    seed: RgbaColor

    def __post_init__(self) -> None:
        missing = [r for r in PALETTE_ROLES if r not in self.roles]
        if missing:
            raise InvariantError(f"palette missing roles: {missing}")
        for base, on in CONTRAST_PAIRS:
            lc = apca_lc(self.roles[on], self.roles[base])
            if abs(lc) < RECOMMENDED_LC:
                raise InvariantError(
                    f"palette pair ({base}, {on}) has |Lc|={abs(lc):.1f} < {RECOMMENDED_LC}"
                )


def detect_mode(page_background: RgbaColor) -> PaletteMode:
    """Light when the background's grey value is at least 0.5, else dark."""
    return PaletteMode.LIGHT if grey_level(page_background) >= 0.5 else PaletteMode.DARK


def pick_primary_color(
    dominants: list[RgbaColor],
    declared_colors: list[RgbaColor] | None = None,
) -> RgbaColor:
    """First non-achromatic dominant color; falls back to declared CSS colors
    (most frequent first), then to :data:`DEFAULT_SEED`."""
    for color in dominants:
        if rgb_to_lch(color)[1] >= ACHROMATIC_CHROMA:
            return color
    for color in declared_colors or ():
        if rgb_to_lch(color)[1] >= ACHROMATIC_CHROMA:
            return color
    return DEFAULT_SEED


def _family_chroma(seed_chroma: float) -> dict[str, float]:
    return {
        "primary": seed_chroma,
        "secondary": seed_chroma / 3,
        "tertiary": seed_chroma * 2 / 3,
        "error": _ERROR_CHROMA,
        "neutral": min(6.0, seed_chroma / 12),
    }


def _role_family(role: str) -> str:
    for family in ("primary", "secondary", "tertiary", "error"):
        if role == family or role.endswith(family) or f"{family}_" in role:
            return family
    return "neutral"


def _adjust_pair(
    base_tone: float,
    on_tone: float,
    make_base,
    make_on,
) -> tuple[RgbaColor, RgbaColor]:
    """Push the pair's tones outward until |Lc| clears the threshold."""
    on_lighter = on_tone >= base_tone
    base = make_base(base_tone)
    on = make_on(on_tone)
    for _ in range(200):
        if abs(apca_lc(on, base)) >= RECOMMENDED_LC:
            return base, on
        moved = False
        if on_lighter and on_tone < 100:
            on_tone = min(100.0, on_tone + 2)
            moved = True
        elif not on_lighter and on_tone > 0:
            on_tone = max(0.0, on_tone - 2)
            moved = True
        elif on_lighter and base_tone > 0:
            base_tone = max(0.0, base_tone - 2)
            moved = True
        elif not on_lighter and base_tone < 100:
            base_tone = min(100.0, base_tone + 2)
            moved = True
        base = make_base(base_tone)
        on = make_on(on_tone)
        if not moved:
            break
        # Alternate: give the base tone a nudge too, so pairs converge to
        # balanced tones instead of pure black/white text.
        if abs(apca_lc(on, base)) < RECOMMENDED_LC:
            if on_lighter and base_tone > 0:
                base_tone = max(0.0, base_tone - 2)
            elif not on_lighter and base_tone < 100:
                base_tone = min(100.0, base_tone + 2)
            base = make_base(base_tone)
    return base, on


def generate_palette(seed: RgbaColor, mode: PaletteMode) -> ColorPalette:
    """Build the full role palette for ``seed`` in ``mode``."""
    _, seed_chroma, seed_hue = rgb_to_lch(seed)
    chromas = _family_chroma(seed_chroma)
    hues = {
        "primary": seed_hue,
        "secondary": seed_hue,
        "tertiary": (seed_hue + 60.0) % 360.0,
        "error": _ERROR_HUE,
        "neutral": seed_hue,
    }
    tones = _LIGHT_TONES if mode is PaletteMode.LIGHT else _DARK_TONES

    roles: dict[str, RgbaColor] = {}
    for role in PALETTE_ROLES:
        family = _role_family(role)
        roles[role] = lch_to_rgb(float(tones[role]), chromas[family], hues[family])

    for base_role, on_role in CONTRAST_PAIRS:
        family = _role_family(base_role)
        c, h = chromas[family], hues[family]
        base, on = _adjust_pair(
            float(tones[base_role]),
            float(tones[on_role]),
            lambda t, c=c, h=h: lch_to_rgb(t, c, h),
            lambda t, c=c, h=h: lch_to_rgb(t, c, h),
        )
        roles[base_role] = base
        roles[on_role] = on

    return ColorPalette(mode=mode, roles=roles, seed=seed)
