"""sRGB <-> CIELAB/CIELCh conversions (D65) and gamut mapping.

Tone throughout this package means CIE L* on the 0-100 scale. Chroma below
ACHROMATIC_CHROMA counts as achromatic (greys, near-white, near-black).
"""

from __future__ import annotations

import math

from ..model import RgbaColor

# D65 reference white, 2-degree observer.
_XN, _YN, _ZN = 0.95047, 1.0, 1.08883

#: CIELCh chroma below which a color is treated as achromatic.
ACHROMATIC_CHROMA = 8.0


def _srgb_to_linear(c: float) -> float:
    if c <= 0.04045:
        return c / 12.92
    return ((c + 0.055) / 1.055) ** 2.4


def _linear_to_srgb(c: float) -> float:
    if c <= 0.0031308:
        return 12.92 * c
    return 1.055 * c ** (1 / 2.4) - 0.055


def rgb_to_xyz(color: RgbaColor) -> tuple[float, float, float]:
    r = _srgb_to_linear(color.r / 255.0)
    g = _srgb_to_linear(color.g / 255.0)
    b = _srgb_to_linear(color.b / 255.0)
    x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b
    y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b
    z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b
    return x, y, z


def _f(t: float) -> float:
    if t > (6 / 29) ** 3:
        return t ** (1 / 3)
    return t / (3 * (6 / 29) ** 2) + 4 / 29


def _f_inv(t: float) -> float:
    if t > 6 / 29:
        return t**3
    return 3 * (6 / 29) ** 2 * (t - 4 / 29)


def rgb_to_lab(color: RgbaColor) -> tuple[float, float, float]:
    x, y, z = rgb_to_xyz(color)
    fx, fy, fz = _f(x / _XN), _f(y / _YN), _f(z / _ZN)
    l = 116 * fy - 16
    a = 500 * (fx - fy)
    b = 200 * (fy - fz)
    return l, a, b


def lab_to_rgb_unclamped(l: float, a: float, b: float) -> tuple[float, float, float]:
    """Lab -> sRGB without clamping; channels may fall outside [0,1]."""
    fy = (l + 16) / 116
    fx = fy + a / 500
    fz = fy - b / 200
    x = _XN * _f_inv(fx)
    y = _YN * _f_inv(fy)
    z = _ZN * _f_inv(fz)
    r = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z
    g = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z
    bb = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z
    return _linear_to_srgb(r), _linear_to_srgb(g), _linear_to_srgb(bb)


def rgb_to_lch(color: RgbaColor) -> tuple[float, float, float]:
    """Return (tone L*, chroma C*, hue degrees in [0, 360))."""
    l, a, b = rgb_to_lab(color)
    c = math.hypot(a, b)
    h = math.degrees(math.atan2(b, a)) % 360.0
    return l, c, h


def _lch_to_rgb_unclamped(l: float, c: float, h: float) -> tuple[float, float, float]:
    rad = math.radians(h)
    return lab_to_rgb_unclamped(l, c * math.cos(rad), c * math.sin(rad))


def _in_gamut(channels: tuple[float, float, float], eps: float = 1e-6) -> bool:
    return all(-eps <= v <= 1 + eps for v in channels)


def lch_to_rgb(l: float, c: float, h: float) -> RgbaColor:
    """LCh -> sRGB, reducing chroma toward 0 until the color fits the gamut."""
    l = min(100.0, max(0.0, l))
    channels = _lch_to_rgb_unclamped(l, c, h)
    if not _in_gamut(channels):
        lo, hi = 0.0, c
        for _ in range(24):
            mid = (lo + hi) / 2
            if _in_gamut(_lch_to_rgb_unclamped(l, mid, h)):
                lo = mid
            else:
                hi = mid
        channels = _lch_to_rgb_unclamped(l, lo, h)
    r, g, b = (min(1.0, max(0.0, v)) for v in channels)
    return RgbaColor(round(r * 255), round(g * 255), round(b * 255))


def chroma(color: RgbaColor) -> float:
    return rgb_to_lch(color)[1]


def tone(color: RgbaColor) -> float:
    return rgb_to_lch(color)[0]


def is_achromatic(color: RgbaColor) -> bool:
    return chroma(color) < ACHROMATIC_CHROMA


def grey_level(color: RgbaColor) -> float:
    """Perceived grey value in [0,1] (BT.601 luma)."""
    return (0.299 * color.r + 0.587 * color.g + 0.114 * color.b) / 255.0
