"""Signed perceptual lightness contrast (APCA-W3, the WCAG 3 candidate).

Returns the Lc score for text on a solidly colored background. The score is
polarity-dependent: positive for dark text on a light background, negative
for light text on a dark background. Both inputs must be opaque; composite
translucent colors first (see :func:`designlint.color.effective_background`).
"""

from __future__ import annotations

from ..model import RgbaColor

# APCA-W3 0.1.9 constants (the published 0.0.98G-4g coefficient set).
_EXPONENT = 2.4
_COEFFS = (0.2126729, 0.7151522, 0.0721750)
_BLACK_THRESHOLD = 0.022
_BLACK_CLIP = 1.414
_DELTA_Y_MIN = 0.0005
_BOW_TEXT, _BOW_BG = 0.57, 0.56
_WOB_TEXT, _WOB_BG = 0.62, 0.65
_SCALE = 1.14
_LOW_CLIP = 0.1
_OFFSET = 0.027

#: Minimum |Lc| recommended for legible text.
RECOMMENDED_LC = 74.7


def screen_luminance(color: RgbaColor) -> float:
    """APCA's estimate of luminance as emitted by a typical display."""
    return sum(
        coeff * (channel / 255.0) ** _EXPONENT
        for coeff, channel in zip(_COEFFS, color.rgb)
    )


def _soft_clamp_black(y: float) -> float:
    if y < _BLACK_THRESHOLD:
        return y + (_BLACK_THRESHOLD - y) ** _BLACK_CLIP
    return y


def apca_lc(text: RgbaColor, background: RgbaColor) -> float:
    """Signed Lc contrast of ``text`` over ``background``."""
    y_text = _soft_clamp_black(screen_luminance(text))
    y_bg = _soft_clamp_black(screen_luminance(background))

    if abs(y_text - y_bg) < _DELTA_Y_MIN:
        return 0.0

    if y_bg > y_text:
        contrast = (y_bg**_BOW_BG - y_text**_BOW_TEXT) * _SCALE
        if contrast < _LOW_CLIP:
            return 0.0
        return (contrast - _OFFSET) * 100.0

    contrast = (y_bg**_WOB_BG - y_text**_WOB_TEXT) * _SCALE
    if contrast > -_LOW_CLIP:
        return 0.0
    return (contrast + _OFFSET) * 100.0
