"""Color primitives: APCA vs the independent oracle, compositing, naming,
quantization, palettes, mode detection."""

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from designlint.color import (
    ACHROMATIC_CHROMA,
    CONTRAST_PAIRS,
    DEFAULT_SEED,
    PALETTE_ROLES,
    RECOMMENDED_LC,
    PaletteMode,
    apca_lc,
    composite_over,
    detect_mode,
    dominant_colors,
    effective_background,
    generate_palette,
    lch_to_rgb,
    name_color,
    nearest_name,
    pick_primary_color,
    rgb_to_lch,
)
from designlint.color.names import NAMED_COLORS
from designlint.errors import EmptyImageError
from designlint.model import RgbaColor

from apca_oracle import reference_lc
from conftest import make_node, make_snapshot, make_style

BLACK = RgbaColor(0, 0, 0)
WHITE = RgbaColor(255, 255, 255)

# >= 20 color-pair vectors spanning both polarities and near-threshold cases.
APCA_VECTORS = [
    ((0x88, 0x88, 0x88), (0xFF, 0xFF, 0xFF)),
    ((0xFF, 0xFF, 0xFF), (0x88, 0x88, 0x88)),
    ((0x00, 0x00, 0x00), (0xAA, 0xAA, 0xAA)),
    ((0xAA, 0xAA, 0xAA), (0x00, 0x00, 0x00)),
    ((0x11, 0x22, 0x33), (0xDD, 0xEE, 0xFF)),
    ((0xDD, 0xEE, 0xFF), (0x11, 0x22, 0x33)),
    ((0x11, 0x22, 0x33), (0x44, 0x44, 0x44)),
    ((0x44, 0x44, 0x44), (0x11, 0x22, 0x33)),
    ((0x00, 0x00, 0x00), (0xFF, 0xFF, 0xFF)),
    ((0xFF, 0xFF, 0xFF), (0x00, 0x00, 0x00)),
    ((0xFF, 0xFF, 0xFF), (0xFF, 0xFF, 0x00)),
    ((0x00, 0x00, 0x00), (0xFF, 0xFF, 0x00)),
    ((0xFF, 0xFF, 0x00), (0x00, 0x00, 0xFF)),
    ((0x99, 0x99, 0x99), (0xFF, 0xFF, 0xFF)),
    ((0x66, 0x33, 0xCC), (0xF5, 0xF5, 0xF5)),
    ((0xF5, 0xF5, 0xF5), (0x66, 0x33, 0xCC)),
    ((0x12, 0x80, 0x12), (0xFF, 0xFF, 0xFF)),
    ((0xC0, 0xC0, 0xC0), (0x40, 0x40, 0x40)),
    ((0x40, 0x40, 0x40), (0xC0, 0xC0, 0xC0)),
    ((0x33, 0x66, 0x99), (0xEE, 0xEE, 0xEE)),
    ((0xEE, 0xEE, 0xEE), (0x33, 0x66, 0x99)),
    ((0x80, 0x80, 0x80), (0x82, 0x82, 0x82)),
]


class TestApca:
    def test_identical_colors_zero(self):
        assert apca_lc(RgbaColor(10, 20, 30), RgbaColor(10, 20, 30)) == 0.0

    def test_black_on_white_magnitude(self):
        expected = reference_lc((0, 0, 0), (255, 255, 255))
        assert expected == pytest.approx(106.04, abs=0.01)
        assert apca_lc(BLACK, WHITE) == pytest.approx(106.0, abs=0.1)

    def test_white_on_black_magnitude(self):
        assert apca_lc(WHITE, BLACK) == pytest.approx(-108.0, abs=0.5)

    @pytest.mark.parametrize("text,background", APCA_VECTORS)
    def test_oracle_equivalence(self, text, background):
        mine = apca_lc(RgbaColor(*text), RgbaColor(*background))
        theirs = reference_lc(text, background)
        assert mine == pytest.approx(theirs, abs=0.1)

    @settings(max_examples=150, deadline=None)
    @given(
        r1=st.integers(0, 255), g1=st.integers(0, 255), b1=st.integers(0, 255),
        r2=st.integers(0, 255), g2=st.integers(0, 255), b2=st.integers(0, 255),
    )
    def test_polarity_antisymmetry(self, r1, g1, b1, r2, g2, b2):
        a, b = RgbaColor(r1, g1, b1), RgbaColor(r2, g2, b2)
        forward, backward = apca_lc(a, b), apca_lc(b, a)
        if forward != 0.0 or backward != 0.0:
            assert (forward > 0) != (backward > 0) or (forward == 0.0) or (backward == 0.0)


class TestEffectiveBackground:
    def test_first_opaque_ancestor(self):
        p = make_node("p1", "p", text="x")
        div = make_node("d", "div", children=[p],
                        style=make_style(background_color=RgbaColor(0, 0, 255)))
        snapshot = make_snapshot(make_node("r", "body", children=[div]))
        assert effective_background(p, snapshot) == RgbaColor(0, 0, 255)

    def test_default_white(self):
        p = make_node("p1", "p", text="x")
        snapshot = make_snapshot(make_node("r", "body", children=[p]))
        assert effective_background(p, snapshot) == WHITE

    def test_alpha_compositing(self):
        p = make_node("p1", "p", text="x",
                      style=make_style(background_color=RgbaColor(0, 0, 0, 0.5)))
        snapshot = make_snapshot(make_node("r", "body", children=[p]))
        bg = effective_background(p, snapshot)
        for channel in bg.rgb:
            assert abs(channel - 128) <= 1


class TestNames:
    def test_exact_entry(self):
        assert nearest_name(RgbaColor(255, 0, 0)) == "red"
        assert name_color(RgbaColor(255, 255, 255)) == "white"

    def test_totality_and_determinism_samples(self):
        rng = random.Random(7)
        for _ in range(200):
            c = RgbaColor(rng.randrange(256), rng.randrange(256), rng.randrange(256))
            assert nearest_name(c) == nearest_name(c)
            assert nearest_name(c) in NAMED_COLORS

    def test_nearest_matches_exhaustive_search(self):
        # Independent nearest-neighbor in the same Lab space over the table.
        from designlint.color import rgb_to_lab

        rng = random.Random(11)
        for _ in range(50):
            c = RgbaColor(rng.randrange(256), rng.randrange(256), rng.randrange(256))
            l, a, b = rgb_to_lab(c)
            best = min(
                sorted(NAMED_COLORS.items()),
                key=lambda kv: (
                    (lambda tl, ta, tb: (l - tl) ** 2 + (a - ta) ** 2 + (b - tb) ** 2)(
                        *rgb_to_lab(RgbaColor(*kv[1]))
                    )
                ),
            )[0]
            assert nearest_name(c) == best

    def test_table_matches_css_keyword_set(self):
        pytest.importorskip("matplotlib")
        from matplotlib.colors import CSS4_COLORS

        assert len(NAMED_COLORS) == 148
        for name, hexv in CSS4_COLORS.items():
            h = hexv.lstrip("#")
            rgb = tuple(int(h[i : i + 2], 16) for i in (0, 2, 4))
            assert NAMED_COLORS[name] == rgb


class TestDominantColors:
    def test_solid_image_single_bucket(self):
        img = np.full((8, 8, 3), (255, 0, 0), dtype=np.uint8)
        colors = dominant_colors(img, k=5)
        assert colors[0] == RgbaColor(255, 0, 0)
        assert len(colors) == 1  # nothing left to split

    def test_half_red_half_blue(self):
        img = np.array([[(255, 0, 0)] * 10] * 5 + [[(0, 0, 255)] * 10] * 5, dtype=np.uint8)
        colors = dominant_colors(img, k=5)
        top_two = {c.rgb for c in colors[:2]}
        # Exact histogram oracle: the two true populations are red and blue.
        for expected in ((255, 0, 0), (0, 0, 255)):
            assert any(
                all(abs(a - b) <= 8 for a, b in zip(got, expected)) for got in top_two
            )

    def test_k_three_returns_three(self):
        rng = np.random.default_rng(3)
        img = rng.integers(0, 256, size=(32, 32, 3), dtype=np.uint8)
        colors = dominant_colors(img, k=3)
        assert len(colors) == 3

    def test_population_ordering(self):
        img = np.array(
            [[(250, 0, 0)] * 30 + [(0, 250, 0)] * 10 + [(0, 0, 250)] * 5], dtype=np.uint8
        )
        colors = dominant_colors(img, k=3)
        assert colors[0].r > 200  # red has the largest population

    def test_empty_raster_raises(self):
        with pytest.raises(EmptyImageError):
            dominant_colors(np.zeros((0, 3)), k=5)


class TestPrimaryAndMode:
    def test_skip_achromatics(self):
        dominants = [WHITE, RgbaColor(0x33, 0x66, 0xCC), RgbaColor(128, 128, 128)]
        assert pick_primary_color(dominants) == RgbaColor(0x33, 0x66, 0xCC)

    def test_declared_fallback(self):
        greys = [WHITE, RgbaColor(40, 40, 40)]
        declared = [RgbaColor(0xAA, 0x00, 0x00)]
        assert pick_primary_color(greys, declared) == RgbaColor(0xAA, 0x00, 0x00)

    def test_terminal_default_seed(self):
        assert pick_primary_color([WHITE, BLACK], [RgbaColor(7, 7, 7)]) == DEFAULT_SEED

    def test_mode_detection(self):
        assert detect_mode(WHITE) is PaletteMode.LIGHT
        assert detect_mode(RgbaColor(0x11, 0x11, 0x11)) is PaletteMode.DARK

    def test_five_fixture_backgrounds(self):
        # Mirrors the two-light / three-dark split of the showcase pages.
        backgrounds = {
            "A": RgbaColor(250, 250, 245),
            "B": RgbaColor(24, 26, 34),
            "C": RgbaColor(16, 42, 40),
            "D": RgbaColor(236, 240, 244),
            "E": RgbaColor(40, 12, 48),
        }
        modes = {k: detect_mode(v) for k, v in backgrounds.items()}
        assert modes["A"] is PaletteMode.LIGHT and modes["D"] is PaletteMode.LIGHT
        assert all(modes[k] is PaletteMode.DARK for k in ("B", "C", "E"))


class TestPalette:
    def test_role_completeness(self):
        palette = generate_palette(RgbaColor(63, 81, 181), PaletteMode.LIGHT)
        assert set(palette.roles) == set(PALETTE_ROLES)

    def test_achromatic_seed_keeps_seed_roles_achromatic(self):
        palette = generate_palette(RgbaColor(128, 128, 128), PaletteMode.LIGHT)
        for role, color in palette.roles.items():
            if "error" in role:
                continue  # the error family is a fixed red-hue family
            assert rgb_to_lch(color)[1] < ACHROMATIC_CHROMA, role

    def test_light_mode_polarity(self):
        rng = random.Random(5)
        for _ in range(10):
            seed = RgbaColor(rng.randrange(256), rng.randrange(256), rng.randrange(256))
            palette = generate_palette(seed, PaletteMode.LIGHT)
            surface_l = rgb_to_lch(palette.roles["surface"])[0]
            on_surface_l = rgb_to_lch(palette.roles["on_surface"])[0]
            assert surface_l > on_surface_l

    def test_contrast_invariant_50_random_seeds(self):
        rng = random.Random(42)
        for _ in range(50):
            seed = RgbaColor(rng.randrange(256), rng.randrange(256), rng.randrange(256))
            for mode in (PaletteMode.LIGHT, PaletteMode.DARK):
                palette = generate_palette(seed, mode)
                for base, on in CONTRAST_PAIRS:
                    lc = apca_lc(palette.roles[on], palette.roles[base])
                    assert abs(lc) >= RECOMMENDED_LC, (seed, mode, base, on, lc)

    def test_hue_preserved_for_chromatic_seed(self):
        seed = RgbaColor(40, 90, 200)
        _, _, seed_hue = rgb_to_lch(seed)
        palette = generate_palette(seed, PaletteMode.LIGHT)
        _, chroma_val, hue = rgb_to_lch(palette.roles["primary"])
        assert chroma_val >= ACHROMATIC_CHROMA
        assert abs((hue - seed_hue + 180) % 360 - 180) < 12


class TestCompositeAndGamut:
    def test_composite_over_opaque_identity(self):
        assert composite_over(RgbaColor(10, 20, 30), WHITE) == RgbaColor(10, 20, 30)

    def test_gamut_mapping_stays_in_range(self):
        for tone_value in (5, 40, 95):
            color = lch_to_rgb(tone_value, 120.0, 300.0)
            assert all(0 <= ch <= 255 for ch in color.rgb)
