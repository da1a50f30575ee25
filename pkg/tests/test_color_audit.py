"""Contrast findings, saturated backgrounds, scheme summary, harmony plan."""

from designlint.checks.color import (
    check_contrast,
    check_saturated_background,
    contrast_fix,
    harmony_findings,
    suggest_harmony,
    summarize_color_scheme,
)
from designlint.color import RECOMMENDED_LC, apca_lc, rgb_to_lch
from designlint.descriptor import Descriptor
from designlint.findings import DesignIssue, DesignPass, Severity
from designlint.groups import group_elements
from designlint.ingest import ingest_html
from designlint.model import RgbaColor

from conftest import make_node, make_snapshot, make_style


def audit_page(html):
    snapshot = ingest_html(html)
    groups = group_elements(snapshot)
    return snapshot, groups


class TestContrast:
    def test_white_on_yellow_must_fix(self):
        snapshot, groups = audit_page(
            "<style>.n{background-color:#ffff00;color:#ffffff}</style>"
            "<body><p class=\"n\">warning text</p></body>"
        )
        findings = check_contrast(groups, snapshot)
        issues = [f for f in findings if isinstance(f, DesignIssue)]
        assert len(issues) == 1
        assert issues[0].severity is Severity.MUST_FIX

    def test_black_on_white_passes(self):
        snapshot, groups = audit_page("<body><p>plain text</p></body>")
        findings = [f for f in check_contrast(groups, snapshot) if f.group_key == "p"]
        assert all(isinstance(f, DesignPass) for f in findings)

    def test_suggestions_rescore_above_threshold(self):
        snapshot, groups = audit_page(
            "<style>.a{color:#999999} .b{background-color:#ffff00;color:#ffffff}"
            " .c{background-color:#777777;color:#888888}</style>"
            "<body><p class=\"a\">grey on white</p><p class=\"b\">white on yellow</p>"
            "<p class=\"c\">mid on mid</p></body>"
        )
        issues = [f for f in check_contrast(groups, snapshot) if isinstance(f, DesignIssue)]
        assert len(issues) == 3
        index = snapshot.node_index()
        from designlint.color import composite_over, effective_background
        from designlint.ingest.css import parse_color

        for issue in issues:
            element = index[issue.member_ids[0]]
            text = composite_over(element.style.color, effective_background(element, snapshot))
            background = effective_background(element, snapshot)
            new_text = text
            new_bg = background
            for s in issue.suggestions:
                if s.css_property == "color":
                    new_text = parse_color(s.new_value)
                elif s.css_property == "background-color":
                    new_bg = parse_color(s.new_value)
            # Applying the preferred (first) suggestion alone must clear the bar.
            first = issue.suggestions[0]
            if first.css_property == "color":
                assert abs(apca_lc(parse_color(first.new_value), background)) >= RECOMMENDED_LC
            else:
                assert abs(apca_lc(text, parse_color(first.new_value))) >= RECOMMENDED_LC
            # Applying every suggestion together must also clear it.
            assert abs(apca_lc(new_text, new_bg)) >= RECOMMENDED_LC

    def test_purity(self):
        snapshot, groups = audit_page(
            "<style>.a{color:#aaaaaa}</style><body><p class=\"a\">grey text</p></body>"
        )
        one = [f.explanation for f in check_contrast(groups, snapshot)]
        two = [f.explanation for f in check_contrast(groups, snapshot)]
        assert one == two


class TestSaturatedBackground:
    def test_pure_blue_flagged(self):
        snapshot, groups = audit_page(
            "<style>div{background-color:#0000ff}</style>"
            "<body><div><p>content</p></div></body>"
        )
        flags = check_saturated_background(groups, snapshot)
        assert len(flags) == 1
        assert flags[0].background == RgbaColor(0, 0, 255)

    def test_near_white_passes(self):
        snapshot, groups = audit_page(
            "<style>div{background-color:#f7f7f7}</style>"
            "<body><div><p>content</p></div></body>"
        )
        assert check_saturated_background(groups, snapshot) == []

    def test_threshold_boundary_by_chroma_oracle(self):
        # Classify strictly by the documented cutoff: chroma > 60 at mid tone.
        for color in (RgbaColor(200, 60, 60), RgbaColor(160, 140, 130), RgbaColor(60, 90, 200)):
            tone, chroma, _ = rgb_to_lch(color)
            html = (
                f"<style>div{{background-color:rgb({color.r},{color.g},{color.b})}}</style>"
                "<body><div><p>content</p></div></body>"
            )
            snapshot, groups = audit_page(html)
            flagged = bool(check_saturated_background(groups, snapshot))
            expected = chroma > 60 and 25 <= tone <= 75
            assert flagged == expected, (color, tone, chroma)


class TestSchemeSummary:
    def test_minimal_scheme_two_colors(self):
        snapshot, groups = audit_page(
            "<style>body{background-color:#ffffff;color:#000000}</style>"
            "<body><p>text</p></body>"
        )
        scheme = summarize_color_scheme(snapshot, Descriptor("offline"))
        assert scheme.distinct_count == 2
        names = {e["name"] for e in scheme.scheme["background"]}
        assert "white" in names

    def test_too_many_colors_flagged(self):
        colors = ["#%02x%02x%02x" % (16 * i, 32, 255 - 16 * i) for i in range(15)]
        css = " ".join(
            f".c{i}{{color:{c}}}" for i, c in enumerate(colors)
        )
        body = "".join(f"<p class=\"c{i}\">t{i}</p>" for i in range(15))
        snapshot, groups = audit_page(f"<style>{css}</style><body>{body}</body>")
        scheme = summarize_color_scheme(snapshot, Descriptor("offline"))
        assert scheme.distinct_count >= 15
        assert "too many" in scheme.summary.lower() or any(
            "too many" in note for note in []
        )

    def test_interactive_bucket(self):
        snapshot, groups = audit_page(
            "<style>button{background-color:rgb(168,180,255)}</style>"
            "<body><button>Go</button></body>"
        )
        scheme = summarize_color_scheme(snapshot, Descriptor("offline"))
        assert any(
            e["css"] == "rgb(168, 180, 255)" for e in scheme.scheme["interactive"]
        )


class TestHarmony:
    def test_blue_yellow_clash_gets_light_surface_dark_text(self):
        html = (
            "<style>body{background-color:#0044ff;color:#ffff00}</style>"
            "<body><p>clashing page</p></body>"
        )
        snapshot, groups = audit_page(html)
        descriptor = Descriptor("offline")
        scheme = summarize_color_scheme(snapshot, descriptor)
        harmony = suggest_harmony(snapshot, groups, descriptor, scheme)
        surface = harmony.palette.roles["surface"]
        on_surface = harmony.palette.roles["on_surface"]
        surface_tone, _, surface_hue = rgb_to_lch(surface)
        seed_hue = rgb_to_lch(RgbaColor(0, 68, 255))[2]
        # dark page -> dark mode; the suggested scheme keeps the blue family
        assert abs((surface_hue - seed_hue + 180) % 360 - 180) < 25 or rgb_to_lch(surface)[1] < 8
        assert abs(apca_lc(on_surface, surface)) >= RECOMMENDED_LC

    def test_logo_seed_hue_preserved(self):
        logo_blue = RgbaColor(20, 90, 200)
        root = make_node(
            "r", "body",
            children=[make_node("p1", "p", text="text")],
            style=make_style(background_color=RgbaColor(255, 255, 255)),
        )
        snapshot = make_snapshot(root, screenshot_colors=[RgbaColor(250, 250, 250), logo_blue])
        groups = group_elements(snapshot)
        descriptor = Descriptor("offline")
        scheme = summarize_color_scheme(snapshot, descriptor)
        harmony = suggest_harmony(snapshot, groups, descriptor, scheme)
        _, _, seed_hue = rgb_to_lch(logo_blue)
        _, _, primary_hue = rgb_to_lch(harmony.palette.roles["primary"])
        assert abs((primary_hue - seed_hue + 180) % 360 - 180) <= 10
        assert harmony.palette.seed == logo_blue

    def test_assignment_pairs_always_legible(self, fixtures_dir):
        for name in ("w1.html", "w2.html", "seeded/site3.html", "seeded/site5.html"):
            snapshot = ingest_html((fixtures_dir / name).read_text())
            groups = group_elements(snapshot)
            descriptor = Descriptor("offline")
            scheme = summarize_color_scheme(snapshot, descriptor)
            harmony = suggest_harmony(snapshot, groups, descriptor, scheme)
            roles = harmony.palette.roles
            context = {}
            index = snapshot.node_index()
            group_of = {}
            for g in groups:
                for m in g.member_ids:
                    group_of[m] = g.group_key

            def walk(node, bg):
                entries = harmony.assignments.get(group_of.get(node.id, ""), [])
                for e in entries:
                    if e.css_property == "background-color":
                        bg = e.color
                color_entry = next((e for e in entries if e.css_property == "color"), None)
                if color_entry is not None and node.text:
                    assert abs(apca_lc(color_entry.color, bg)) >= RECOMMENDED_LC, (
                        name, node.id, color_entry, bg)
                for child in node.children:
                    walk(child, bg)

            walk(snapshot.root, roles["surface"])

    def test_harmony_only_touches_color_properties(self, fixtures_dir):
        snapshot = ingest_html((fixtures_dir / "w1.html").read_text())
        groups = group_elements(snapshot)
        descriptor = Descriptor("offline")
        scheme = summarize_color_scheme(snapshot, descriptor)
        harmony = suggest_harmony(snapshot, groups, descriptor, scheme)
        allowed = {"color", "background-color", "border-color"}
        for entries in harmony.assignments.values():
            assert {e.css_property for e in entries} <= allowed

    def test_holistic_single_entry(self):
        snapshot, groups = audit_page(
            "<style>div{background-color:#0000ff}</style>"
            "<body><div><p>saturated</p></div></body>"
        )
        descriptor = Descriptor("offline")
        scheme = summarize_color_scheme(snapshot, descriptor)
        flags = check_saturated_background(groups, snapshot)
        harmony = suggest_harmony(snapshot, groups, descriptor, scheme)
        findings = harmony_findings(flags, scheme, harmony)
        assert len(findings) == 1
        assert isinstance(findings[0], DesignIssue)
        assert findings[0].group_key == "page"


class TestContrastFix:
    def test_text_preferred_when_feasible(self):
        new_text, new_bg = contrast_fix(RgbaColor(0x99, 0x99, 0x99), RgbaColor(255, 255, 255))
        assert new_text is not None
        assert abs(apca_lc(new_text, RgbaColor(255, 255, 255))) >= RECOMMENDED_LC

    def test_white_on_yellow_needs_background_change(self):
        new_text, new_bg = contrast_fix(RgbaColor(255, 255, 255), RgbaColor(255, 255, 0))
        assert new_text is None  # text is already at the light extreme
        assert new_bg is not None
        assert abs(apca_lc(RgbaColor(255, 255, 255), new_bg)) >= RECOMMENDED_LC
