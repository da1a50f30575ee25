"""Text checks: role classification, font size/family thresholds, line rules."""

import pytest

from designlint.checks.text import (
    TextRole,
    check_font_family,
    check_font_size,
    check_line_length,
    check_line_spacing,
    classify_roles,
    modal_body_font_size,
)
from designlint.descriptor import Descriptor
from designlint.findings import DesignIssue, DesignPass, Severity, SkippedCheck
from designlint.fonts import FamilyClass, classify_family
from designlint.groups import group_elements
from designlint.ingest import ingest_html
from designlint.ocr import match_elements_to_lines

from conftest import make_node, make_snapshot, ocr_line


def page(html):
    snapshot = ingest_html(html)
    groups = group_elements(snapshot)
    roles = classify_roles(groups, snapshot)
    return snapshot, groups, roles


def group(groups, key):
    return next(g for g in groups if g.group_key == key)


class TestRoles:
    def test_heading_tag_is_title(self):
        snapshot, groups, roles = page("<body><h2>Heading</h2><p>body text here</p></body>")
        assert roles[group(groups, "h2").group_key] is TextRole.TITLE

    def test_paragraph_is_body(self):
        snapshot, groups, roles = page(
            "<body><p>" + "word " * 40 + "</p></body>"
        )
        assert roles["p"] is TextRole.BODY

    def test_fantasy_span_is_decorative(self):
        snapshot, groups, roles = page(
            "<style>span{font-family: Papyrus, fantasy}</style><body><span>Hi!</span><p>body</p></body>"
        )
        assert roles["span"] is TextRole.DECORATIVE

    def test_large_text_is_title_by_scale(self):
        snapshot, groups, roles = page(
            "<style>.big{font-size:30px}</style>"
            "<body><span class=\"big\">Big display text!</span><p>normal body copy</p></body>"
        )
        assert roles["span.big"] is TextRole.TITLE  # 30 >= 1.5 * 16

    def test_classifier_rule_table_enumeration(self):
        # Deterministic verdicts for each class in the curated table.
        assert classify_family(("Georgia",)).family_class is FamilyClass.SERIF
        assert classify_family(("Open Sans",)).family_class is FamilyClass.SANS_SERIF
        assert classify_family(("Consolas",)).family_class is FamilyClass.MONOSPACE
        assert classify_family(("Papyrus", "fantasy")).family_class is FamilyClass.DECORATIVE
        assert classify_family(("NoSuchFace", "sans-serif")).family_class is FamilyClass.SANS_SERIF

    def test_unknown_family_suffix_heuristic(self):
        verdict = classify_family(("FooSans",))
        assert verdict.family_class is FamilyClass.SANS_SERIF
        assert verdict.note and "FooSans" in verdict.note

    def test_modal_body_size_smallest_tie(self):
        snapshot, _, _ = page(
            "<style>.a{font-size:14px}.b{font-size:18px}</style>"
            "<body><p class=\"a\">one paragraph</p><p class=\"a\">two paragraph</p>"
            "<p class=\"b\">three paragraph</p><p class=\"b\">four paragraph</p></body>"
        )
        assert modal_body_font_size(snapshot) == 14.0


class TestFontSize:
    def test_body_13px_issue_suggests_16(self):
        _, groups, roles = page("<style>p{font-size:13px}</style><body><p>body copy</p></body>")
        findings = check_font_size(groups, roles)
        issues = [f for f in findings if isinstance(f, DesignIssue)]
        assert len(issues) == 1
        assert issues[0].severity is Severity.MUST_FIX
        assert issues[0].suggestions[0].css_property == "font-size"
        assert issues[0].suggestions[0].new_value == "16px"

    def test_title_at_20_passes(self):
        _, groups, roles = page("<style>h1{font-size:20px}</style><body><h1>Title</h1></body>")
        findings = check_font_size(groups, roles)
        assert all(isinstance(f, DesignPass) for f in findings)

    def test_body_at_16_passes(self):
        _, groups, roles = page("<style>p{font-size:16px}</style><body><p>copy</p></body>")
        findings = check_font_size(groups, roles)
        assert all(isinstance(f, DesignPass) for f in findings)

    @pytest.mark.parametrize("size", range(12, 25))
    def test_parametric_sweep_thresholds(self, size):
        _, groups, roles = page(
            f"<style>p{{font-size:{size}px}} h1{{font-size:{size}px}}</style>"
            f"<body><h1>Title text</h1><p>Body text</p></body>"
        )
        findings = check_font_size(groups, roles)
        body_issue = any(
            isinstance(f, DesignIssue) and f.group_key == "p" for f in findings
        )
        title_issue = any(
            isinstance(f, DesignIssue) and f.group_key == "h1" for f in findings
        )
        assert body_issue == (size < 16)
        assert title_issue == (size < 20)

    def test_scale_monotonicity(self):
        # Raising a failing group's size to the threshold flips to pass for good.
        for size, expect_issue in ((12, True), (16, False), (22, False)):
            _, groups, roles = page(
                f"<style>p{{font-size:{size}px}}</style><body><p>Body text</p></body>"
            )
            findings = check_font_size(groups, roles)
            assert any(isinstance(f, DesignIssue) for f in findings) == expect_issue


class TestFontFamily:
    def test_times_body_flagged(self):
        _, groups, roles = page("<body><p>default face body text</p></body>")
        findings = check_font_family(groups, roles, Descriptor("offline"))
        issues = [f for f in findings if isinstance(f, DesignIssue)]
        assert len(issues) == 1
        assert issues[0].suggestions[0].css_property == "font-family"
        assert "sans-serif" in issues[0].suggestions[0].new_value

    def test_open_sans_body_passes(self):
        _, groups, roles = page(
            "<style>p{font-family:'Open Sans', sans-serif}</style><body><p>copy</p></body>"
        )
        findings = check_font_family(groups, roles, Descriptor("offline"))
        assert all(isinstance(f, DesignPass) for f in findings)

    def test_unknown_family_passes_with_note(self):
        _, groups, roles = page(
            "<style>p{font-family:FooSans}</style><body><p>copy text</p></body>"
        )
        findings = check_font_family(groups, roles, Descriptor("offline"))
        passes = [f for f in findings if isinstance(f, DesignPass)]
        assert len(passes) == 1
        assert "FooSans" in passes[0].explanation

    def test_decorative_on_decorative_role_passes(self):
        _, groups, roles = page(
            "<style>span{font-family:Papyrus, fantasy}</style>"
            "<body><span>Hi!</span><p>body text</p></body>"
        )
        findings = check_font_family(groups, roles, Descriptor("offline"))
        span_findings = [f for f in findings if f.group_key == "span"]
        assert all(isinstance(f, DesignPass) for f in span_findings)

    def test_every_text_group_appears_once(self):
        _, groups, roles = page(
            "<body><h1>t</h1><p>one</p><span>short big text here ok</span></body>"
        )
        findings = check_font_family(groups, roles, Descriptor("offline"))
        assert sorted(f.group_key for f in findings) == sorted(roles.keys())


class TestLineSpacing:
    def test_16px_font_20px_line_issue(self):
        _, groups, roles = page(
            "<style>p{font-size:16px; line-height:20px}</style><body><p>copy</p></body>"
        )
        findings = check_line_spacing(groups, roles)
        issues = [f for f in findings if isinstance(f, DesignIssue)]
        assert len(issues) == 1
        assert issues[0].suggestions[0].new_value == "1.5"

    def test_24px_line_height_passes(self):
        _, groups, roles = page(
            "<style>p{font-size:16px; line-height:24px}</style><body><p>copy</p></body>"
        )
        assert all(isinstance(f, DesignPass) for f in check_line_spacing(groups, roles))

    def test_unset_line_height_defaults_to_issue(self):
        # normal resolves to 1.2 x 16 = 19.2 < 24
        _, groups, roles = page("<body><p>copy</p></body>")
        issues = [f for f in check_line_spacing(groups, roles) if isinstance(f, DesignIssue)]
        assert len(issues) == 1
        assert "19.2" in issues[0].explanation


class TestLineLength:
    def test_static_snapshot_skipped(self):
        snapshot, groups, roles = page("<body><p>copy</p></body>")
        findings = check_line_length(groups, roles, snapshot, None)
        assert len(findings) == 1 and isinstance(findings[0], SkippedCheck)

    def _rendered_page(self, line_texts, tag="p", width=620.0):
        children = [
            make_node(
                "t1", tag, text=" ".join(line_texts),
                box=(40, 100, width, 22.0 * len(line_texts)),
            )
        ]
        lines = [
            ocr_line(t, 40, 100 + 22 * i, width - 20, 18, page=(1000, 800))
            for i, t in enumerate(line_texts)
        ]
        root = make_node("root", "body", box=(0, 0, 1000, 800), children=children)
        snapshot = make_snapshot(root, ocr_lines=lines)
        groups = group_elements(snapshot)
        roles = classify_roles(groups, snapshot)
        matches = match_elements_to_lines(snapshot)
        return snapshot, groups, roles, matches

    def test_title_two_lines_linebreak_issue(self):
        snapshot, groups, roles, matches = self._rendered_page(
            ["a very long wrapped title", "spilling onto line two"], tag="h1"
        )
        findings = check_line_length(groups, roles, snapshot, matches)
        issues = [f for f in findings if isinstance(f, DesignIssue)]
        assert len(issues) == 1
        assert issues[0].suggestions[0].css_property == "width"

    def test_title_single_line_never_flagged(self):
        snapshot, groups, roles, matches = self._rendered_page(["one tidy title"], tag="h1")
        findings = check_line_length(groups, roles, snapshot, matches)
        assert all(isinstance(f, DesignPass) for f in findings)

    def test_body_median_60_passes(self):
        sixty = "x" * 29 + " " + "y" * 30  # 60 chars
        snapshot, groups, roles, matches = self._rendered_page([sixty, sixty])
        findings = check_line_length(groups, roles, snapshot, matches)
        assert all(isinstance(f, DesignPass) for f in findings)

    def test_body_95_char_lines_issue(self):
        long_line = ("alpha bravo charlie delta echo foxtrot golf hotel india "
                     "juliet kilo lima mike november oscar pa")  # 95 chars
        assert len(long_line) == 95
        snapshot, groups, roles, matches = self._rendered_page([long_line, long_line])
        findings = check_line_length(groups, roles, snapshot, matches)
        issues = [f for f in findings if isinstance(f, DesignIssue)]
        assert len(issues) == 1
        assert issues[0].suggestions[0].css_property == "max-width"

    def test_short_wrapped_body_issue(self):
        snapshot, groups, roles, matches = self._rendered_page(
            ["tiny narrow line", "another tiny one", "third short line"], width=200.0
        )
        findings = check_line_length(groups, roles, snapshot, matches)
        issues = [f for f in findings if isinstance(f, DesignIssue)]
        assert len(issues) == 1
        assert "below" in issues[0].explanation

    def test_single_short_line_not_flagged(self):
        snapshot, groups, roles, matches = self._rendered_page(["short note"])
        findings = check_line_length(groups, roles, snapshot, matches)
        assert all(isinstance(f, DesignPass) for f in findings)

    def test_native_line_boxes_without_ocr(self):
        text = "word " * 40
        children = [
            make_node(
                "p1", "p", text=text.strip(), box=(40, 100, 620, 66),
                line_boxes=[(40, 100, 600, 20), (40, 122, 600, 20), (40, 144, 580, 20)],
            )
        ]
        root = make_node("root", "body", box=(0, 0, 1000, 800), children=children)
        snapshot = make_snapshot(root)
        groups = group_elements(snapshot)
        roles = classify_roles(groups, snapshot)
        findings = check_line_length(groups, roles, snapshot, None)
        assert findings and not isinstance(findings[0], SkippedCheck)


class TestEveryGroupCoveredPerCheck:
    def _text_group_keys_and_findings(self, html, check_name):
        from designlint.descriptor import Descriptor
        from designlint.ocr import match_elements_to_lines

        snapshot = ingest_html(html)
        groups = group_elements(snapshot)
        roles = classify_roles(groups, snapshot)
        if check_name == "font_size":
            findings = check_font_size(groups, roles)
        elif check_name == "font_family":
            findings = check_font_family(groups, roles, Descriptor("offline"))
        elif check_name == "line_spacing":
            findings = check_line_spacing(groups, roles)
        else:
            findings = check_line_length(groups, roles, snapshot, None)
        return roles, findings

    @pytest.mark.parametrize("check_name", ["font_size", "font_family", "line_spacing"])
    def test_per_group_coverage(self, check_name):
        html = (
            "<style>span.deco{font-family:Papyrus, fantasy}</style>"
            "<body><h1>Title</h1><p>body copy</p><span class=\"deco\">Hi</span>"
            "<span>short</span></body>"
        )
        roles, findings = self._text_group_keys_and_findings(html, check_name)
        covered = [f.group_key for f in findings]
        assert sorted(covered) == sorted(roles.keys())
        assert len(covered) == len(set(covered))

    def test_line_length_static_single_skip_marker(self):
        html = "<body><h1>Title</h1><p>body copy</p></body>"
        roles, findings = self._text_group_keys_and_findings(html, "line_length")
        assert len(findings) == 1 and isinstance(findings[0], SkippedCheck)
