"""Report assembly, rendering, diffs, and the regression-detection scenario."""

import json

import pytest

from designlint import (
    apply_css_patch,
    build_patch,
    diff_reports,
    ingest_html,
    render_accessible_html,
    report_from_dict,
    run_audit,
)
from designlint.errors import MismatchedSourceError
from designlint.findings import Category

from html_validator import validate_report_html


@pytest.fixture(scope="module")
def w1_snapshot(fixtures_dir_module=None):
    from conftest import FIXTURES

    return ingest_html((FIXTURES / "w1.html").read_text(), source_id="fixtures/w1.html")


@pytest.fixture(scope="module")
def w1_report(w1_snapshot):
    return run_audit(w1_snapshot)


class TestAssembly:
    def test_clean_page_zero_counts(self):
        snapshot = ingest_html(
            "<style>body{font-family:Arial;font-size:16px;line-height:1.5;"
            "padding:24px;color:#111111;background-color:#ffffff}</style>"
            "<body><p>comfortable text</p></body>"
        )
        report = run_audit(snapshot)
        assert report.total_issues == 0
        assert all(v["issues"] == 0 for v in report.counts.values())

    def test_w1_has_issues_in_all_three_families(self, w1_report):
        cats = {i.category for i in w1_report.issues}
        assert cats & {Category.FONT_SIZE, Category.FONT_FAMILY, Category.LINE_SPACING}
        assert cats & {Category.SPACING, Category.TEXTUAL_ALIGNMENT}
        assert cats & {Category.COLOR_CONTRAST, Category.COLOR_HARMONY}

    def test_counts_equal_list_lengths(self, w1_report):
        counts = w1_report.counts
        for category in Category:
            assert counts[category.value]["issues"] == sum(
                1 for i in w1_report.issues if i.category is category
            )
            assert counts[category.value]["passes"] == sum(
                1 for p in w1_report.passes if p.category is category
            )

    def test_passes_and_issues_disjoint(self, w1_report):
        issue_keys = {(i.category, i.group_key) for i in w1_report.issues}
        pass_keys = {(p.category, p.group_key) for p in w1_report.passes}
        assert issue_keys.isdisjoint(pass_keys)

    def test_category_order_and_document_order(self, w1_report):
        ranks = [list(Category).index(i.category) for i in w1_report.issues]
        assert ranks == sorted(ranks)

    def test_byte_identical_json_for_identical_input(self):
        from conftest import FIXTURES

        text = (FIXTURES / "w1.html").read_text()
        one = run_audit(ingest_html(text, source_id="w1")).to_json()
        two = run_audit(ingest_html(text, source_id="w1")).to_json()
        assert one == two

    def test_round_trip_through_json(self, w1_report):
        rebuilt = report_from_dict(json.loads(w1_report.to_json()))
        assert {(i.category, i.group_key) for i in rebuilt.issues} == {
            (i.category, i.group_key) for i in w1_report.issues
        }
        assert rebuilt.run_meta.source_id == w1_report.run_meta.source_id


class TestAccessibleHtml:
    def test_structure_rules(self, w1_report):
        html = render_accessible_html(w1_report)
        validator = validate_report_html(html)
        assert validator.tag_counts.get("h1") == 1
        assert validator.tag_counts.get("h3", 0) == (
            len(w1_report.issues) + len(w1_report.passes)
        )
        assert validator.handler_attrs == []
        assert "<script" not in html

    def test_skipped_sections_labeled(self, w1_report):
        html = render_accessible_html(w1_report)
        assert "Skipped:" in html
        assert "requires a rendered snapshot" in html

    def test_sample_text_shown(self, w1_report):
        html = render_accessible_html(w1_report)
        assert "HTML text:" in html

    def test_by_element_view_same_h3_count(self, w1_report):
        html = render_accessible_html(w1_report, by_element=True)
        validator = validate_report_html(html)
        assert validator.tag_counts.get("h1") == 1
        assert validator.tag_counts.get("h3", 0) == (
            len(w1_report.issues) + len(w1_report.passes)
        )

    def test_counts_in_text(self, w1_report):
        html = render_accessible_html(w1_report)
        assert f"{w1_report.total_issues} issues" in html


class TestDiff:
    def test_identical_reports_empty_summary(self, w1_report):
        change = diff_reports(w1_report, w1_report)
        assert change.resolved == [] and change.introduced == []
        assert change.unchanged_count == len(
            {(i.category.value, i.group_key) for i in w1_report.issues}
        )

    def test_fixing_everything_resolves_all(self, w1_snapshot, w1_report):
        patch = build_patch(w1_report)
        fixed = run_audit(apply_css_patch(w1_snapshot, patch))
        change = diff_reports(w1_report, fixed, patch)
        resolved_keys = set(change.resolved)
        before_keys = {(i.category.value, i.group_key) for i in w1_report.issues}
        after_keys = {(i.category.value, i.group_key) for i in fixed.issues}
        assert resolved_keys == before_keys - after_keys
        assert fixed.total_issues < w1_report.total_issues
        # Conservation: before = resolved + unchanged, disjointly.
        assert len(before_keys) == len(resolved_keys) + change.unchanged_count

    def test_css_diff_echoes_patch_with_old_values(self, w1_snapshot, w1_report):
        patch = {"p.meta": {"font-size": "16px"}}
        after = run_audit(apply_css_patch(w1_snapshot, patch))
        change = diff_reports(w1_report, after, patch)
        assert ("p.meta", "font-size", "11px", "16px") in change.css_diff

    def test_mismatched_sources_raise(self, w1_report):
        other = run_audit(ingest_html("<p>x</p>", source_id="other"))
        with pytest.raises(MismatchedSourceError):
            diff_reports(w1_report, other)

    def test_p12_regression_header_background(self, w1_snapshot, w1_report):
        """Turning the header white under white header text introduces exactly
        one contrast regression."""
        patch = {"header": {"background-color": "#ffffff"}}
        after = run_audit(apply_css_patch(w1_snapshot, patch))
        change = diff_reports(w1_report, after, patch)
        introduced_contrast = [
            pair for pair in change.introduced if pair[0] == "color_contrast"
        ]
        assert len(introduced_contrast) == 1
        assert introduced_contrast[0][1] == "h1.site-title"


class TestBuildPatch:
    def test_contrast_takes_preferred_only(self, w1_report):
        patch = build_patch(w1_report, categories=(Category.COLOR_CONTRAST,))
        for declarations in patch.values():
            assert len(declarations) == 1

    def test_harmony_never_in_patch(self, w1_report):
        patch = build_patch(w1_report)
        harmony_issue = next(
            i for i in w1_report.issues if i.category is Category.COLOR_HARMONY
        )
        assert harmony_issue.group_key == "page"
        assert "page" not in patch
