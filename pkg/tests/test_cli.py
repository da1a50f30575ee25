"""CLI: subcommands, exit codes, offline guarantee."""

import json

import pytest

from designlint.cli import main

from conftest import FIXTURES

CLEAN_PAGE = """<html><head><style>
body { font-family: Arial; font-size: 16px; line-height: 1.5; padding: 24px;
       color: #111111; background-color: #ffffff; }
</style></head><body><p>perfectly reasonable text</p></body></html>
"""


@pytest.fixture
def clean_page(tmp_path):
    path = tmp_path / "clean.html"
    path.write_text(CLEAN_PAGE)
    return path


def test_audit_clean_page_exit_0(clean_page, capsys):
    code = main(["audit", str(clean_page), "--offline", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["summary"]["total_issues"] == 0


def test_audit_w1_snapshot_exit_1(capsys):
    code = main(["audit", str(FIXTURES / "w1.snapshot.json"), "--offline"])
    assert code == 1
    payload = json.loads(capsys.readouterr().out)
    counts = payload["summary"]["counts"]
    text = sum(counts[c]["issues"] for c in ("font_size", "font_family", "line_spacing"))
    layout = sum(counts[c]["issues"] for c in ("spacing", "textual_alignment"))
    color = sum(counts[c]["issues"] for c in ("color_contrast", "color_harmony"))
    assert text > 0 and layout > 0 and color > 0


def test_audit_missing_input_exit_2(capsys):
    assert main(["audit", "/nonexistent/page.html", "--offline"]) == 2
    assert "error" in capsys.readouterr().err


def test_usage_error_exit_2():
    assert main(["audit"]) == 2


def test_audit_offline_no_network(clean_page, no_network):
    assert main(["audit", str(clean_page), "--offline", "--out", str(clean_page) + ".json"]) == 0


def test_audit_html_output(clean_page, tmp_path, capsys):
    out = tmp_path / "report.html"
    code = main(["audit", str(clean_page), "--offline", "--format", "html", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert text.startswith("<!DOCTYPE html>")
    assert text.count("<h1>") == 1


def test_audit_both_formats(clean_page, tmp_path):
    out = tmp_path / "report"
    code = main(["audit", str(clean_page), "--offline", "--format", "both", "--out", str(out)])
    assert code == 0
    assert (tmp_path / "report.json").exists()
    assert (tmp_path / "report.html").exists()


def test_audit_with_reference_and_trends(capsys, tmp_path):
    manifest = FIXTURES / "trends" / "blog" / "manifest.json"
    code = main([
        "audit", str(FIXTURES / "w1.html"), "--offline",
        "--reference", str(FIXTURES / "w2.html"),
        "--trends", str(manifest), "--category", "blog",
    ])
    assert code == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["comparison"]["reference"]["reference_source"]
    assert payload["comparison"]["trend"]["n_sites"] == 20
    assert payload["comparison"]["trend"]["category"] == "blog"


def test_trends_build(tmp_path, capsys):
    corpus_dir = FIXTURES / "trends" / "tutorial"
    out = tmp_path / "manifest.json"
    code = main(["trends", "build", str(corpus_dir), "--category", "tutorial",
                 "--out", str(out)])
    assert code == 0
    manifest = json.loads(out.read_text())
    assert manifest["category"] == "tutorial"
    assert len(manifest["sites"]) == 20
    # manifest.json itself may be globbed; ensure real snapshots load back
    audit_code = main(["audit", str(FIXTURES / "w2.html"), "--offline",
                       "--trends", str(FIXTURES / "trends" / "tutorial" / "manifest.json"),
                       "--category", "tutorial"])
    assert audit_code in (0, 1)


def test_diff_command(tmp_path, capsys):
    before = tmp_path / "before.json"
    after = tmp_path / "after.json"
    patched_snapshot = tmp_path / "patched.snapshot.json"
    patch_css = tmp_path / "fix.css"
    patch_css.write_text("p.meta { font-size: 16px; }\n")

    assert main(["audit", str(FIXTURES / "w1.html"), "--offline", "--out", str(before)]) == 1
    assert main(["patch", str(FIXTURES / "w1.html"), "--apply", str(patch_css),
                 "--out", str(patched_snapshot)]) == 0
    capsys.readouterr()

    # Audit the patched snapshot under the same source id for a valid diff.
    from designlint import run_audit, validate_snapshot

    snapshot = validate_snapshot(json.loads(patched_snapshot.read_text()))
    after_report = run_audit(snapshot)
    after.write_text(after_report.to_json())

    code = main(["diff", str(before), str(after), "--patch", str(patch_css)])
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert ["font_size", "p.meta"] in summary["resolved"]
    assert summary["css_diff"] == [["p.meta", "font-size", "11px", "16px"]]


def test_patch_unknown_selector_exit_2(tmp_path, capsys):
    patch_css = tmp_path / "fix.css"
    patch_css.write_text(".nope { color: red; }\n")
    code = main(["patch", str(FIXTURES / "w1.html"), "--apply", str(patch_css),
                 "--out", str(tmp_path / "out.json")])
    assert code == 2
    assert "matches no element" in capsys.readouterr().err


def test_byte_identical_offline_runs(clean_page, tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    main(["audit", str(clean_page), "--offline", "--out", str(out1)])
    main(["audit", str(clean_page), "--offline", "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_diff_against_flag(clean_page, tmp_path, capsys):
    before = tmp_path / "before.json"
    main(["audit", str(clean_page), "--offline", "--out", str(before)])
    code = main(["audit", str(clean_page), "--offline", "--diff-against", str(before)])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["changes"]["resolved"] == []
    assert payload["changes"]["introduced"] == []


def test_audit_with_screenshot_sidecar(tmp_path, capsys):
    from PIL import Image

    img = Image.new("RGB", (40, 40), (20, 90, 200))
    for x in range(20):
        for y in range(40):
            img.putpixel((x, y), (250, 250, 250))
    screenshot = tmp_path / "shot.png"
    img.save(screenshot)

    code = main(["audit", str(FIXTURES / "w2.html"), "--offline",
                 "--screenshot", str(screenshot)])
    assert code == 1
    payload = json.loads(capsys.readouterr().out)
    # The screenshot's chromatic color seeds the harmony palette.
    assert payload["harmony"]["seed"].startswith("rgb(")


def test_audit_with_ocr_sidecar(tmp_path, capsys):
    ocr = [{"text": "Harbor Weekly: all the small news that fits",
            "bbox": [8, 8, 600, 32], "pageWidth": 1280, "pageHeight": 800}]
    sidecar = tmp_path / "ocr.json"
    sidecar.write_text(json.dumps(ocr))
    code = main(["audit", str(FIXTURES / "w2.html"), "--offline", "--ocr", str(sidecar)])
    assert code == 1
    payload = json.loads(capsys.readouterr().out)
    assert not any(s["category"] == "line_length" for s in payload["skipped"])
