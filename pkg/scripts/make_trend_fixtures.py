#!/usr/bin/env python3
"""Generate the synthetic trend corpora: 20 snapshot fixtures per category.

Deterministic by construction (fixed seeds, fixed capture date) so committed
fixtures can be regenerated byte-identically.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from designlint.ingest import ingest_html  # noqa: E402
from designlint.model import snapshot_to_dict  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "fixtures" / "trends"
CAPTURED = "2026-08-01"
SITES_PER_CATEGORY = 20

# Per-category style distributions. Blog bakes exactly 14 Open Sans body
# sites so the corpus has an unambiguous most-popular family.
PROFILES = {
    "blog": {
        "families": ["Open Sans"] * 14 + ["Georgia"] * 3 + ["Arial"] * 2 + ["Verdana"],
        "body_sizes": [14, 15, 16, 16, 16, 17, 18],
        "title_sizes": [20, 22, 24, 24, 28],
        "margins": [8, 10, 12, 16],
        "paddings": [16, 24, 32],
        "accents": ["#3366cc", "#338855", "#aa4466"],
    },
    "tutorial": {
        "families": ["Roboto"] * 9 + ["Open Sans"] * 5 + ["Consolas"] * 3 + ["Arial"] * 3,
        "body_sizes": [15, 16, 16, 17],
        "title_sizes": [22, 24, 26],
        "margins": [8, 12, 16],
        "paddings": [24, 32],
        "accents": ["#2255aa", "#117755"],
    },
    "personal_website": {
        "families": ["Lato"] * 7 + ["Times New Roman"] * 5 + ["Montserrat"] * 5 + ["Georgia"] * 3,
        "body_sizes": [14, 15, 16, 17, 18],
        "title_sizes": [24, 28, 32],
        "margins": [8, 12],
        "paddings": [16, 24],
        "accents": ["#884488", "#336699", "#cc6633"],
    },
    "organization_website": {
        "families": ["Arial"] * 8 + ["Segoe UI"] * 7 + ["Helvetica"] * 5,
        "body_sizes": [15, 16, 16, 17],
        "title_sizes": [26, 28, 32],
        "margins": [12, 16, 20],
        "paddings": [24, 32, 40],
        "accents": ["#003366", "#225577"],
    },
    "news_magazine": {
        "families": ["Georgia"] * 11 + ["Times New Roman"] * 4 + ["Arial"] * 5,
        "body_sizes": [13, 14, 14, 15],
        "title_sizes": [22, 24, 26],
        "margins": [8, 10],
        "paddings": [16, 24],
        "accents": ["#990000", "#222244"],
    },
}

PAGE = """<!DOCTYPE html>
<html>
<head>
<title>{title}</title>
<style>
body {{ font-family: {family}; font-size: {body_size}px; color: {text_color};
       background-color: {bg}; line-height: 1.6; }}
h1 {{ font-size: {title_size}px; color: {accent}; }}
h2 {{ font-size: {h2_size}px; }}
p {{ margin: {margin}px 0; }}
li {{ margin: 0 0 {margin}px 0; }}
.wrap {{ padding: {padding}px; }}
.lede {{ font-size: {lede_size}px; }}
a {{ color: {accent}; }}
</style>
</head>
<body>
<div class="wrap">
<h1>{title}</h1>
<p class="lede">{lede}</p>
<h2>{subhead}</h2>
<p>{para1}</p>
<p>{para2}</p>
<ul><li>{item1}</li><li>{item2}</li></ul>
<p>Read more from <a href="#more">the archive</a>.</p>
</div>
</body>
</html>
"""

FILLER = [
    "The committee met at noon and adjourned shortly after the biscuits ran out.",
    "Measurements were taken twice and disagreed both times, which was expected.",
    "A longer report follows next week, weather and enthusiasm permitting.",
    "Volunteers are asked to bring their own pencils and strong opinions.",
    "Nothing of note happened on Thursday, which is itself of note.",
    "The archive grows by one folder a month and shrinks by none.",
]


def build_category(category: str, profile: dict) -> None:
    rng = random.Random(f"designlint-trends-{category}")
    out_dir = OUT / category
    out_dir.mkdir(parents=True, exist_ok=True)
    families = list(profile["families"])
    rng.shuffle(families)
    site_files = []
    for i in range(SITES_PER_CATEGORY):
        html = PAGE.format(
            title=f"{category.replace('_', ' ').title()} site {i:02d}",
            family=families[i],
            body_size=rng.choice(profile["body_sizes"]),
            title_size=rng.choice(profile["title_sizes"]),
            h2_size=rng.choice(profile["title_sizes"]) - 2,
            lede_size=rng.choice(profile["body_sizes"]) + 1,
            margin=rng.choice(profile["margins"]),
            padding=rng.choice(profile["paddings"]),
            accent=rng.choice(profile["accents"]),
            text_color=rng.choice(["#222222", "#333333", "#1a1a1a"]),
            bg=rng.choice(["#ffffff", "#fdfdfd", "#fafaf7"]),
            lede=rng.choice(FILLER),
            subhead="Notes from the field",
            para1=rng.choice(FILLER),
            para2=rng.choice(FILLER),
            item1="First small thing",
            item2="Second small thing",
        )
        name = f"site_{i:02d}.snapshot.json"
        snapshot = ingest_html(html, source_id=f"trends/{category}/{name}")
        (out_dir / name).write_text(
            json.dumps(snapshot_to_dict(snapshot), separators=(",", ":")) + "\n", encoding="utf-8"
        )
        site_files.append(name)
    manifest = {"category": category, "sites": site_files, "captured": CAPTURED}
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    print(f"{category}: {len(site_files)} sites")


def main() -> None:
    for category, profile in PROFILES.items():
        build_category(category, profile)


if __name__ == "__main__":
    main()
