#!/usr/bin/env python3
"""Write the expected static snapshots for the extractor's fixture pages.

The extractor's agreement test compares its style output, element by element,
against these files; they are produced by the auditor's own static ingest so
the two implementations are held to the same cascade.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from designlint.ingest import ingest_html  # noqa: E402
from designlint.model import snapshot_to_dict  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "frontend" / "fixtures"


def main() -> None:
    for page in sorted(FIXTURES.glob("page*.html")):
        snapshot = ingest_html(page.read_text(encoding="utf-8"), source_id="about:blank")
        out = page.with_suffix("").with_suffix("")  # strip .html
        out_path = FIXTURES / f"{page.stem}.expected.json"
        out_path.write_text(
            json.dumps(snapshot_to_dict(snapshot), indent=1) + "\n", encoding="utf-8"
        )
        print(f"{out_path.name}: {sum(1 for _ in snapshot.iter_nodes())} nodes")


if __name__ == "__main__":
    main()
