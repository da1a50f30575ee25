"""Font family classification: curated table plus generic/suffix heuristics.

The table covers the families that actually show up on the web; anything
unknown is classified by name heuristics and flagged with a note so the
verdict is auditable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class FamilyClass(str, Enum):
    SERIF = "serif"
    SANS_SERIF = "sans-serif"
    MONOSPACE = "monospace"
    DECORATIVE = "decorative"


#: CSS generic family keywords and their class.
GENERIC_FAMILIES = {
    "serif": FamilyClass.SERIF,
    "sans-serif": FamilyClass.SANS_SERIF,
    "monospace": FamilyClass.MONOSPACE,
    "cursive": FamilyClass.DECORATIVE,
    "fantasy": FamilyClass.DECORATIVE,
    "system-ui": FamilyClass.SANS_SERIF,
    "ui-sans-serif": FamilyClass.SANS_SERIF,
    "ui-serif": FamilyClass.SERIF,
    "ui-monospace": FamilyClass.MONOSPACE,
}

#: Curated classification of widely used families (lowercase keys).
KNOWN_FAMILIES: dict[str, FamilyClass] = {
    # serif
    "times new roman": FamilyClass.SERIF,
    "times": FamilyClass.SERIF,
    "georgia": FamilyClass.SERIF,
    "garamond": FamilyClass.SERIF,
    "palatino": FamilyClass.SERIF,
    "palatino linotype": FamilyClass.SERIF,
    "book antiqua": FamilyClass.SERIF,
    "baskerville": FamilyClass.SERIF,
    "cambria": FamilyClass.SERIF,
    "didot": FamilyClass.SERIF,
    "merriweather": FamilyClass.SERIF,
    "pt serif": FamilyClass.SERIF,
    "playfair display": FamilyClass.SERIF,
    "constantia": FamilyClass.SERIF,
    "bodoni mt": FamilyClass.SERIF,
    # sans-serif
    "arial": FamilyClass.SANS_SERIF,
    "helvetica": FamilyClass.SANS_SERIF,
    "helvetica neue": FamilyClass.SANS_SERIF,
    "verdana": FamilyClass.SANS_SERIF,
    "tahoma": FamilyClass.SANS_SERIF,
    "trebuchet ms": FamilyClass.SANS_SERIF,
    "segoe ui": FamilyClass.SANS_SERIF,
    "roboto": FamilyClass.SANS_SERIF,
    "open sans": FamilyClass.SANS_SERIF,
    "lato": FamilyClass.SANS_SERIF,
    "montserrat": FamilyClass.SANS_SERIF,
    "source sans pro": FamilyClass.SANS_SERIF,
    "noto sans": FamilyClass.SANS_SERIF,
    "calibri": FamilyClass.SANS_SERIF,
    "futura": FamilyClass.SANS_SERIF,
    "gill sans": FamilyClass.SANS_SERIF,
    "franklin gothic medium": FamilyClass.SANS_SERIF,
    "century gothic": FamilyClass.SANS_SERIF,
    "geneva": FamilyClass.SANS_SERIF,
    "inter": FamilyClass.SANS_SERIF,
    "nunito": FamilyClass.SANS_SERIF,
    "raleway": FamilyClass.SANS_SERIF,
    # monospace
    "courier new": FamilyClass.MONOSPACE,
    "courier": FamilyClass.MONOSPACE,
    "consolas": FamilyClass.MONOSPACE,
    "monaco": FamilyClass.MONOSPACE,
    "menlo": FamilyClass.MONOSPACE,
    "lucida console": FamilyClass.MONOSPACE,
    "source code pro": FamilyClass.MONOSPACE,
    "fira code": FamilyClass.MONOSPACE,
    "jetbrains mono": FamilyClass.MONOSPACE,
    "andale mono": FamilyClass.MONOSPACE,
    # decorative / narrow
    "comic sans ms": FamilyClass.DECORATIVE,
    "papyrus": FamilyClass.DECORATIVE,
    "impact": FamilyClass.DECORATIVE,
    "brush script mt": FamilyClass.DECORATIVE,
    "lobster": FamilyClass.DECORATIVE,
    "pacifico": FamilyClass.DECORATIVE,
    "chiller": FamilyClass.DECORATIVE,
    "jokerman": FamilyClass.DECORATIVE,
    "curlz mt": FamilyClass.DECORATIVE,
    "lucida handwriting": FamilyClass.DECORATIVE,
    "dancing script": FamilyClass.DECORATIVE,
    "copperplate": FamilyClass.DECORATIVE,
    "arial narrow": FamilyClass.DECORATIVE,
    "haettenschweiler": FamilyClass.DECORATIVE,
}

#: Sans-serif stack suggested when a body or title family needs replacing.
SUGGESTED_SANS_STACK = '"Open Sans", Arial, sans-serif'


@dataclass(frozen=True)
class FamilyVerdict:
    family: str
    family_class: FamilyClass
    known: bool
    note: str | None = None


def _normalize(family: str) -> str:
    return family.strip().strip("'\"").lower()


def _heuristic_class(name: str) -> FamilyClass:
    if "mono" in name or "code" in name or "console" in name:
        return FamilyClass.MONOSPACE
    if "script" in name or "hand" in name or "comic" in name or "brush" in name:
        return FamilyClass.DECORATIVE
    if "narrow" in name or "condensed" in name:
        return FamilyClass.DECORATIVE
    if "sans" in name:
        return FamilyClass.SANS_SERIF
    if "serif" in name:
        return FamilyClass.SERIF
    return FamilyClass.SANS_SERIF


def classify_family(families: tuple[str, ...] | list[str]) -> FamilyVerdict:
    """Classify the first resolvable family of a font stack.

    Resolvable means present in the curated table or a CSS generic keyword;
    if nothing resolves, the first entry is classified by name heuristics
    with an explanatory note.
    """
    if not families:
        return FamilyVerdict(
            family="(unset)",
            family_class=FamilyClass.SERIF,
            known=False,
            note="no font-family declared; user agents default to a serif face",
        )
    for raw in families:
        name = _normalize(raw)
        if name in KNOWN_FAMILIES:
            return FamilyVerdict(raw.strip().strip("'\""), KNOWN_FAMILIES[name], True)
        if name in GENERIC_FAMILIES:
            return FamilyVerdict(raw.strip().strip("'\""), GENERIC_FAMILIES[name], True)
    first = _normalize(families[0])
    guessed = _heuristic_class(first)
    return FamilyVerdict(
        family=families[0].strip().strip("'\""),
        family_class=guessed,
        known=False,
        note=f"unknown family '{families[0].strip()}' classified as {guessed.value} by name heuristic",
    )
