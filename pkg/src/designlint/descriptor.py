"""Natural-language description provider with a deterministic offline default.

A remote language-model endpoint can be configured through environment
variables; its replies are schema-gated and any failure falls back to the
deterministic templates, so the audit pipeline always completes offline.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from enum import Enum

from .errors import DescriptorError, RemoteUnavailableError, SchemaError
from .fonts import FamilyClass, SUGGESTED_SANS_STACK, classify_family

logger = logging.getLogger(__name__)

URL_ENV = "DESIGNLINT_LLM_URL"
KEY_ENV = "DESIGNLINT_LLM_KEY"
REMOTE_TEMPERATURE = 0.2


class DescriptorKind(str, Enum):
    FONT_REVIEW = "font_review"
    COLOR_SCHEME_SUMMARY = "color_scheme_summary"
    PALETTE_ROLE_ASSIGNMENT = "palette_role_assignment"
    COLOR_NAME = "color_name"


@dataclass(frozen=True)
class DescriptorRequest:
    kind: DescriptorKind
    payload: dict

    def cache_key(self) -> str:
        digest = hashlib.sha256(
            json.dumps(self.payload, sort_keys=True).encode("utf-8")
        ).hexdigest()
        return f"{self.kind.value}:{digest}"


@dataclass
class DescriptorResponse:
    kind: DescriptorKind
    summary: str
    details: dict
    provenance: str  # deterministic | remote
    notes: tuple[str, ...] = ()


PROMPTS: dict[DescriptorKind, str] = {
    DescriptorKind.FONT_REVIEW: (
        "Check the font families of the website and give suggestions. Sans Serif is "
        "preferred to Serif for better readability. The response should be in a single "
        "array with three elements.\n"
        "First element: string, one-sentence summary of whether the fonts used have good "
        "readability (Sans-Serif) and are visually appealing.\n"
        "Second element: object, details of elements that need to change the font family. "
        "Each key is the group name. If the current one is okay, you don't need to include "
        "it in the object. Don't be abstract and suggest what can directly be applied to CSS.\n"
        "Third element: object, details of elements to change the font family.\n"
    ),
    DescriptorKind.COLOR_SCHEME_SUMMARY: (
        "Check how consistent and harmonious the website's colors used are.\n"
        "The response should be in a single array with two elements. First: string, a "
        "summary of the current color scheme. Second: object, current color scheme details.\n"
    ),
    DescriptorKind.PALETTE_ROLE_ASSIGNMENT: (
        "You are a helpful assistant that is helping web developers to design the color of "
        "their websites. With the provided color palette and the code (HTML and CSS), "
        "re-assign the best colors to the UI elements in the code. To ensure accessible "
        "visual contrast, apply colors only in the intended pairs or layering orders "
        "described below. Consider the elements' overlay relationship and apply colors "
        "appropriately. Do not remove any existing CSS class. Do not change other CSS "
        "attributes than color-related attributes (e.g., width, padding).\n"
    ),
    DescriptorKind.COLOR_NAME: (
        "Translate the following rgb color value into a short, interpretable color name. "
        "Respond with a single JSON string.\n"
    ),
}


def _deterministic_font_review(payload: dict) -> DescriptorResponse:
    groups: dict[str, list[str]] = payload.get("groups", {})
    issues: dict[str, str] = {}
    passes: dict[str, str] = {}
    classes_seen: list[str] = []
    for group_key, families in groups.items():
        verdict = classify_family(tuple(families))
        classes_seen.append(verdict.family_class.value)
        if verdict.family_class in (FamilyClass.SERIF, FamilyClass.DECORATIVE):
            issues[group_key] = (
                f"'{verdict.family}' is a {verdict.family_class.value} face; switching to a "
                f"sans-serif stack such as {SUGGESTED_SANS_STACK} improves on-screen readability."
            )
        else:
            passes[group_key] = (
                f"'{verdict.family}' is a {verdict.family_class.value} face with good readability."
            )
    mixed = len({c for c in classes_seen if c in ("serif", "sans-serif")}) > 1
    if not groups:
        summary = "No text groups declare a font family."
    elif issues and mixed:
        summary = (
            "The page mixes serif and sans-serif faces, which may lack visual consistency; "
            f"{len(issues)} group(s) would read better in a sans-serif family."
        )
    elif issues:
        summary = f"{len(issues)} text group(s) use serif or decorative faces that hurt readability."
    else:
        summary = "All text groups use families with good on-screen readability."
    return DescriptorResponse(
        kind=DescriptorKind.FONT_REVIEW,
        summary=summary,
        details={"issues": issues, "passes": passes},
        provenance="deterministic",
    )


def _deterministic_scheme_summary(payload: dict) -> DescriptorResponse:
    scheme: dict[str, list[dict]] = payload.get("scheme", {})
    distinct = payload.get("distinct_count", 0)
    parts = []
    for bucket in ("background", "text", "border", "interactive", "image"):
        entries = scheme.get(bucket) or []
        if entries:
            names = ", ".join(f"{e['name']} ({e['css']})" for e in entries[:3])
            parts.append(f"{bucket} colors: {names}")
    summary = (
        "The color palette used in the website primarily consists of "
        + "; ".join(parts)
        + "."
        if parts
        else "The page sets no explicit colors."
    )
    notes = []
    if distinct > 10:
        summary += f" {distinct} distinct colors are in use; too many colors can feel cluttered."
        notes.append("too many colors")
    return DescriptorResponse(
        kind=DescriptorKind.COLOR_SCHEME_SUMMARY,
        summary=summary,
        details={"scheme": scheme, "distinct_count": distinct},
        provenance="deterministic",
        notes=tuple(notes),
    )


def _deterministic_palette_assignment(payload: dict) -> DescriptorResponse:
    return DescriptorResponse(
        kind=DescriptorKind.PALETTE_ROLE_ASSIGNMENT,
        summary="Applied the fixed role-assignment rules (no remote refinement).",
        details={"css": None},
        provenance="deterministic",
    )


def _deterministic_color_name(payload: dict) -> DescriptorResponse:
    from .color.names import nearest_name
    from .model import RgbaColor

    c = payload.get("color", {})
    name = nearest_name(RgbaColor(int(c.get("r", 0)), int(c.get("g", 0)), int(c.get("b", 0))))
    return DescriptorResponse(
        kind=DescriptorKind.COLOR_NAME,
        summary=name,
        details={"name": name},
        provenance="deterministic",
    )


_DETERMINISTIC = {
    DescriptorKind.FONT_REVIEW: _deterministic_font_review,
    DescriptorKind.COLOR_SCHEME_SUMMARY: _deterministic_scheme_summary,
    DescriptorKind.PALETTE_ROLE_ASSIGNMENT: _deterministic_palette_assignment,
    DescriptorKind.COLOR_NAME: _deterministic_color_name,
}


def _parse_remote(kind: DescriptorKind, text: str) -> DescriptorResponse:
    """Validate a remote reply against the per-kind schema; SchemaError otherwise."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"remote reply is not JSON: {exc}") from None

    if kind is DescriptorKind.FONT_REVIEW:
        if (
            not isinstance(data, list)
            or len(data) != 3
            or not isinstance(data[0], str)
            or not isinstance(data[1], dict)
            or not isinstance(data[2], dict)
        ):
            raise SchemaError("font review reply must be [summary, issues{}, passes{}]")
        return DescriptorResponse(
            kind=kind,
            summary=data[0],
            details={"issues": data[1], "passes": data[2]},
            provenance="remote",
        )
    if kind is DescriptorKind.COLOR_SCHEME_SUMMARY:
        if (
            not isinstance(data, list)
            or len(data) != 2
            or not isinstance(data[0], str)
            or not isinstance(data[1], dict)
        ):
            raise SchemaError("scheme summary reply must be [summary, details{}]")
        return DescriptorResponse(
            kind=kind, summary=data[0], details={"scheme": data[1]}, provenance="remote"
        )
    if kind is DescriptorKind.PALETTE_ROLE_ASSIGNMENT:
        if not isinstance(data, str):
            raise SchemaError("palette assignment reply must be a CSS string")
        return DescriptorResponse(
            kind=kind,
            summary="Remote role assignment.",
            details={"css": data},
            provenance="remote",
        )
    if kind is DescriptorKind.COLOR_NAME:
        if not isinstance(data, str) or not data.strip():
            raise SchemaError("color name reply must be a non-empty string")
        return DescriptorResponse(
            kind=kind, summary=data.strip(), details={"name": data.strip()}, provenance="remote"
        )
    raise SchemaError(f"unknown descriptor kind {kind}")


class Descriptor:
    """Description provider; ``mode`` is one of auto, offline, remote."""

    def __init__(self, mode: str = "auto"):
        if mode not in ("auto", "offline", "remote"):
            raise ValueError(f"unknown descriptor mode {mode!r}")
        self.mode = mode
        self._cache: dict[str, DescriptorResponse] = {}

    @property
    def remote_enabled(self) -> bool:
        if self.mode == "offline":
            return False
        url = os.environ.get(URL_ENV)
        if self.mode == "remote" and not url:
            raise RemoteUnavailableError(f"{URL_ENV} is not configured")
        return bool(url)

    def describe(self, request: DescriptorRequest, strict: bool = False) -> DescriptorResponse:
        """Answer a request; deterministic unless a remote endpoint is configured.

        Remote failures fall back to the deterministic response with a note,
        unless ``strict`` is set, in which case they raise
        :class:`DescriptorError`.
        """
        key = request.cache_key()
        if key in self._cache:
            return self._cache[key]

        response: DescriptorResponse
        if self.remote_enabled:
            try:
                response = self._describe_remote(request)
            except (DescriptorError, SchemaError) as exc:
                if strict:
                    raise
                logger.warning("remote descriptor failed (%s); using deterministic output", exc)
                response = _DETERMINISTIC[request.kind](request.payload)
                response.notes = response.notes + (f"remote descriptor unavailable: {exc}",)
        else:
            response = _DETERMINISTIC[request.kind](request.payload)

        self._cache[key] = response
        return response

    def _describe_remote(self, request: DescriptorRequest) -> DescriptorResponse:
        import requests

        url = os.environ.get(URL_ENV)
        key = os.environ.get(KEY_ENV, "")
        prompt = PROMPTS[request.kind] + "\nInput:\n" + json.dumps(request.payload, indent=2)
        body = {"prompt": prompt, "temperature": REMOTE_TEMPERATURE}
        headers = {"Authorization": f"Bearer {key}"} if key else {}

        last_error: Exception | None = None
        for attempt in range(2):
            try:
                reply = requests.post(url, json=body, headers=headers, timeout=30)
                reply.raise_for_status()
                text = reply.json().get("text", "")
            except Exception as exc:  # network, auth, bad JSON envelope
                raise RemoteUnavailableError(str(exc)) from None
            try:
                return _parse_remote(request.kind, text)
            except SchemaError as exc:
                last_error = exc
                logger.info("remote reply failed schema check (attempt %d): %s", attempt + 1, exc)
        raise SchemaError(f"remote reply failed schema validation after retry: {last_error}")
