"""Lenient HTML parsing into a raw element tree.

Recovers from unclosed and stray tags the way browsers do for the common
cases (implied </li>, </p>, table cells); every recovery is recorded as a
note so the ingest stays auditable. Malformed markup never raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser

from ..errors import ParseError

VOID_ELEMENTS = frozenset(
    {"area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta",
     "source", "track", "wbr"}
)

# Start tags that implicitly close an open <p>.
_P_CLOSERS = frozenset(
    {"address", "article", "aside", "blockquote", "div", "dl", "fieldset",
     "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header",
     "hr", "main", "nav", "ol", "p", "pre", "section", "table", "ul"}
)


@dataclass
class RawNode:
    """Parsed element before cascade resolution."""

    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    children: list["RawNode"] = field(default_factory=list)
    text_chunks: list[str] = field(default_factory=list)

    @property
    def classes(self) -> tuple[str, ...]:
        return tuple(self.attrs.get("class", "").split())

    @property
    def own_text(self) -> str | None:
        text = " ".join(" ".join(chunk.split()) for chunk in self.text_chunks if chunk.strip())
        return text if text else None

    def iter(self):
        yield self
        for child in self.children:
            yield from child.iter()


class _LenientParser(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.top_level: list[RawNode] = []
        self.stack: list[RawNode] = []
        self.css_texts: list[str] = []
        self.notes: list[str] = []
        self._in_style = False

    def _open(self, node: RawNode) -> None:
        if self.stack:
            self.stack[-1].children.append(node)
        else:
            self.top_level.append(node)
        self.stack.append(node)

    def _close_implied(self, tag: str) -> None:
        if not self.stack:
            return
        open_tag = self.stack[-1].tag
        if tag == "li" and open_tag == "li":
            self.stack.pop()
            self.notes.append("implicitly closed <li> before new <li>")
        elif tag in _P_CLOSERS and open_tag == "p":
            self.stack.pop()
            self.notes.append(f"implicitly closed <p> before <{tag}>")
        elif tag in ("td", "th") and open_tag in ("td", "th"):
            self.stack.pop()
            self.notes.append(f"implicitly closed <{open_tag}> before <{tag}>")
        elif tag == "tr" and open_tag in ("td", "th", "tr"):
            while self.stack and self.stack[-1].tag in ("td", "th"):
                self.stack.pop()
            if self.stack and self.stack[-1].tag == "tr":
                self.stack.pop()
            self.notes.append("implicitly closed row before new <tr>")

    def handle_starttag(self, tag: str, attrs) -> None:
        tag = tag.lower()
        self._close_implied(tag)
        node = RawNode(tag=tag, attrs={k.lower(): (v or "") for k, v in attrs})
        if tag in VOID_ELEMENTS:
            if self.stack:
                self.stack[-1].children.append(node)
            else:
                self.top_level.append(node)
            return
        self._open(node)
        if tag == "style":
            self._in_style = True

    def handle_startendtag(self, tag: str, attrs) -> None:
        self.handle_starttag(tag, attrs)
        if tag.lower() not in VOID_ELEMENTS:
            self.handle_endtag(tag)

    def handle_endtag(self, tag: str) -> None:
        tag = tag.lower()
        if tag in VOID_ELEMENTS:
            return
        if tag == "style":
            self._in_style = False
        open_tags = [node.tag for node in self.stack]
        if tag not in open_tags:
            self.notes.append(f"ignored stray end tag </{tag}>")
            return
        while self.stack:
            closed = self.stack.pop()
            if closed.tag == tag:
                break
            self.notes.append(f"auto-closed <{closed.tag}> at </{tag}>")

    def handle_data(self, data: str) -> None:
        if self._in_style:
            self.css_texts.append(data)
            return
        if not self.stack:
            if data.strip():
                # Text outside any element: wrap later via the synthetic root.
                node = RawNode(tag="span", text_chunks=[data])
                self.top_level.append(node)
                self.notes.append("wrapped top-level text in a synthetic <span>")
            return
        self.stack[-1].text_chunks.append(data)


def parse_html(html_text: str) -> tuple[RawNode, list[str], list[str]]:
    """Parse HTML leniently.

    Returns (root node, css texts from <style> blocks, recovery notes).
    Raises :class:`ParseError` only when the input is not text.
    """
    if isinstance(html_text, bytes):
        try:
            html_text = html_text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8 text: {exc}") from None
    if not isinstance(html_text, str):
        raise ParseError(f"expected text input, got {type(html_text).__name__}")

    parser = _LenientParser()
    parser.feed(html_text)
    parser.close()
    for node in parser.stack:
        parser.notes.append(f"auto-closed <{node.tag}> at end of input")

    tops = parser.top_level
    if len(tops) == 1:
        root = tops[0]
    else:
        root = RawNode(tag="body", children=tops)
        if tops:
            parser.notes.append("wrapped multiple top-level elements in a synthetic <body>")
        else:
            parser.notes.append("empty document; synthesized an empty <body>")
    return root, parser.css_texts, parser.notes
