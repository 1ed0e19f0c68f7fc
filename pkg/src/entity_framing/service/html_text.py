"""Minimal HTML-to-text extraction: headline plus paragraph text, with
paragraph breaks preserved. No readability heuristics."""

from __future__ import annotations

from html.parser import HTMLParser

_SKIP = {"script", "style", "noscript", "template", "svg"}
_BLOCK = {"p", "h1", "h2", "h3", "li"}


class _Extractor(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.blocks: list[str] = []
        self.title = ""
        self.headline = ""
        self._skip_depth = 0
        self._current: list[str] | None = None
        self._in_title = False
        self._block_tag = ""

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP:
            self._skip_depth += 1
        elif tag == "title":
            self._in_title = True
        elif tag in _BLOCK and self._skip_depth == 0:
            self._flush()
            self._current = []
            self._block_tag = tag
        elif tag == "br" and self._current is not None:
            self._current.append("\n")

    def handle_endtag(self, tag):
        if tag in _SKIP and self._skip_depth:
            self._skip_depth -= 1
        elif tag == "title":
            self._in_title = False
        elif tag in _BLOCK:
            self._flush()

    def handle_data(self, data):
        if self._skip_depth:
            return
        if self._in_title:
            self.title += data
        elif self._current is not None:
            self._current.append(data)

    def _flush(self) -> None:
        if self._current is None:
            return
        text = " ".join("".join(self._current).split())
        if text:
            if self._block_tag == "h1" and not self.headline:
                self.headline = text
            else:
                self.blocks.append(text)
        self._current = None
        self._block_tag = ""


def html_to_text(html: str) -> str:
    """Headline (first h1 or the title) and paragraphs separated by blank lines."""
    parser = _Extractor()
    parser.feed(html)
    parser.close()
    parser._flush()
    headline = parser.headline or " ".join(parser.title.split())
    parts = ([headline] if headline else []) + parser.blocks
    return "\n\n".join(parts).strip()
