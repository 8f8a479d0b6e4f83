"""Boilerplate removal: strip markup, split paragraphs, label quality.

Each paragraph is labeled ``good`` or ``boilerplate`` by three cheap
heuristics (link-character density, stop-word ratio, minimum length).
Nothing is deleted here; downstream stages skip boilerplate paragraphs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

from .corpus import BOILERPLATE, GOOD, Document, Paragraph
from .errors import DecodingError
from .tokens import profile_for

REASON_LINKS = "link_density"
REASON_STOPWORDS = "stop_word_ratio"
REASON_SHORT = "too_short"


@dataclass(frozen=True)
class CleaningConfig:
    """Thresholds for the paragraph quality heuristics."""

    max_link_density: float = 0.3
    min_stopword_ratio: float = 0.2
    min_chars: int = 20


@dataclass
class CleaningReport:
    paragraphs_kept: int = 0
    paragraphs_dropped: int = 0
    drop_reasons: dict = field(default_factory=dict)

    def record(self, reason: str | None):
        if reason is None:
            self.paragraphs_kept += 1
        else:
            self.paragraphs_dropped += 1
            self.drop_reasons[reason] = self.drop_reasons.get(reason, 0) + 1

    def to_record(self) -> dict:
        return {
            "paragraphs_kept": self.paragraphs_kept,
            "paragraphs_dropped": self.paragraphs_dropped,
            "drop_reasons": dict(sorted(self.drop_reasons.items())),
        }


_BLOCK_TAGS = {
    "p", "div", "li", "ul", "ol", "dl", "dt", "dd", "table", "tr", "td", "th",
    "h1", "h2", "h3", "h4", "h5", "h6", "br", "hr", "section", "article",
    "header", "footer", "nav", "aside", "blockquote", "pre", "title", "form",
}
_SKIP_TAGS = {"script", "style", "noscript", "template", "svg", "head"}

_MARKUP_RE = re.compile(
    r"<\s*(!doctype|html|head|body|p|div|span|a|br|li|ul|ol|h[1-6]|table|title)\b",
    re.IGNORECASE,
)
_URL_RE = re.compile(r"https?://\S+|www\.\S+")


class _TextExtractor(HTMLParser):
    """Collects (paragraph text, link character count) pairs from markup."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.paragraphs: list[tuple[str, int]] = []
        self._chunks: list[str] = []
        self._link_chars = 0
        self._link_depth = 0
        self._skip_depth = 0

    def _flush(self):
        text = _collapse(" ".join(self._chunks))
        if text:
            self.paragraphs.append((text, self._link_chars))
        self._chunks = []
        self._link_chars = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
        elif tag == "a":
            self._link_depth += 1
        elif tag in _BLOCK_TAGS:
            self._flush()

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
        elif tag == "a":
            self._link_depth = max(0, self._link_depth - 1)
        elif tag in _BLOCK_TAGS:
            self._flush()

    def handle_data(self, data):
        if self._skip_depth:
            return
        self._chunks.append(data)
        if self._link_depth:
            self._link_chars += len(re.sub(r"\s", "", data))

    def close(self):
        super().close()
        self._flush()


def _collapse(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def _split_paragraphs(raw: str) -> list[tuple[str, int]]:
    """Paragraphs from markup or plain text, each with a link-char count.

    Plain text splits on blank lines; link characters are the characters of
    bare URLs (the plain-text stand-in for anchor text).
    """
    if _MARKUP_RE.search(raw):
        extractor = _TextExtractor()
        extractor.feed(raw)
        extractor.close()
        return extractor.paragraphs
    paragraphs = []
    for block in re.split(r"\n\s*\n", raw):
        text = _collapse(block)
        if text:
            url_chars = sum(len(m.group(0)) for m in _URL_RE.finditer(text))
            paragraphs.append((text, url_chars))
    return paragraphs


def _quality_reason(
    text: str,
    link_chars: int,
    stop_words: frozenset,
    config: CleaningConfig,
) -> str | None:
    """None when the paragraph is good, otherwise the failing rule.

    Length is checked first: the stop-word ratio carries no signal on a
    handful of words.
    """
    if len(text) < config.min_chars:
        return REASON_SHORT
    visible = len(re.sub(r"\s", "", text))
    if visible > 0 and link_chars / visible > config.max_link_density:
        return REASON_LINKS
    if stop_words:
        words = re.findall(r"\w+(?:[-'’]\w+)*", text.casefold())
        if words:
            ratio = sum(1 for w in words if w in stop_words) / len(words)
            if ratio < config.min_stopword_ratio:
                return REASON_STOPWORDS
    return None


def clean_document(
    raw: str | bytes,
    doc_id: str,
    language: str,
    source: str = "",
    fetched_at: str = "",
    config: CleaningConfig | None = None,
    stop_words: frozenset | None = None,
    encoding: str = "utf-8",
) -> tuple[Document, CleaningReport]:
    """Turn raw markup or plain text into a quality-labeled Document.

    Raises :class:`DecodingError` (with the byte offset) when ``raw`` is a
    byte string that cannot be decoded.
    """
    if isinstance(raw, bytes):
        try:
            raw = raw.decode(encoding)
        except UnicodeDecodeError as exc:
            raise DecodingError(f"cannot decode input as {encoding}", exc.start) from exc
    if config is None:
        config = CleaningConfig()
    if stop_words is None:
        stop_words = profile_for(language).stop_words

    report = CleaningReport()
    paragraphs = []
    for text, link_chars in _split_paragraphs(raw):
        reason = _quality_reason(text, link_chars, stop_words, config)
        report.record(reason)
        paragraphs.append(Paragraph(text, GOOD if reason is None else BOILERPLATE))
    if not paragraphs:
        # Whitespace-only input still has to produce a valid document.
        report.record(REASON_SHORT)
        paragraphs = [Paragraph("", BOILERPLATE)]
    doc = Document(
        id=doc_id,
        source=source,
        language=language,
        paragraphs=paragraphs,
        fetched_at=fetched_at,
    )
    return doc, report
