"""Reference-section isolation, citation segmentation and author-token extraction."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Literal, Optional, Sequence

from .errors import NoCitationsFound, NoReferenceSection
from .ingest import NormalizedText

QUOTES = ('"', "“")
MAX_NAME_LENGTH = 60

_MARKERS = (
    ("upper", re.compile(r"^[ \t]*REFERENCES[ \t]*$\n?", re.MULTILINE)),
    ("sentence", re.compile(r"^[ \t]*References[ \t]*$\n?", re.MULTILINE)),
)
_BRACKET_LABEL = re.compile(r"\[(\d+)\]")
_NUMBERED_LINE = re.compile(r"^[ \t]*(\d+)\.[ \t]+", re.MULTILINE)
_DIGIT = re.compile(r"\d")
_LETTER = re.compile(r"[^\W\d_]")
_WS = re.compile(r"\s+")
_ET_AL = re.compile(r"\bet\s+al\b\.?", re.IGNORECASE)
_AND = re.compile(r",?\s*\band\b\s+", re.IGNORECASE)


@dataclass(frozen=True)
class ReferenceSection:
    raw: str
    marker_used: Literal["upper", "sentence"]


@dataclass
class Citation:
    index: int
    raw: str
    normalized: str = ""
    author_tokens: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class AuthorMention:
    canonical_name: str
    citation_index: int


def collapse_ws(text: str) -> str:
    return _WS.sub(" ", text).strip()


class StopWords:
    """Case-insensitive whole-word matcher over a stop-word list."""

    def __init__(self, words: Iterable[str]):
        self.words = sorted({collapse_ws(w).casefold() for w in words if w.strip()})
        if self.words:
            alternation = "|".join(re.escape(w).replace(r"\ ", r"\s+") for w in self.words)
            self._pattern = re.compile(rf"(?<!\w)(?:{alternation})(?!\w)", re.IGNORECASE)
        else:
            self._pattern = None

    @classmethod
    def from_file(cls, path) -> "StopWords":
        return cls(_read_list(Path(path).read_text(encoding="utf-8")))

    @classmethod
    def default(cls) -> "StopWords":
        text = resources.files("refrank").joinpath("data/stopwords.txt").read_text(encoding="utf-8")
        return cls(_read_list(text))

    def matches(self, token: str) -> bool:
        return bool(self._pattern and self._pattern.search(token))


def _read_list(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


_default_stopwords: Optional[StopWords] = None


def default_stopwords() -> StopWords:
    global _default_stopwords
    if _default_stopwords is None:
        _default_stopwords = StopWords.default()
    return _default_stopwords


def isolate_reference_section(text: NormalizedText | str) -> ReferenceSection:
    """Return everything after the last line consisting of the references keyword.

    "REFERENCES" is tried first; "References" only if the upper-case form
    never occurs on a line of its own.
    """
    body = text.text if isinstance(text, NormalizedText) else text
    for marker, pattern in _MARKERS:
        last = None
        for last in pattern.finditer(body):
            pass
        if last is not None:
            return ReferenceSection(body[last.end():], marker)
    raise NoReferenceSection("no line reading 'REFERENCES' or 'References'")


def split_citations(section: ReferenceSection | str) -> list[Citation]:
    raw = section.raw if isinstance(section, ReferenceSection) else section
    cuts = _bracket_cuts(raw) or _numbered_cuts(raw)
    if not cuts:
        raise NoCitationsFound("no [n] labels or numbered lines in the reference section")
    citations = []
    for i, (start, end) in enumerate(cuts):
        stop = cuts[i + 1][0] if i + 1 < len(cuts) else len(raw)
        citations.append(Citation(index=i + 1, raw=raw[end:stop].strip()))
    return citations


def _bracket_cuts(raw: str) -> list[tuple[int, int]]:
    # labels must run 1, 2, 3, ...; stray bracketed numbers inside entries are skipped
    cuts, expected = [], 1
    for m in _BRACKET_LABEL.finditer(raw):
        if int(m.group(1)) == expected:
            cuts.append((m.start(), m.end()))
            expected += 1
    return cuts


def _numbered_cuts(raw: str) -> list[tuple[int, int]]:
    cuts, expected = [], 1
    for m in _NUMBERED_LINE.finditer(raw):
        if int(m.group(1)) == expected:
            cuts.append((m.start(), m.end()))
            expected += 1
    return cuts


def normalize_citation(raw: str) -> str:
    text = raw.replace("\r", " ").replace("\n", " ")
    text = _DIGIT.sub("", text)
    return collapse_ws(text)


def is_valid_author_name(token: str, stopwords: Optional[StopWords] = None) -> bool:
    token = token.strip()
    if not token or token.startswith(QUOTES):
        return False
    if _DIGIT.search(token) or len(token) > MAX_NAME_LENGTH:
        return False
    if not _LETTER.search(token):
        return False
    return not (stopwords or default_stopwords()).matches(token)


def extract_author_tokens(normalized: str, stopwords: Optional[StopWords] = None) -> list[str]:
    """Comma-split the author run of a normalized citation.

    Parts are consumed up to the first one opening with a double quote
    (the title); invalid parts are dropped, order is kept.
    """
    title_at = min((i for i in (normalized.find(q) for q in QUOTES) if i >= 0), default=len(normalized))
    head = _ET_AL.sub("", normalized[:title_at])
    head = _AND.sub(", ", head)
    text = head + normalized[title_at:]

    tokens = []
    for part in text.split(","):
        part = collapse_ws(part)
        if part.startswith(QUOTES):
            break
        if is_valid_author_name(part, stopwords):
            tokens.append(part)
    return tokens


def parse_citations(text: NormalizedText | str, stopwords: Optional[StopWords] = None) -> list[Citation]:
    """Full reference parse: isolate, split, normalize, extract authors."""
    citations = split_citations(isolate_reference_section(text))
    for c in citations:
        c.normalized = normalize_citation(c.raw)
        c.author_tokens = extract_author_tokens(c.normalized, stopwords)
    return citations


def author_mentions(citations: Sequence[Citation]) -> list[AuthorMention]:
    return [AuthorMention(collapse_ws(tok), c.index) for c in citations for tok in c.author_tokens]


# header parsing for submitting authors

_INITIALS_NAME = re.compile(
    r"^(?:[A-Z][a-z]?\.(?:\s*-?\s*[A-Z]\.)*\s*)+(?:[a-z]+\s+)*[A-Z][\w'’-]+$"
)
_ABSTRACT = re.compile(r"^\s*(?:abstract|ABSTRACT)\b", re.MULTILINE)


def header_authors(text: NormalizedText | str, max_lines: int = 40) -> list[str]:
    """Guess the submitting authors from the manuscript header.

    Looks at the lines before the abstract (or the first ``max_lines``
    lines) for a line whose comma/"and"-separated parts all look like
    "Initials Surname". Returns the first such line's names.
    """
    body = text.text if isinstance(text, NormalizedText) else text
    m = _ABSTRACT.search(body)
    header = body[: m.start()] if m else "\n".join(body.splitlines()[:max_lines])
    for line in header.splitlines():
        parts = [collapse_ws(p) for p in _AND.sub(", ", line).split(",")]
        parts = [p for p in parts if p]
        if parts and all(_INITIALS_NAME.match(p) for p in parts):
            return parts
    return []
