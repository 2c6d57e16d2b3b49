"""Turn an input manuscript (plain text or PDF) into normalized text."""
from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Literal, Optional

from .errors import ExtractionFailed, UnsupportedFormat

FormatHint = Literal["plain_text", "pdf", "auto"]
PDF_MAGIC = b"%PDF"

# An adapter takes raw PDF bytes and returns extracted text; it may raise.
PdfAdapter = Callable[[bytes], str]


@dataclass(frozen=True)
class SourceDocument:
    data: bytes
    format_hint: FormatHint = "auto"

    @classmethod
    def from_path(cls, path, format_hint: FormatHint = "auto") -> "SourceDocument":
        return cls(Path(path).read_bytes(), format_hint)

    def resolved_format(self) -> str:
        if self.format_hint != "auto":
            return self.format_hint
        return "pdf" if self.data.startswith(PDF_MAGIC) else "plain_text"


@dataclass(frozen=True)
class NormalizedText:
    text: str
    line_count: int

    @classmethod
    def from_string(cls, text: str) -> "NormalizedText":
        text = normalize_newlines(text)
        return cls(text, count_lines(text))


def normalize_newlines(text: str) -> str:
    return text.replace("\r\n", "\n").replace("\r", "\n")


def count_lines(text: str) -> int:
    if not text:
        return 0
    return len(text.splitlines())


def pypdf_adapter(data: bytes) -> str:
    """Default PDF adapter backed by pypdf (optional dependency)."""
    try:
        from pypdf import PdfReader
    except ImportError as exc:  # pragma: no cover - depends on environment
        raise ExtractionFailed("pypdf is not installed; install refrank[pdf]") from exc
    try:
        reader = PdfReader(io.BytesIO(data))
        return "\n".join(page.extract_text() or "" for page in reader.pages)
    except Exception as exc:
        raise ExtractionFailed(f"pypdf: {exc}") from exc


def extract_text(doc: SourceDocument, pdf_adapter: Optional[PdfAdapter] = None) -> NormalizedText:
    """Decode ``doc`` to text and normalize line endings.

    Plain text is decoded as UTF-8 with replacement of invalid sequences.
    PDFs are handed to ``pdf_adapter`` (pypdf by default); column handling
    and layout are the adapter's business.
    """
    if not doc.data:
        raise UnsupportedFormat("empty input")
    fmt = doc.resolved_format()
    if fmt == "pdf":
        if not doc.data.startswith(PDF_MAGIC):
            raise UnsupportedFormat("format_hint=pdf but input lacks the %PDF header")
        adapter = pdf_adapter or pypdf_adapter
        try:
            raw = adapter(doc.data)
        except ExtractionFailed:
            raise
        except Exception as exc:
            raise ExtractionFailed(str(exc)) from exc
    elif fmt == "plain_text":
        try:
            raw = doc.data.decode("utf-8")
        except UnicodeDecodeError:
            if b"\x00" in doc.data:
                raise UnsupportedFormat("input is binary and not a PDF") from None
            raw = doc.data.decode("utf-8", errors="replace")
    else:
        raise UnsupportedFormat(f"unknown format hint {fmt!r}")
    return NormalizedText.from_string(raw)
