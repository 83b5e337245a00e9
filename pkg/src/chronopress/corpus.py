"""Corpus data model and OCR input parsing.

Two page formats are supported: a small ALTO XML subset carrying word
coordinates and font styles, and bare OCR text as a fallback. A CSV
manifest maps each input file to its (title, date, page_number) identity.
All types are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import csv
import datetime as dt
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import AltoParseError, AltoStructureError, ChronopressError, IngestError, ManifestError

# A Term is a cleaned token: lowercase letters only, length >= 2.
Term = str

DEFAULT_FONT_SIZE = 10.0

MANIFEST_COLUMNS = ("path", "title", "date", "page_number", "format")
PAGE_FORMATS = ("alto", "text")


def is_term(value: str) -> bool:
    """True if ``value`` satisfies the Term shape (see normalize_token)."""
    return len(value) >= 2 and value.isalpha() and value == value.lower()


def normalize_token(raw: str) -> Term | None:
    """Reduce a raw OCR token to a Term, or None if nothing survives.

    Lowercases, strips leading and trailing non-letter characters, and
    keeps the result only when it is purely alphabetic with length >= 2.
    Digits or punctuation in the interior reject the whole token; most
    OCR garbage dies here before the vocabulary intersection even runs.
    """
    s = raw.lower()
    start, end = 0, len(s)
    while start < end and not s[start].isalpha():
        start += 1
    while end > start and not s[end - 1].isalpha():
        end -= 1
    s = s[start:end]
    if len(s) >= 2 and s.isalpha():
        return s
    return None


@dataclass(frozen=True)
class WordToken:
    """One OCR word with page geometry (pixels) and font size (points)."""

    text: str
    hpos: int = 0
    vpos: int = 0
    width: int = 0
    height: int = 0
    font_size: float = DEFAULT_FONT_SIZE

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("token text must be non-empty")
        if min(self.hpos, self.vpos, self.width, self.height) < 0:
            raise ValueError("token geometry must be >= 0")
        if self.font_size <= 0:
            raise ValueError("font_size must be > 0")


@dataclass(frozen=True)
class TextBlock:
    """A layout block holding tokens in source-document order."""

    block_id: str
    tokens: tuple[WordToken, ...] = ()
    bbox: tuple[int, int, int, int] = (0, 0, 0, 0)  # hpos, vpos, width, height

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "bbox", tuple(self.bbox))


@dataclass(frozen=True, order=True)
class PageId:
    """Identity of one page within a corpus: (title, date, page_number)."""

    title: str
    date: dt.date
    page_number: int = 1

    def __post_init__(self) -> None:
        if self.page_number < 1:
            raise ValueError("page_number must be >= 1")


@dataclass(frozen=True)
class Page:
    """A parsed page: blocks in source order, each with ordered tokens."""

    id: PageId
    blocks: tuple[TextBlock, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))

    def tokens(self) -> list[WordToken]:
        """All tokens, block by block, in source-document order."""
        return [t for block in self.blocks for t in block.tokens]


@dataclass(frozen=True)
class ManifestEntry:
    """One corpus input file and its page identity."""

    path: Path
    title: str
    date: dt.date
    page_number: int
    format: str  # "alto" | "text"

    @property
    def page_id(self) -> PageId:
        return PageId(self.title, self.date, self.page_number)


@dataclass(frozen=True)
class CorpusManifest:
    """Validated list of corpus input files.

    Construction rejects duplicate (title, date, page_number) triples, so
    any CorpusManifest in hand is safe to index.
    """

    entries: tuple[ManifestEntry, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        seen: set[tuple[str, dt.date, int]] = set()
        for entry in self.entries:
            key = (entry.title, entry.date, entry.page_number)
            if key in seen:
                raise ManifestError(
                    f"duplicate page ({entry.title}, {entry.date.isoformat()}, "
                    f"{entry.page_number}) in manifest"
                )
            seen.add(key)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def load_manifest(path: str | Path) -> CorpusManifest:
    """Load and validate a manifest CSV.

    Header row is required: path,title,date,page_number,format. Dates are
    ISO-8601, format is "alto" or "text". Relative file paths are resolved
    against the manifest's own directory so corpora stay relocatable.
    """
    path = Path(path)
    base = path.parent
    entries: list[ManifestEntry] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = set(MANIFEST_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ManifestError(
                f"manifest {path} is missing columns: {', '.join(sorted(missing))}"
            )
        for row_no, row in enumerate(reader, start=2):
            raw_path = (row["path"] or "").strip()
            if not raw_path:
                raise ManifestError(f"row {row_no}: empty path")
            title = (row["title"] or "").strip()
            if not title:
                raise ManifestError(f"row {row_no}: empty title")
            try:
                date = dt.date.fromisoformat((row["date"] or "").strip())
            except ValueError:
                raise ManifestError(
                    f"row {row_no}: invalid date {row['date']!r} (expected YYYY-MM-DD)"
                ) from None
            try:
                page_number = int((row["page_number"] or "").strip())
            except ValueError:
                raise ManifestError(
                    f"row {row_no}: invalid page_number {row['page_number']!r}"
                ) from None
            if page_number < 1:
                raise ManifestError(f"row {row_no}: page_number must be >= 1")
            fmt = (row["format"] or "").strip().lower()
            if fmt not in PAGE_FORMATS:
                raise ManifestError(
                    f"row {row_no}: unknown format {row['format']!r} "
                    f"(expected one of {', '.join(PAGE_FORMATS)})"
                )
            file_path = Path(raw_path)
            if not file_path.is_absolute():
                file_path = base / file_path
            entries.append(ManifestEntry(file_path, title, date, page_number, fmt))
    return CorpusManifest(tuple(entries))


def _local_name(tag: str) -> str:
    # ALTO files are namespaced; match on local element names only.
    return tag.rsplit("}", 1)[-1]


def _int_attr(el: ET.Element, name: str) -> int:
    raw = el.get(name)
    if raw is None:
        return 0
    try:
        value = int(float(raw))
    except ValueError:
        return 0
    return max(value, 0)


def _resolve_font(refs: str | None, styles: dict[str, float]) -> float:
    # STYLEREFS is an IDREFS list; the first reference that resolves wins.
    if refs:
        for ref in refs.split():
            if ref in styles:
                return styles[ref]
    return DEFAULT_FONT_SIZE


def _byte_offset(data: bytes, line: int, column: int) -> int:
    lines = data.splitlines(keepends=True)
    return sum(len(l) for l in lines[: line - 1]) + column


def parse_alto_page(data: bytes, page_id: PageId) -> Page:
    """Parse an ALTO-subset XML document into a Page.

    Recognized structure: Styles/TextStyle for font sizes, then
    TextBlock > TextLine > String for the token stream. STYLEREFS may sit
    on String, TextLine, or TextBlock; the nearest enclosing value wins.
    Tokens whose style cannot be resolved fall back to font size
    ``DEFAULT_FONT_SIZE`` rather than failing, and missing geometry
    attributes are read as 0.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = exc.position
        offset = _byte_offset(data, line, column)
        raise AltoParseError(
            f"malformed XML at byte {offset} (line {line}, column {column})"
        ) from exc

    styles: dict[str, float] = {}
    for el in root.iter():
        if _local_name(el.tag) != "TextStyle":
            continue
        style_id = el.get("ID")
        raw_size = el.get("FONTSIZE")
        if style_id is None or raw_size is None:
            continue
        try:
            points = float(raw_size)
        except ValueError:
            continue
        if points > 0:
            styles[style_id] = points

    blocks: list[TextBlock] = []
    seen_ids: set[str] = set()
    block_els = [el for el in root.iter() if _local_name(el.tag) == "TextBlock"]
    for block_no, block_el in enumerate(block_els):
        block_id = block_el.get("ID") or f"block{block_no}"
        if block_id in seen_ids:
            raise AltoStructureError(f"duplicate TextBlock ID {block_id!r}")
        seen_ids.add(block_id)
        block_refs = block_el.get("STYLEREFS")
        bbox = (
            _int_attr(block_el, "HPOS"),
            _int_attr(block_el, "VPOS"),
            _int_attr(block_el, "WIDTH"),
            _int_attr(block_el, "HEIGHT"),
        )
        tokens: list[WordToken] = []
        lines = [el for el in block_el if _local_name(el.tag) == "TextLine"]
        for line_no, line_el in enumerate(lines):
            line_refs = line_el.get("STYLEREFS") or block_refs
            strings = [el for el in line_el if _local_name(el.tag) == "String"]
            for string_no, string_el in enumerate(strings):
                content = string_el.get("CONTENT")
                if content is None:
                    raise AltoStructureError(
                        "String element missing CONTENT at "
                        f"TextBlock[{block_id}]/TextLine[{line_no}]/String[{string_no}]"
                    )
                if not content.strip():
                    continue
                refs = string_el.get("STYLEREFS") or line_refs
                tokens.append(
                    WordToken(
                        text=content,
                        hpos=_int_attr(string_el, "HPOS"),
                        vpos=_int_attr(string_el, "VPOS"),
                        width=_int_attr(string_el, "WIDTH"),
                        height=_int_attr(string_el, "HEIGHT"),
                        font_size=_resolve_font(refs, styles),
                    )
                )
        blocks.append(TextBlock(block_id, tuple(tokens), bbox))
    return Page(page_id, tuple(blocks))


def parse_plaintext_page(text: str, page_id: PageId) -> Page:
    """Wrap bare OCR text as a single-block Page.

    Tokens are whitespace-split runs with zeroed geometry and the default
    font size, so plain-text corpora flow through the same pipeline
    (segmentation will see one block and one body font).
    """
    tokens = tuple(WordToken(text=word) for word in text.split())
    return Page(page_id, (TextBlock("block0", tokens),))


def load_page(entry: ManifestEntry) -> Page:
    """Read and parse one manifest entry into a Page.

    Read or parse failures come back as IngestError naming the file, so
    ingest loops have a single error surface to handle.
    """
    try:
        data = entry.path.read_bytes()
    except OSError as exc:
        raise IngestError(f"cannot read {entry.path}: {exc}") from exc
    try:
        if entry.format == "alto":
            return parse_alto_page(data, entry.page_id)
        return parse_plaintext_page(data.decode("utf-8"), entry.page_id)
    except UnicodeDecodeError as exc:
        raise IngestError(f"{entry.path}: not valid UTF-8 ({exc})") from exc
    except ChronopressError as exc:
        raise IngestError(f"{entry.path}: {exc}") from exc
