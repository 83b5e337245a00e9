"""Per-title term/date statistics index and time-series queries.

Counting is per document: a document is either a whole page or one
article segment, chosen at build time. For every (title, date, term) the
index keeps how many documents contained the term (doc_count) and how
many occurrences there were (term_count); per (title, date) it keeps the
document count and the filtered-token total, so the conservation
invariant sum(term_count) == total_tokens holds by construction.
"""

from __future__ import annotations

import datetime as dt
import json
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal, Sequence

from .corpus import CorpusManifest, ManifestEntry, Term, load_page
from .errors import DateRangeError, IndexFileError, IngestError, VocabularyError
from .lexicon import Stoplist, Vocabulary, filter_tokens
from .segmentation import SegmentationParams, segment_articles

logger = logging.getLogger(__name__)

DocumentUnit = Literal["page", "segment"]
DOCUMENT_UNITS = ("page", "segment")

# One counted document: title, date, and its filtered term stream.
Document = tuple[str, dt.date, Sequence[Term]]


def format_fixed6(value: float) -> str:
    """Fixed 6-decimal formatting used by every numeric text output."""
    return f"{value:.6f}"


@dataclass(frozen=True)
class DailyTermStats:
    """Index cell: per (title, date, term) document and occurrence counts."""

    title: str
    date: dt.date
    term: Term
    doc_count: int
    term_count: int

    def __post_init__(self) -> None:
        if self.doc_count < 1 or self.term_count < self.doc_count:
            raise ValueError("need term_count >= doc_count >= 1")


@dataclass(frozen=True)
class DateTotals:
    """Per (title, date) document count and filtered token total."""

    title: str
    date: dt.date
    n_docs: int
    total_tokens: int

    def __post_init__(self) -> None:
        if self.n_docs < 0 or self.total_tokens < 0:
            raise ValueError("totals must be >= 0")


@dataclass(frozen=True)
class SeriesPoint:
    """One day of a term's time series."""

    date: dt.date
    term_count: int
    doc_count: int
    total_tokens: int
    rel_freq: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.rel_freq <= 1.0:
            raise ValueError("rel_freq must be within [0, 1]")


class TermDateIndex:
    """Immutable term/date statistics for one or more titles.

    Queries are read-only and safe for concurrent use. Construction
    verifies the conservation invariant, so a loaded or built index is
    internally consistent.
    """

    def __init__(
        self,
        stats: dict[tuple[str, dt.date, Term], DailyTermStats],
        totals: dict[tuple[str, dt.date], DateTotals],
    ) -> None:
        check: dict[tuple[str, dt.date], int] = {}
        for (title, date, _term), cell in stats.items():
            key = (title, date)
            if key not in totals:
                raise ValueError(f"stats cell {key} has no totals entry")
            if cell.doc_count > totals[key].n_docs:
                raise ValueError(f"doc_count exceeds n_docs for {key}")
            check[key] = check.get(key, 0) + cell.term_count
        for key, totals_cell in totals.items():
            if check.get(key, 0) != totals_cell.total_tokens:
                raise ValueError(f"token totals do not add up for {key}")
        self._stats = dict(stats)
        self._totals = dict(totals)
        by_title: dict[str, dict[Term, dict[dt.date, DailyTermStats]]] = {}
        for (title, date, term), cell in stats.items():
            by_title.setdefault(title, {}).setdefault(term, {})[date] = cell
        self._by_title = by_title
        self._span: dict[str, tuple[dt.date, dt.date]] = {}
        for title, date in totals:
            lo, hi = self._span.get(title, (date, date))
            self._span[title] = (min(lo, date), max(hi, date))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TermDateIndex):
            return NotImplemented
        return self._stats == other._stats and self._totals == other._totals

    def titles(self) -> list[str]:
        return sorted(self._span)

    def span(self, title: str) -> tuple[dt.date, dt.date] | None:
        """Inclusive [first, last] ingested date for the title, if any."""
        return self._span.get(title)

    def stats_for(self, title: str, date: dt.date, term: Term) -> DailyTermStats | None:
        return self._stats.get((title, date, term))

    def totals_for(self, title: str, date: dt.date) -> DateTotals | None:
        return self._totals.get((title, date))

    def document_frequency(self, title: str, term: Term, date: dt.date) -> int:
        """Documents containing the term that day; 0 when absent."""
        cell = self._stats.get((title, date, term))
        return cell.doc_count if cell else 0

    def occurrence_count(self, title: str, term: Term, date: dt.date) -> int:
        cell = self._stats.get((title, date, term))
        return cell.term_count if cell else 0

    def terms(
        self, title: str, start: dt.date | None = None, end: dt.date | None = None
    ) -> list[Term]:
        """Sorted terms occurring for the title, optionally date-bounded."""
        found = []
        for term, by_date in self._by_title.get(title, {}).items():
            if any(
                (start is None or start <= d) and (end is None or d <= end)
                for d in by_date
            ):
                found.append(term)
        return sorted(found)

    def term_totals(self) -> Counter[Term]:
        """Occurrence counts per term across all titles and dates."""
        counts: Counter[Term] = Counter()
        for (_, _, term), cell in self._stats.items():
            counts[term] += cell.term_count
        return counts

    def all_dates(self) -> set[dt.date]:
        return {date for _, date in self._totals}

    def total_documents(self) -> int:
        return sum(cell.n_docs for cell in self._totals.values())

    def term_series(
        self, title: str, term: Term, start: dt.date, end: dt.date
    ) -> list[SeriesPoint]:
        """One zero-filled point per calendar day in [start, end].

        Days without ingested documents report total_tokens 0; rel_freq is
        term_count / total_tokens, or 0 when the denominator is 0.
        """
        if start > end:
            raise DateRangeError(f"start {start} is after end {end}")
        points: list[SeriesPoint] = []
        day = start
        while day <= end:
            cell = self._stats.get((title, day, term))
            totals = self._totals.get((title, day))
            term_count = cell.term_count if cell else 0
            doc_count = cell.doc_count if cell else 0
            total_tokens = totals.total_tokens if totals else 0
            rel = term_count / total_tokens if total_tokens else 0.0
            points.append(SeriesPoint(day, term_count, doc_count, total_tokens, rel))
            day += dt.timedelta(days=1)
        return points

    def to_json(self) -> str:
        """Canonical serialized form: sorted keys, compact separators."""
        stats: dict[str, dict[str, dict[str, list[int]]]] = {}
        for (title, date, term), cell in self._stats.items():
            stats.setdefault(title, {}).setdefault(date.isoformat(), {})[term] = [
                cell.doc_count,
                cell.term_count,
            ]
        totals: dict[str, dict[str, list[int]]] = {}
        for (title, date), cell in self._totals.items():
            totals.setdefault(title, {})[date.isoformat()] = [
                cell.n_docs,
                cell.total_tokens,
            ]
        span = {
            title: [lo.isoformat(), hi.isoformat()]
            for title, (lo, hi) in self._span.items()
        }
        payload = {"span": span, "stats": stats, "totals": totals}
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def from_json(cls, text: str) -> "TermDateIndex":
        try:
            payload = json.loads(text)
            stats: dict[tuple[str, dt.date, Term], DailyTermStats] = {}
            for title, by_date in payload["stats"].items():
                for date_str, by_term in by_date.items():
                    date = dt.date.fromisoformat(date_str)
                    for term, (doc_count, term_count) in by_term.items():
                        stats[(title, date, term)] = DailyTermStats(
                            title, date, term, doc_count, term_count
                        )
            totals: dict[tuple[str, dt.date], DateTotals] = {}
            for title, by_date in payload["totals"].items():
                for date_str, (n_docs, total_tokens) in by_date.items():
                    date = dt.date.fromisoformat(date_str)
                    totals[(title, date)] = DateTotals(title, date, n_docs, total_tokens)
            index = cls(stats, totals)
            span = {
                title: [lo.isoformat(), hi.isoformat()]
                for title, (lo, hi) in index._span.items()
            }
            if span != payload["span"]:
                raise ValueError("span does not match totals")
        except (KeyError, TypeError, ValueError) as exc:
            raise IndexFileError(f"malformed index file: {exc}") from exc
        return index

    @classmethod
    def load(cls, path: str | Path) -> "TermDateIndex":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise IndexFileError(f"cannot read index {path}: {exc}") from exc
        return cls.from_json(text)


def count_documents(documents: Iterable[Document]) -> TermDateIndex:
    """Count filtered documents into a fresh index.

    Merging is additive, so the result does not depend on document order.
    """
    doc_counts: Counter = Counter()
    term_counts: Counter = Counter()
    n_docs: Counter = Counter()
    token_totals: Counter = Counter()
    for title, date, terms in documents:
        n_docs[(title, date)] += 1
        token_totals[(title, date)] += len(terms)
        for term, occurrences in Counter(terms).items():
            doc_counts[(title, date, term)] += 1
            term_counts[(title, date, term)] += occurrences
    stats = {
        key: DailyTermStats(key[0], key[1], key[2], doc_counts[key], term_counts[key])
        for key in doc_counts
    }
    totals = {
        key: DateTotals(key[0], key[1], n_docs[key], token_totals[key])
        for key in n_docs
    }
    return TermDateIndex(stats, totals)


def _entry_documents(
    entry: ManifestEntry,
    vocab: Vocabulary,
    stop: Stoplist,
    unit: DocumentUnit,
    seg_params: SegmentationParams,
) -> list[Document]:
    page = load_page(entry)
    if unit == "page":
        streams = [[token.text for token in page.tokens()]]
    elif page.tokens():
        streams = [
            [token.text for token in seg.tokens]
            for seg in segment_articles(page, seg_params)
        ]
    else:
        # A tokenless page yields no segments, hence no documents.
        streams = []
    return [
        (entry.title, entry.date, filter_tokens(stream, vocab, stop))
        for stream in streams
    ]


def build_index(
    manifest: CorpusManifest,
    vocab: Vocabulary,
    stop: Stoplist = Stoplist(),
    unit: DocumentUnit = "page",
    seg_params: SegmentationParams = SegmentationParams(),
    *,
    skip_bad: bool = False,
    threads: int = 1,
) -> TermDateIndex:
    """Parse, filter, and count every manifest entry.

    Files may be processed concurrently (``threads`` > 1); results are
    merged in manifest order so the built index and any raised error are
    identical to the sequential run. With ``skip_bad`` an unreadable or
    unparseable file logs a warning and is excluded instead of aborting.
    """
    if unit not in DOCUMENT_UNITS:
        raise ValueError(f"unknown document unit {unit!r}")
    if not len(vocab):
        raise VocabularyError("vocabulary is empty")

    def worker(entry: ManifestEntry):
        try:
            return entry, _entry_documents(entry, vocab, stop, unit, seg_params), None
        except IngestError as exc:
            return entry, None, exc

    entries = list(manifest)
    if threads > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(worker, entries))
    else:
        results = [worker(entry) for entry in entries]

    documents: list[Document] = []
    for entry, docs, error in results:
        if error is not None:
            if not skip_bad:
                raise error
            logger.warning("skipping %s: %s", entry.path, error)
            continue
        documents.extend(docs)
    return count_documents(documents)


def corpus_term_counts(
    manifest: CorpusManifest,
    vocab: Vocabulary,
    unit: DocumentUnit = "page",
    seg_params: SegmentationParams = SegmentationParams(),
    *,
    skip_bad: bool = False,
    threads: int = 1,
) -> Counter[Term]:
    """Occurrence counts over the whole corpus, before any stoplist."""
    index = build_index(
        manifest, vocab, Stoplist(), unit, seg_params, skip_bad=skip_bad, threads=threads
    )
    return index.term_totals()


def series_to_csv(points: Iterable[SeriesPoint]) -> str:
    """CSV with LF line endings and 6-decimal rel_freq for byte stability."""
    lines = ["date,term_count,doc_count,total_tokens,rel_freq"]
    for p in points:
        lines.append(
            f"{p.date.isoformat()},{p.term_count},{p.doc_count},"
            f"{p.total_tokens},{format_fixed6(p.rel_freq)}"
        )
    return "\n".join(lines) + "\n"
