"""Headline-driven article segmentation.

A headline is a run of tokens whose font size is at least ``alpha`` times
the page's modal (body) font size. Each headline starts a new article
segment; whatever precedes the first headline becomes a headline-less
segment. Segments always partition the page's tokens in reading order.
"""

from __future__ import annotations

import statistics
from collections import Counter
from dataclasses import dataclass

from .corpus import Page, PageId, WordToken


@dataclass(frozen=True)
class SegmentationParams:
    """Tuning knobs: ``alpha`` is relative to the page body font."""

    alpha: float = 1.5
    min_headline_tokens: int = 1

    def __post_init__(self) -> None:
        if self.alpha <= 1.0:
            raise ValueError("alpha must be > 1.0")
        if self.min_headline_tokens < 1:
            raise ValueError("min_headline_tokens must be >= 1")


@dataclass(frozen=True)
class HeadlineSpan:
    """A detected headline: token indices [start, end) within one block."""

    block_id: str
    token_range: tuple[int, int]
    font_size: float


@dataclass(frozen=True)
class ArticleSegment:
    """A headline-delimited run of tokens, the unit of categorization."""

    page: PageId
    seq: int
    headline_text: str | None
    tokens: tuple[WordToken, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))


def body_font_size(page: Page) -> float:
    """Modal font size over all tokens; ties break toward the smaller size."""
    counts = Counter(token.font_size for token in page.tokens())
    if not counts:
        raise ValueError("no tokens")
    return max(counts.items(), key=lambda kv: (kv[1], -kv[0]))[0]


def reading_order(page: Page) -> list[str]:
    """Linearize blocks column-major and return their ids in order.

    Blocks are bucketed into columns by horizontal position (bucket width
    is the page-wide median block width), columns run left to right, and
    blocks within a column run top to bottom. Ties fall back to hpos and
    then block_id so the order is total and deterministic.
    """
    blocks = list(page.blocks)
    if len(blocks) <= 1:
        return [b.block_id for b in blocks]
    bucket_width = statistics.median(b.bbox[2] for b in blocks)

    def column(block) -> int:
        if bucket_width <= 0:
            return 0
        return int(block.bbox[0] // bucket_width)

    blocks.sort(key=lambda b: (column(b), b.bbox[1], b.bbox[0], b.block_id))
    return [b.block_id for b in blocks]


def detect_headlines(
    page: Page, params: SegmentationParams = SegmentationParams()
) -> list[HeadlineSpan]:
    """Find maximal large-font token runs, in reading order.

    A run qualifies when every token's font size is >= alpha times the
    body size and the run has at least ``min_headline_tokens`` tokens.
    Runs never cross block boundaries.
    """
    threshold = params.alpha * body_font_size(page)
    by_id = {block.block_id: block for block in page.blocks}
    spans: list[HeadlineSpan] = []
    for block_id in reading_order(page):
        block = by_id[block_id]
        start: int | None = None
        for i, token in enumerate(block.tokens):
            if token.font_size >= threshold:
                if start is None:
                    start = i
                continue
            if start is not None:
                _close_run(spans, block, start, i, params)
                start = None
        if start is not None:
            _close_run(spans, block, start, len(block.tokens), params)
    return spans


def _close_run(spans, block, start: int, end: int, params: SegmentationParams) -> None:
    if end - start >= params.min_headline_tokens:
        size = max(t.font_size for t in block.tokens[start:end])
        spans.append(HeadlineSpan(block.block_id, (start, end), size))


def segment_articles(
    page: Page, params: SegmentationParams = SegmentationParams()
) -> list[ArticleSegment]:
    """Split a page into article segments at detected headlines.

    Each headline starts a segment whose headline_text is the span's
    tokens joined by single spaces; the headline tokens are part of the
    segment. Pre-headline matter, if any, becomes a headline-less first
    segment, so every token lands in exactly one segment.
    """
    spans = detect_headlines(page, params)
    starts: dict[str, dict[int, HeadlineSpan]] = {}
    for span in spans:
        starts.setdefault(span.block_id, {})[span.token_range[0]] = span

    by_id = {block.block_id: block for block in page.blocks}
    segments: list[ArticleSegment] = []
    current_headline: str | None = None
    current_tokens: list[WordToken] = []

    def flush() -> None:
        nonlocal current_headline, current_tokens
        if current_headline is not None or current_tokens:
            segments.append(
                ArticleSegment(page.id, len(segments), current_headline, tuple(current_tokens))
            )
        current_headline = None
        current_tokens = []

    for block_id in reading_order(page):
        block = by_id[block_id]
        block_starts = starts.get(block_id, {})
        i = 0
        while i < len(block.tokens):
            span = block_starts.get(i)
            if span is None:
                current_tokens.append(block.tokens[i])
                i += 1
                continue
            flush()
            start, end = span.token_range
            head = block.tokens[start:end]
            current_headline = " ".join(t.text for t in head)
            current_tokens = list(head)
            i = end
    flush()
    return segments
