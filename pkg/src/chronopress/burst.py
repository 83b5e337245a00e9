"""Burst detection on daily document-frequency series.

A term bursts on a day when its document frequency sits at least
``threshold`` standard deviations above the term's own baseline, the mean
of its zero-filled daily df series over the analysis range. The burst day
is included in its baseline; ``sigma_floor`` keeps near-constant series
from dividing by ~0 and ``min_docs`` suppresses single-document OCR noise.
Only upward deviations are reported.
"""

from __future__ import annotations

import datetime as dt
import json
import math
from dataclasses import dataclass
from typing import Iterable

from .corpus import Term
from .errors import DateRangeError
from .index import TermDateIndex, format_fixed6


@dataclass(frozen=True)
class BurstParams:
    threshold: float = 3.0
    sigma_floor: float = 0.5
    min_docs: int = 2
    start: dt.date = dt.date.min
    end: dt.date = dt.date.max

    def __post_init__(self) -> None:
        if self.sigma_floor <= 0:
            raise ValueError("sigma_floor must be > 0")
        if self.min_docs < 1:
            raise ValueError("min_docs must be >= 1")
        if self.start > self.end:
            raise DateRangeError(f"start {self.start} is after end {self.end}")


@dataclass(frozen=True)
class BaselineStats:
    """Mean and population std of a term's zero-filled daily df series."""

    title: str
    term: Term
    mean: float
    std: float
    n_days: int


@dataclass(frozen=True)
class Burst:
    """A (title, term, date) whose df deviates upward from baseline."""

    title: str
    term: Term
    date: dt.date
    df: int
    z: float
    mean: float
    std: float


def _days(start: dt.date, end: dt.date) -> list[dt.date]:
    if start > end:
        raise DateRangeError(f"start {start} is after end {end}")
    return [start + dt.timedelta(days=i) for i in range((end - start).days + 1)]


def baseline_stats(
    index: TermDateIndex, title: str, term: Term, start: dt.date, end: dt.date
) -> BaselineStats:
    """Baseline over every calendar day in [start, end], zero-filled."""
    days = _days(start, end)
    series = [index.document_frequency(title, term, day) for day in days]
    mean = sum(series) / len(series)
    variance = sum((x - mean) ** 2 for x in series) / len(series)
    return BaselineStats(title, term, mean, math.sqrt(variance), len(series))


def burst_score(df: int, base: BaselineStats, sigma_floor: float) -> float:
    """z-score of a day's df against the baseline, with a floored sigma."""
    if sigma_floor <= 0:
        raise ValueError("sigma_floor must be > 0")
    return (df - base.mean) / max(base.std, sigma_floor)


def detect_bursts(
    index: TermDateIndex, title: str, params: BurstParams = BurstParams()
) -> list[Burst]:
    """All bursts for a title within the params range, sorted (date, term).

    Threshold comparison is inclusive (z >= threshold). Terms that never
    occur in the range have an all-zero series and cannot burst, so only
    in-range terms are scanned.
    """
    days = _days(params.start, params.end)
    bursts: list[Burst] = []
    for term in index.terms(title, params.start, params.end):
        base = baseline_stats(index, title, term, params.start, params.end)
        for day in days:
            df = index.document_frequency(title, term, day)
            if df < params.min_docs:
                continue
            z = burst_score(df, base, params.sigma_floor)
            if z >= params.threshold:
                bursts.append(Burst(title, term, day, df, z, base.mean, base.std))
    bursts.sort(key=lambda b: (b.date, b.term))
    return bursts


def bursts_to_jsonl(bursts: Iterable[Burst]) -> str:
    """One JSON record per burst, floats in fixed 6-decimal form."""
    lines = []
    for b in bursts:
        lines.append(
            "{"
            f'"title":{json.dumps(b.title)},'
            f'"term":{json.dumps(b.term)},'
            f'"date":"{b.date.isoformat()}",'
            f'"df":{b.df},'
            f'"mean":{format_fixed6(b.mean)},'
            f'"std":{format_fixed6(b.std)},'
            f'"z":{format_fixed6(b.z)}'
            "}"
        )
    return "".join(line + "\n" for line in lines)
