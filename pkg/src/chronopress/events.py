"""Cross-title correlation of bursts and event-cluster reporting.

A term that bursts in two different titles within a short date window is
a strong indicator of a shared news story. Matched terms are grouped by
anchor date (the earlier of the two burst dates) into event clusters and
rendered as a date-plus-terms text table.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .burst import Burst
from .corpus import Term
from .errors import CorrelationError


@dataclass(frozen=True)
class WindowParams:
    """Two burst dates match when |date_a - date_b| < window_days."""

    window_days: int = 3

    def __post_init__(self) -> None:
        if self.window_days < 1:
            raise ValueError("window_days must be >= 1")


@dataclass(frozen=True)
class CrossTitleTerm:
    """One term bursting in two titles within the window."""

    term: Term
    title_a: str
    date_a: dt.date
    z_a: float
    title_b: str
    date_b: dt.date
    z_b: float

    def __post_init__(self) -> None:
        if self.title_a == self.title_b:
            raise ValueError("cross-title match needs two distinct titles")

    @property
    def anchor_date(self) -> dt.date:
        return min(self.date_a, self.date_b)


@dataclass(frozen=True)
class EventCluster:
    """Anchor date plus the sorted, deduplicated terms matched there."""

    anchor_date: dt.date
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        canonical = tuple(sorted(set(self.terms)))
        if not canonical:
            raise ValueError("cluster needs at least one term")
        object.__setattr__(self, "terms", canonical)


def correlate_bursts(
    bursts_by_title: Mapping[str, Sequence[Burst]],
    params: WindowParams = WindowParams(),
) -> list[CrossTitleTerm]:
    """Match bursts of the same term across title pairs.

    For each unordered title pair and shared term, burst dates of the
    lexicographically earlier title are greedily paired with the nearest
    unused qualifying date in the other title (ties go to the earlier
    date), so each burst date participates in at most one pairing per
    pair. Qualifying means |date_a - date_b| < window_days.
    """
    titles = sorted(bursts_by_title)
    if len(titles) < 2:
        raise CorrelationError("cross-title correlation needs at least 2 titles")
    matches: list[CrossTitleTerm] = []
    for title_a, title_b in combinations(titles, 2):
        by_term_a = _bursts_by_term(bursts_by_title[title_a])
        by_term_b = _bursts_by_term(bursts_by_title[title_b])
        for term in sorted(set(by_term_a) & set(by_term_b)):
            used_b: set[dt.date] = set()
            for date_a in sorted(by_term_a[term]):
                candidates = [
                    d
                    for d in by_term_b[term]
                    if d not in used_b
                    and abs((date_a - d).days) < params.window_days
                ]
                if not candidates:
                    continue
                date_b = min(candidates, key=lambda d: (abs((date_a - d).days), d))
                used_b.add(date_b)
                matches.append(
                    CrossTitleTerm(
                        term,
                        title_a,
                        date_a,
                        by_term_a[term][date_a].z,
                        title_b,
                        date_b,
                        by_term_b[term][date_b].z,
                    )
                )
    matches.sort(key=lambda m: (m.anchor_date, m.term, m.title_a, m.title_b, m.date_a))
    return matches


def _bursts_by_term(bursts: Sequence[Burst]) -> dict[Term, dict[dt.date, Burst]]:
    by_term: dict[Term, dict[dt.date, Burst]] = {}
    for burst in bursts:
        by_term.setdefault(burst.term, {})[burst.date] = burst
    return by_term


def cluster_by_date(matches: Iterable[CrossTitleTerm]) -> list[EventCluster]:
    """Group matches by anchor date into sorted, deduplicated clusters."""
    terms_by_anchor: dict[dt.date, set[Term]] = {}
    for match in matches:
        terms_by_anchor.setdefault(match.anchor_date, set()).add(match.term)
    return [
        EventCluster(anchor, tuple(sorted(terms)))
        for anchor, terms in sorted(terms_by_anchor.items())
    ]


def render_event_table(clusters: Iterable[EventCluster]) -> str:
    """One line per cluster: ISO date, a tab, space-separated sorted terms."""
    return "".join(
        f"{c.anchor_date.isoformat()}\t{' '.join(c.terms)}\n" for c in clusters
    )


def parse_event_table(text: str) -> list[EventCluster]:
    """Inverse of render_event_table for the documented text format."""
    clusters: list[EventCluster] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line:
            continue
        try:
            date_str, terms_str = line.split("\t", 1)
            clusters.append(
                EventCluster(dt.date.fromisoformat(date_str), tuple(terms_str.split()))
            )
        except ValueError as exc:
            raise ValueError(f"line {line_no}: not a valid event table row") from exc
    return clusters


def clusters_to_json(
    clusters: Iterable[EventCluster], matches: Iterable[CrossTitleTerm]
) -> str:
    """JSON array form: clusters with their supporting matches."""
    by_anchor: dict[dt.date, list[CrossTitleTerm]] = {}
    for match in matches:
        by_anchor.setdefault(match.anchor_date, []).append(match)
    payload = []
    for cluster in clusters:
        supporting = sorted(
            by_anchor.get(cluster.anchor_date, []),
            key=lambda m: (m.term, m.title_a, m.title_b, m.date_a),
        )
        payload.append(
            {
                "anchor_date": cluster.anchor_date.isoformat(),
                "terms": list(cluster.terms),
                "matches": [
                    {
                        "term": m.term,
                        "title_a": m.title_a,
                        "date_a": m.date_a.isoformat(),
                        "z_a": round(m.z_a, 6),
                        "title_b": m.title_b,
                        "date_b": m.date_b.isoformat(),
                        "z_b": round(m.z_b, 6),
                    }
                    for m in supporting
                ],
            }
        )
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
