"""Seeded synthetic corpora for testing and demos.

Three generators:

* a single-title "seasonal" corpus (107 daily issues, autumn through New
  Year's Eve) with planted holiday and election term patterns,
* a two-title corpus (90 days) with three planted cross-title events plus
  single-title noise bursts,
* small fully random corpora for oracle-equivalence testing.

The planted patterns are engineered so their burst output is provable:
background words appear in every document of every issue (constant df,
zero variance, z = 0), rotating color words appear in exactly one
document per day (df 1, below the default min_docs gate), and planted
terms appear in several documents on their spike days only. Everything is
driven by ``random.Random(seed)``, so a given seed reproduces the corpus
byte for byte.
"""

from __future__ import annotations

import datetime as dt
import json
import random
import string
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Term

_PUNCT_SUFFIX = [",", ".", ";", ":", "!", "?", '"']
_PUNCT_PREFIX = ['"', "'", "("]

_STOP_WORDS = ["the", "and", "of", "to"]
_BACKGROUND = [
    "city", "council", "police", "market", "school",
    "street", "mayor", "river", "night", "morning",
]
_ROTATING = [
    "harbor", "wagon", "theater", "concert", "lecture", "picnic",
    "storm", "frost", "harvest", "circus", "parade", "sermon",
    "ferry", "bakery", "tailor", "orchard", "saloon", "library",
    "tramway", "quarry", "foundry", "asylum", "regatta", "auction",
]
_UNUSED_VOCAB = ["almanac", "gazette", "chronicle"]


@dataclass(frozen=True)
class SeasonalFixture:
    """What generate_seasonal planted and where it wrote the corpus."""

    out_dir: Path
    manifest_path: Path
    vocab_path: Path
    stoplist_path: Path
    title: str
    start: dt.date
    end: dt.date
    docs_per_day: int
    spike_date: dt.date            # "thanksgiving" peak, df 3
    vote_dates: tuple[dt.date, ...]  # 3-day "vote" spike, df 3 each day
    vote_peak_date: dt.date        # highest "vote" occurrence count
    campaign_dates: tuple[dt.date, ...]  # elevated run, df 2, below threshold
    campaign_peak_date: dt.date
    expected_bursts: frozenset[tuple[Term, dt.date]]


@dataclass(frozen=True)
class PlantedEvent:
    anchor_date: dt.date
    dates_by_title: dict[str, dt.date]
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class CrossTitleFixture:
    """What generate_cross_title planted and where it wrote the corpus."""

    out_dir: Path
    manifest_path: Path
    vocab_path: Path
    stoplist_path: Path
    titles: tuple[str, str]
    start: dt.date
    end: dt.date
    docs_per_day: int
    events: tuple[PlantedEvent, ...]
    noise: tuple[tuple[str, dt.date, Term], ...]  # single-title bursts
    expected_clusters: tuple[tuple[dt.date, tuple[Term, ...]], ...]


@dataclass
class RandomCorpus:
    """In-memory random corpus: raw token streams plus its lexicon."""

    docs: list[tuple[str, dt.date, list[str]]]
    vocab_terms: set[Term]
    stop_terms: set[Term]
    titles: list[str]

    def write(self, out_dir: str | Path) -> Path:
        """Write as a plain-text corpus; returns the manifest path."""
        out_dir = Path(out_dir)
        pages = out_dir / "pages"
        pages.mkdir(parents=True, exist_ok=True)
        rows = []
        page_no: dict[tuple[str, dt.date], int] = {}
        for title, date, tokens in self.docs:
            n = page_no.get((title, date), 0) + 1
            page_no[(title, date)] = n
            name = f"{title}-{date.isoformat()}-p{n}.txt"
            (pages / name).write_text(_doc_text(tokens), encoding="utf-8")
            rows.append((f"pages/{name}", title, date, n, "text"))
        manifest = out_dir / "manifest.csv"
        _write_manifest(manifest, rows)
        _write_wordlist(out_dir / "vocab.txt", sorted(self.vocab_terms))
        _write_wordlist(out_dir / "stoplist.txt", sorted(self.stop_terms))
        return manifest


def _doc_text(tokens: list[str], per_line: int = 10) -> str:
    lines = [
        " ".join(tokens[i : i + per_line]) for i in range(0, len(tokens), per_line)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def _write_manifest(path: Path, rows) -> None:
    lines = ["path,title,date,page_number,format"]
    for rel, title, date, page, fmt in rows:
        lines.append(f"{rel},{title},{date.isoformat()},{page},{fmt}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_wordlist(path: Path, words) -> None:
    path.write_text("".join(w + "\n" for w in words), encoding="utf-8")


def _decorate(rng: random.Random, word: str) -> str:
    """Dress a word the way dirty OCR would: case flips and edge punctuation."""
    roll = rng.random()
    if roll < 0.15:
        word = word.capitalize()
    elif roll < 0.22:
        word = word.upper()
    if rng.random() < 0.25:
        word = word + rng.choice(_PUNCT_SUFFIX)
    if rng.random() < 0.08:
        word = rng.choice(_PUNCT_PREFIX) + word
    return word


def random_nonvocab_terms(rng: random.Random, n: int, vocab_terms) -> list[str]:
    """n random letter strings guaranteed absent from ``vocab_terms``."""
    out: list[str] = []
    while len(out) < n:
        word = "".join(
            rng.choice(string.ascii_lowercase) for _ in range(rng.randint(2, 10))
        )
        if word not in vocab_terms:
            out.append(word)
    return out


def _garbage_token(rng: random.Random, vocab_terms) -> str:
    roll = rng.random()
    if roll < 0.4:
        return random_nonvocab_terms(rng, 1, vocab_terms)[0]
    if roll < 0.7:
        return str(rng.randint(0, 99999))
    if roll < 0.85:
        # mixed letters and digits; rejected by normalization
        return (
            "".join(rng.choice(string.ascii_lowercase) for _ in range(2))
            + str(rng.randint(0, 9))
            + "".join(rng.choice(string.ascii_lowercase) for _ in range(2))
        )
    return rng.choice(string.ascii_lowercase)  # single letter, too short


def _background_doc(
    rng: random.Random, rotor_word: str | None, vocab_terms
) -> list[str]:
    """Tokens every generated document shares: stopwords, background, noise."""
    tokens: list[str] = list(_STOP_WORDS)
    for word in _BACKGROUND:
        tokens.extend([word] * rng.randint(1, 2))
    if rotor_word is not None:
        tokens.extend([rotor_word] * rng.randint(1, 4))
    for _ in range(rng.randint(1, 3)):
        tokens.append(_garbage_token(rng, vocab_terms))
    return tokens


def _emit_page(
    rng: random.Random,
    pages_dir: Path,
    rows: list,
    title: str,
    date: dt.date,
    page_no: int,
    tokens: list[str],
) -> None:
    rng.shuffle(tokens)
    decorated = [_decorate(rng, t) for t in tokens]
    name = f"{title}-{date.isoformat()}-p{page_no}.txt"
    (pages_dir / name).write_text(_doc_text(decorated), encoding="utf-8")
    rows.append((f"pages/{name}", title, date, page_no, "text"))


def generate_seasonal(out_dir: str | Path, seed: int = 1914) -> SeasonalFixture:
    """Single title, 107 daily issues of 3 documents each.

    Planted patterns:

    * "thanksgiving": day 73 only, in all 3 documents (df 3), twice each.
    * "vote": a 3-day spike (df 3 per day) with the occurrence peak on the
      middle day.
    * "campaign": elevated for the 14 days before the vote spike at df 2,
      which stays below the default burst threshold by design, with an
      occurrence peak partway through.

    With default burst parameters the exact expected burst set is the
    thanksgiving day plus the three vote days, nothing else.
    """
    out_dir = Path(out_dir)
    pages_dir = out_dir / "pages"
    pages_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)

    title = "ledger"
    start = dt.date(1914, 9, 16)
    n_days = 107
    docs_per_day = 3
    end = start + dt.timedelta(days=n_days - 1)

    spike_offset = 72          # day 73 of the run
    vote_offsets = (46, 47, 48)
    vote_peak_offset = 47
    campaign_offsets = tuple(range(32, 46))
    campaign_peak_offset = 40

    planted = ["thanksgiving", "vote", "campaign"]
    vocab_terms = set(
        _STOP_WORDS + _BACKGROUND + _ROTATING + _UNUSED_VOCAB + planted
    )

    rows: list = []
    for offset in range(n_days):
        date = start + dt.timedelta(days=offset)
        rotors = rng.sample(_ROTATING, docs_per_day)
        for doc_no in range(docs_per_day):
            tokens = _background_doc(rng, rotors[doc_no], vocab_terms)
            if offset == spike_offset:
                tokens.extend(["thanksgiving"] * 2)
            if offset in vote_offsets:
                tokens.extend(["vote"] * (3 if offset == vote_peak_offset else 1))
            if offset in campaign_offsets and doc_no < 2:
                tokens.extend(
                    ["campaign"] * (3 if offset == campaign_peak_offset else 1)
                )
            _emit_page(rng, pages_dir, rows, title, date, doc_no + 1, tokens)

    manifest_path = out_dir / "manifest.csv"
    _write_manifest(manifest_path, rows)
    vocab_path = out_dir / "vocab.txt"
    stoplist_path = out_dir / "stoplist.txt"
    _write_wordlist(vocab_path, sorted(vocab_terms))
    _write_wordlist(stoplist_path, sorted(_STOP_WORDS))

    day = lambda off: start + dt.timedelta(days=off)  # noqa: E731
    fixture = SeasonalFixture(
        out_dir=out_dir,
        manifest_path=manifest_path,
        vocab_path=vocab_path,
        stoplist_path=stoplist_path,
        title=title,
        start=start,
        end=end,
        docs_per_day=docs_per_day,
        spike_date=day(spike_offset),
        vote_dates=tuple(day(o) for o in vote_offsets),
        vote_peak_date=day(vote_peak_offset),
        campaign_dates=tuple(day(o) for o in campaign_offsets),
        campaign_peak_date=day(campaign_peak_offset),
        expected_bursts=frozenset(
            [("thanksgiving", day(spike_offset))]
            + [("vote", day(o)) for o in vote_offsets]
        ),
    )
    _write_seasonal_plants(out_dir / "plants.json", fixture)
    return fixture


def _write_seasonal_plants(path: Path, f: SeasonalFixture) -> None:
    payload = {
        "title": f.title,
        "start": f.start.isoformat(),
        "end": f.end.isoformat(),
        "docs_per_day": f.docs_per_day,
        "spike": {"term": "thanksgiving", "date": f.spike_date.isoformat()},
        "vote_dates": [d.isoformat() for d in f.vote_dates],
        "vote_peak_date": f.vote_peak_date.isoformat(),
        "campaign_dates": [d.isoformat() for d in f.campaign_dates],
        "campaign_peak_date": f.campaign_peak_date.isoformat(),
        "expected_bursts": sorted(
            [term, date.isoformat()] for term, date in f.expected_bursts
        ),
    }
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


_EVENT_TERMS = (
    ("bridge", "camden", "drawbridge", "motorman", "trestle", "survivors"),
    ("princeton", "tigers", "yale", "teams"),
    ("ambulances", "coaches", "mangled", "rescuers", "splintered", "takoma", "terra", "cotta"),
)
_NOISE_TIMES = (("senate", 10), ("tariff", 33), ("cholera", 60))
_NOISE_HERALD = (("regiment", 5), ("lottery", 44), ("typhoon", 81))


def generate_cross_title(out_dir: str | Path, seed: int = 1906) -> CrossTitleFixture:
    """Two titles, 90 daily issues of 3 documents each.

    Three events are planted as term clusters bursting in both titles at
    inter-title offsets of 0 to 2 days, plus six single-title noise
    bursts. With default burst parameters and a 3-day window, event
    correlation recovers exactly the three planted clusters.
    """
    out_dir = Path(out_dir)
    pages_dir = out_dir / "pages"
    pages_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)

    titles = ("herald", "times")
    start = dt.date(1906, 10, 1)
    n_days = 90
    docs_per_day = 3
    end = start + dt.timedelta(days=n_days - 1)
    day = lambda off: start + dt.timedelta(days=off)  # noqa: E731

    events = (
        PlantedEvent(day(28), {"times": day(28), "herald": day(29)}, _EVENT_TERMS[0]),
        PlantedEvent(day(48), {"times": day(49), "herald": day(48)}, _EVENT_TERMS[1]),
        PlantedEvent(day(75), {"times": day(75), "herald": day(77)}, _EVENT_TERMS[2]),
    )
    noise = tuple(
        [("times", day(off), term) for term, off in _NOISE_TIMES]
        + [("herald", day(off), term) for term, off in _NOISE_HERALD]
    )

    event_terms = [t for e in events for t in e.terms]
    noise_terms = [term for _, _, term in noise]
    vocab_terms = set(
        _STOP_WORDS + _BACKGROUND + _ROTATING + _UNUSED_VOCAB
        + event_terms + noise_terms
    )

    planted_by_title_date: dict[tuple[str, dt.date], list[Term]] = {}
    for event in events:
        for title, date in event.dates_by_title.items():
            planted_by_title_date.setdefault((title, date), []).extend(event.terms)
    for title, date, term in noise:
        planted_by_title_date.setdefault((title, date), []).append(term)

    rows: list = []
    for title in titles:
        for offset in range(n_days):
            date = start + dt.timedelta(days=offset)
            rotors = rng.sample(_ROTATING, docs_per_day)
            extra = planted_by_title_date.get((title, date), [])
            for doc_no in range(docs_per_day):
                tokens = _background_doc(rng, rotors[doc_no], vocab_terms)
                tokens.extend(extra)  # planted terms hit every document that day
                _emit_page(rng, pages_dir, rows, title, date, doc_no + 1, tokens)

    manifest_path = out_dir / "manifest.csv"
    _write_manifest(manifest_path, rows)
    vocab_path = out_dir / "vocab.txt"
    stoplist_path = out_dir / "stoplist.txt"
    _write_wordlist(vocab_path, sorted(vocab_terms))
    _write_wordlist(stoplist_path, sorted(_STOP_WORDS))

    fixture = CrossTitleFixture(
        out_dir=out_dir,
        manifest_path=manifest_path,
        vocab_path=vocab_path,
        stoplist_path=stoplist_path,
        titles=titles,
        start=start,
        end=end,
        docs_per_day=docs_per_day,
        events=events,
        noise=noise,
        expected_clusters=tuple(
            (e.anchor_date, tuple(sorted(e.terms))) for e in events
        ),
    )
    payload = {
        "titles": list(titles),
        "start": start.isoformat(),
        "end": end.isoformat(),
        "events": [
            {
                "anchor_date": e.anchor_date.isoformat(),
                "dates": {t: d.isoformat() for t, d in sorted(e.dates_by_title.items())},
                "terms": sorted(e.terms),
            }
            for e in events
        ],
        "noise": [
            {"title": t, "date": d.isoformat(), "term": term} for t, d, term in noise
        ],
    }
    (out_dir / "plants.json").write_text(
        json.dumps(payload, indent=2) + "\n", encoding="utf-8"
    )
    return fixture


def generate_random_corpus(seed: int) -> RandomCorpus:
    """A small random corpus for oracle-equivalence testing.

    Stays within 20 days, 10 documents per day, and 500 raw tokens per
    document. Token streams mix decorated vocabulary words with OCR-style
    garbage so normalization and filtering both get exercised.
    """
    rng = random.Random(seed)
    pool = sorted(set(_BACKGROUND + _ROTATING + _STOP_WORDS + _UNUSED_VOCAB))
    vocab_terms = set(rng.sample(pool, rng.randint(10, len(pool))))
    stop_terms = set(
        rng.sample(sorted(vocab_terms), rng.randint(0, min(5, len(vocab_terms))))
    )
    titles = ["alpha", "beta"][: rng.randint(1, 2)]
    start = dt.date(1906, 1, 1) + dt.timedelta(days=rng.randint(0, 365))
    n_days = rng.randint(1, 20)
    vocab_list = sorted(vocab_terms)

    docs: list[tuple[str, dt.date, list[str]]] = []
    for title in titles:
        for offset in range(n_days):
            if rng.random() < 0.2:
                continue  # a day with no surviving issue
            date = start + dt.timedelta(days=offset)
            for _ in range(rng.randint(0, 6)):
                tokens: list[str] = []
                for _ in range(rng.randint(0, 120)):
                    roll = rng.random()
                    if roll < 0.75:
                        tokens.append(_decorate(rng, rng.choice(vocab_list)))
                    else:
                        tokens.append(_garbage_token(rng, vocab_terms))
                docs.append((title, date, tokens))
    return RandomCorpus(docs, vocab_terms, stop_terms, titles)
