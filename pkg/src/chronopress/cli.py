"""Command-line surface for the whole pipeline.

Subcommands mirror the pipeline stages: ingest builds and saves the term
index; segment, series, bursts, events, and categorize each emit one
report format. Data always goes to standard output, diagnostics to
standard error. Exit codes: 0 success, 1 I/O or build failure, 2 usage or
selector error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import logging
import os
import sys
from pathlib import Path

from .burst import BurstParams, bursts_to_jsonl, detect_bursts
from .categorize import categorize_segment, load_ruleset
from .corpus import CorpusManifest, load_manifest, load_page
from .errors import ChronopressError, UsageError
from .events import (
    WindowParams,
    cluster_by_date,
    clusters_to_json,
    correlate_bursts,
    render_event_table,
)
from .fixtures import generate_cross_title, generate_seasonal
from .index import TermDateIndex, build_index, corpus_term_counts, series_to_csv
from .lexicon import (
    DEFAULT_STOPLIST_SIZE,
    Stoplist,
    Vocabulary,
    build_stoplist,
    load_stoplist,
    load_vocabulary,
)
from .segmentation import SegmentationParams, segment_articles

PUBLIC_COMMANDS = "{ingest,segment,series,bursts,events,categorize,stoplist}"


def _threads_from_env() -> int:
    """CHRONOPRESS_THREADS caps ingest parallelism; 0 means auto."""
    raw = os.environ.get("CHRONOPRESS_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    if n == 0:
        return os.cpu_count() or 1
    return max(n, 1)


def _iso_date(value: str) -> dt.date:
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid date {value!r} (expected YYYY-MM-DD)"
        ) from None


def _seg_params(args) -> SegmentationParams:
    return SegmentationParams(args.alpha, args.min_headline_tokens)


def _resolve_stoplist(
    args,
    manifest: CorpusManifest,
    vocab: Vocabulary,
    seg_params: SegmentationParams,
    threads: int,
) -> Stoplist:
    """Stoplist file when given, else the corpus's own top-K terms."""
    if args.stoplist is not None:
        return load_stoplist(args.stoplist)
    if args.stoplist_size <= 0:
        return Stoplist()
    counts = corpus_term_counts(
        manifest, vocab, seg_params=seg_params, skip_bad=args.skip_bad, threads=threads
    )
    return build_stoplist(counts, args.stoplist_size)


def _known_title(index: TermDateIndex, title: str) -> None:
    if index.span(title) is None:
        raise UsageError(f"unknown title {title!r}")


def _range_for(index: TermDateIndex, title: str, args) -> tuple[dt.date, dt.date]:
    span = index.span(title)
    start = args.date_from if args.date_from is not None else span[0]
    end = args.date_to if args.date_to is not None else span[1]
    return start, end


def _burst_params(args, start: dt.date, end: dt.date) -> BurstParams:
    return BurstParams(
        threshold=args.threshold,
        sigma_floor=args.sigma_floor,
        min_docs=args.min_docs,
        start=start,
        end=end,
    )


def _plural(n: int) -> str:
    return "" if n == 1 else "s"


def cmd_ingest(args) -> int:
    threads = _threads_from_env()
    manifest = load_manifest(args.manifest)
    vocab = load_vocabulary(args.vocab)
    seg_params = _seg_params(args)
    stop = _resolve_stoplist(args, manifest, vocab, seg_params, threads)
    index = build_index(
        manifest,
        vocab,
        stop,
        args.unit,
        seg_params,
        skip_bad=args.skip_bad,
        threads=threads,
    )
    index.save(args.out)
    titles = index.titles()
    n_days = len(index.all_dates())
    docs = index.total_documents()
    terms = len(index.term_totals())
    print(
        f"{len(titles)} title{_plural(len(titles))}, "
        f"{n_days} day{_plural(n_days)}, "
        f"{docs} doc{_plural(docs)}, "
        f"{terms} distinct term{_plural(terms)}",
        file=sys.stderr,
    )
    for title in titles:
        lo, hi = index.span(title)
        print(f"  {title}: {lo.isoformat()}..{hi.isoformat()}", file=sys.stderr)
    return 0


def cmd_series(args) -> int:
    index = TermDateIndex.load(args.index)
    _known_title(index, args.title)
    start, end = _range_for(index, args.title, args)
    points = index.term_series(args.title, args.term, start, end)
    sys.stdout.write(series_to_csv(points))
    return 0


def cmd_bursts(args) -> int:
    index = TermDateIndex.load(args.index)
    _known_title(index, args.title)
    start, end = _range_for(index, args.title, args)
    bursts = detect_bursts(index, args.title, _burst_params(args, start, end))
    sys.stdout.write(bursts_to_jsonl(bursts))
    return 0


def cmd_events(args) -> int:
    index = TermDateIndex.load(args.index)
    if args.titles:
        requested = [t.strip() for t in args.titles.split(",") if t.strip()]
    else:
        requested = index.titles()
    known_titles = set(index.titles())
    known = [t for t in requested if t in known_titles]
    if len(known) < 2:
        raise UsageError("event correlation needs at least 2 known titles")
    bursts_by_title = {}
    for title in known:
        start, end = _range_for(index, title, args)
        bursts_by_title[title] = detect_bursts(
            index, title, _burst_params(args, start, end)
        )
    matches = correlate_bursts(bursts_by_title, WindowParams(args.window))
    clusters = cluster_by_date(matches)
    if args.json:
        sys.stdout.write(clusters_to_json(clusters, matches))
    else:
        sys.stdout.write(render_event_table(clusters))
    return 0


def _select_entries(manifest: CorpusManifest, args):
    entries = list(manifest)
    filtered = args.title is not None or args.date is not None or args.page is not None
    if args.title is not None:
        entries = [e for e in entries if e.title == args.title]
    if args.date is not None:
        entries = [e for e in entries if e.date == args.date]
    if args.page is not None:
        entries = [e for e in entries if e.page_number == args.page]
    if filtered and not entries:
        raise UsageError("selector matches no manifest entries")
    return entries


def cmd_segment(args) -> int:
    manifest = load_manifest(args.manifest)
    seg_params = _seg_params(args)
    for entry in _select_entries(manifest, args):
        page = load_page(entry)
        if not page.tokens():
            continue
        for segment in segment_articles(page, seg_params):
            record = {
                "title": entry.title,
                "date": entry.date.isoformat(),
                "page": entry.page_number,
                "seq": segment.seq,
                "headline": segment.headline_text,
                "token_count": len(segment.tokens),
            }
            sys.stdout.write(json.dumps(record) + "\n")
    return 0


def cmd_categorize(args) -> int:
    manifest = load_manifest(args.manifest)
    rules = load_ruleset(args.ruleset)
    vocab = load_vocabulary(args.vocab)
    seg_params = _seg_params(args)
    stop = _resolve_stoplist(args, manifest, vocab, seg_params, _threads_from_env())
    for entry in _select_entries(manifest, args):
        page = load_page(entry)
        if not page.tokens():
            continue
        for segment in segment_articles(page, seg_params):
            for assignment in categorize_segment(segment, rules, vocab, stop):
                record = {
                    "title": entry.title,
                    "date": entry.date.isoformat(),
                    "page": entry.page_number,
                    "seq": segment.seq,
                    "category": assignment.category,
                    "score": round(assignment.score, 6),
                    "matched_keywords": list(assignment.matched_keywords),
                }
                sys.stdout.write(json.dumps(record) + "\n")
    return 0


def cmd_stoplist(args) -> int:
    threads = _threads_from_env()
    manifest = load_manifest(args.manifest)
    vocab = load_vocabulary(args.vocab)
    counts = corpus_term_counts(manifest, vocab, skip_bad=args.skip_bad, threads=threads)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[: args.size]
    for term, _count in ranked:
        sys.stdout.write(term + "\n")
    return 0


def cmd_fixtures(args) -> int:
    if args.kind == "seasonal":
        fixture = generate_seasonal(args.out) if args.seed is None else generate_seasonal(args.out, args.seed)
    else:
        fixture = generate_cross_title(args.out) if args.seed is None else generate_cross_title(args.out, args.seed)
    print(f"wrote {args.kind} fixture under {fixture.out_dir}", file=sys.stderr)
    return 0


def _add_seg_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--alpha",
        type=float,
        default=1.5,
        help="headline font threshold relative to the body font (default 1.5)",
    )
    p.add_argument(
        "--min-headline-tokens",
        type=int,
        default=1,
        help="minimum tokens in a headline run (default 1)",
    )


def _add_burst_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threshold", type=float, default=3.0, help="z-score cutoff (default 3.0)")
    p.add_argument("--min-docs", type=int, default=2, help="minimum df to report (default 2)")
    p.add_argument("--sigma-floor", type=float, default=0.5, help="lower bound on sigma (default 0.5)")
    _add_range_flags(p)


def _add_range_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--from", dest="date_from", type=_iso_date, default=None, metavar="DATE")
    p.add_argument("--to", dest="date_to", type=_iso_date, default=None, metavar="DATE")


def _add_selector_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--title", default=None, help="only pages of this title")
    p.add_argument("--date", type=_iso_date, default=None, help="only pages on this date")
    p.add_argument("--page", type=int, default=None, help="only this page number")


def _add_lexicon_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--vocab", required=True, type=Path, help="reference wordlist file")
    p.add_argument("--stoplist", type=Path, default=None, help="stoplist file")
    p.add_argument(
        "--stoplist-size",
        type=int,
        default=DEFAULT_STOPLIST_SIZE,
        help="without --stoplist, drop the corpus's K most common terms "
        f"(default {DEFAULT_STOPLIST_SIZE}; 0 disables)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronopress",
        description="Burst and cross-title event mining for digitized newspaper OCR.",
    )
    sub = parser.add_subparsers(dest="command", metavar=PUBLIC_COMMANDS)

    p = sub.add_parser("ingest", help="parse, clean, and count a corpus into an index file")
    p.add_argument("--manifest", required=True, type=Path)
    _add_lexicon_flags(p)
    p.add_argument("--unit", choices=("page", "segment"), default="page",
                   help="count whole pages or article segments as documents")
    p.add_argument("--out", required=True, type=Path, help="index file to write")
    p.add_argument("--skip-bad", action="store_true",
                   help="warn and skip unreadable or unparseable files")
    _add_seg_flags(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("segment", help="emit article segments as JSON lines")
    p.add_argument("--manifest", required=True, type=Path)
    _add_selector_flags(p)
    _add_seg_flags(p)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("series", help="per-day CSV time series for one term")
    p.add_argument("--index", required=True, type=Path)
    p.add_argument("--title", required=True)
    p.add_argument("--term", required=True)
    _add_range_flags(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("bursts", help="burst detections as JSON lines")
    p.add_argument("--index", required=True, type=Path)
    p.add_argument("--title", required=True)
    _add_burst_flags(p)
    p.set_defaults(func=cmd_bursts)

    p = sub.add_parser("events", help="cross-title event clusters (text table or JSON)")
    p.add_argument("--index", required=True, type=Path)
    p.add_argument("--titles", default=None, help="comma-separated titles (default: all)")
    p.add_argument("--window", type=int, default=3, help="match window in days (default 3)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of the text table")
    _add_burst_flags(p)
    p.set_defaults(func=cmd_events)

    p = sub.add_parser("categorize", help="keyword-rule categories per segment, JSON lines")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--ruleset", required=True, type=Path)
    _add_lexicon_flags(p)
    _add_selector_flags(p)
    _add_seg_flags(p)
    p.add_argument("--skip-bad", action="store_true")
    p.set_defaults(func=cmd_categorize)

    p = sub.add_parser("stoplist", help="derive a stoplist from the corpus itself")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--vocab", required=True, type=Path)
    p.add_argument("--size", type=int, default=DEFAULT_STOPLIST_SIZE)
    p.add_argument("--skip-bad", action="store_true")
    p.set_defaults(func=cmd_stoplist)

    # Undocumented helper used by the test suite and demos.
    p = sub.add_parser("fixtures")
    fix_sub = p.add_subparsers(dest="fixtures_command", metavar="{generate}")
    g = fix_sub.add_parser("generate")
    g.add_argument("--kind", choices=("seasonal", "cross-title"), required=True)
    g.add_argument("--out", required=True, type=Path)
    g.add_argument("--seed", type=int, default=None)
    g.set_defaults(func=cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "func", None) is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except ChronopressError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
