"""Index building, querying, serialization, and the counting oracle."""

import datetime as dt
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chronopress import (
    DateRangeError,
    IngestError,
    SegmentationParams,
    Stoplist,
    Vocabulary,
    build_index,
    load_manifest,
    series_to_csv,
)
from chronopress.index import TermDateIndex, count_documents, corpus_term_counts
from brute import brute_counts
from helpers import write_corpus, write_wordlist

D = dt.date
VOCAB = Vocabulary(frozenset({"vote", "bridge", "rally", "filler"}))


def entry_docs(*docs):
    return [(title, D.fromisoformat(date), terms) for title, date, terms in docs]


class TestCountDocuments:
    def test_single_page_counts(self):
        index = count_documents(entry_docs(("times", "1906-10-29", ["vote", "vote", "bridge"])))
        day = D(1906, 10, 29)
        assert index.document_frequency("times", "vote", day) == 1
        assert index.occurrence_count("times", "vote", day) == 2
        assert index.occurrence_count("times", "bridge", day) == 1
        totals = index.totals_for("times", day)
        assert totals.n_docs == 1 and totals.total_tokens == 3

    def test_two_docs_same_day_matches_brute_force(self):
        raw_docs = [
            ("times", D(1906, 10, 29), ["vote"]),
            ("times", D(1906, 10, 29), ["vote", "rally"]),
        ]
        index = count_documents([(t, d, list(terms)) for t, d, terms in raw_docs])
        stats, totals = brute_counts(raw_docs, {"vote", "rally"}, set())
        day = D(1906, 10, 29)
        assert index.document_frequency("times", "vote", day) == stats[("times", day, "vote")][0] == 2
        assert index.occurrence_count("times", "vote", day) == stats[("times", day, "vote")][1] == 2
        assert index.document_frequency("times", "rally", day) == 1
        got = index.totals_for("times", day)
        assert (got.n_docs, got.total_tokens) == totals[("times", day)] == (2, 3)

    def test_empty_corpus(self):
        index = count_documents([])
        assert index.titles() == []
        assert index.to_json() == '{"span":{},"stats":{},"totals":{}}\n'

    def test_df_absent_term_is_zero(self):
        index = count_documents(entry_docs(("times", "1906-10-29", ["vote"])))
        assert index.document_frequency("times", "ghost", D(1906, 10, 29)) == 0
        assert index.document_frequency("times", "vote", D(1907, 1, 1)) == 0
        assert index.document_frequency("herald", "vote", D(1906, 10, 29)) == 0


class TestTermSeries:
    def test_absent_term_zero_filled(self):
        index = count_documents(entry_docs(("times", "1906-10-29", ["vote"])))
        points = index.term_series("times", "ghost", D(1906, 10, 28), D(1906, 10, 30))
        assert len(points) == 3
        assert all(p.term_count == 0 and p.doc_count == 0 for p in points)
        # the middle day has a document, so its token total shows through
        assert [p.total_tokens for p in points] == [0, 1, 0]

    def test_single_day_arithmetic(self):
        index = count_documents(entry_docs(("times", "1906-10-29", ["vote", "vote", "bridge"])))
        (point,) = index.term_series("times", "vote", D(1906, 10, 29), D(1906, 10, 29))
        assert (point.term_count, point.doc_count, point.total_tokens) == (2, 1, 3)
        assert point.rel_freq == pytest.approx(2 / 3)

    def test_reversed_range_rejected(self):
        index = count_documents(entry_docs(("times", "1906-10-29", ["vote"])))
        with pytest.raises(DateRangeError):
            index.term_series("times", "vote", D(1906, 10, 30), D(1906, 10, 29))

    def test_csv_shape(self):
        index = count_documents(entry_docs(("times", "1906-10-29", ["vote", "vote", "bridge"])))
        csv_text = series_to_csv(
            index.term_series("times", "vote", D(1906, 10, 29), D(1906, 10, 30))
        )
        lines = csv_text.splitlines()
        assert lines[0] == "date,term_count,doc_count,total_tokens,rel_freq"
        assert lines[1] == "1906-10-29,2,1,3,0.666667"
        assert lines[2] == "1906-10-30,0,0,0,0.000000"
        assert csv_text.endswith("\n")


class TestSerialization:
    def test_round_trip(self):
        index = count_documents(
            entry_docs(
                ("times", "1906-10-29", ["vote", "bridge", "vote"]),
                ("herald", "1906-10-30", ["rally"]),
            )
        )
        again = TermDateIndex.from_json(index.to_json())
        assert again == index
        assert again.to_json() == index.to_json()

    def test_save_load(self, tmp_path):
        index = count_documents(entry_docs(("times", "1906-10-29", ["vote"])))
        path = tmp_path / "idx.json"
        index.save(path)
        assert TermDateIndex.load(path) == index

    def test_span_reported(self):
        index = count_documents(
            entry_docs(
                ("times", "1906-10-29", ["vote"]),
                ("times", "1906-11-02", []),
            )
        )
        assert index.span("times") == (D(1906, 10, 29), D(1906, 11, 2))
        assert index.span("ghost") is None


class TestBuildIndex:
    def test_from_files(self, tmp_path):
        manifest_path = write_corpus(
            tmp_path,
            [
                ("times", "1906-10-29", 1, "Vote! vote bridge 99\n"),
                ("times", "1906-10-30", 1, "rally (vote)\n"),
            ],
        )
        index = build_index(load_manifest(manifest_path), VOCAB)
        assert index.document_frequency("times", "vote", D(1906, 10, 29)) == 1
        assert index.occurrence_count("times", "vote", D(1906, 10, 29)) == 2
        assert index.totals_for("times", D(1906, 10, 30)).total_tokens == 2

    def test_missing_file_names_path(self, tmp_path):
        manifest = tmp_path / "m.csv"
        manifest.write_text(
            "path,title,date,page_number,format\ngone.txt,times,1906-10-29,1,text\n",
            encoding="utf-8",
        )
        with pytest.raises(IngestError, match="gone.txt"):
            build_index(load_manifest(manifest), VOCAB)

    def test_skip_bad_excludes_file(self, tmp_path, caplog):
        manifest_path = write_corpus(tmp_path, [("times", "1906-10-29", 1, "vote\n")])
        with open(manifest_path, "a", encoding="utf-8") as fh:
            fh.write("gone.txt,times,1906-10-30,1,text\n")
        with caplog.at_level("WARNING"):
            index = build_index(load_manifest(manifest_path), VOCAB, skip_bad=True)
        assert index.total_documents() == 1
        assert any("gone.txt" in rec.message for rec in caplog.records)

    def test_segment_unit_splits_documents(self, tmp_path):
        from helpers import alto_xml

        body = (
            '<TextBlock ID="B1" STYLEREFS="TS10"><TextLine STYLEREFS="TS24">'
            '<String CONTENT="VOTE"/></TextLine>'
            "<TextLine>"
            + "".join('<String CONTENT="bridge"/>' for _ in range(5))
            + "</TextLine>"
            '<TextLine STYLEREFS="TS24"><String CONTENT="RALLY"/></TextLine>'
            "<TextLine>"
            + "".join('<String CONTENT="filler"/>' for _ in range(5))
            + "</TextLine></TextBlock>"
        )
        styles = '<TextStyle ID="TS24" FONTSIZE="24"/><TextStyle ID="TS10" FONTSIZE="10"/>'
        page_file = tmp_path / "page.xml"
        page_file.write_bytes(alto_xml(body, styles))
        manifest = tmp_path / "m.csv"
        manifest.write_text(
            "path,title,date,page_number,format\npage.xml,times,1906-10-29,1,alto\n",
            encoding="utf-8",
        )
        by_page = build_index(load_manifest(manifest), VOCAB, unit="page")
        by_segment = build_index(load_manifest(manifest), VOCAB, unit="segment")
        day = D(1906, 10, 29)
        assert by_page.totals_for("times", day).n_docs == 1
        assert by_segment.totals_for("times", day).n_docs == 2
        # same tokens either way, just different document boundaries
        assert by_page.totals_for("times", day).total_tokens == 12
        assert by_segment.totals_for("times", day).total_tokens == 12

    def test_threads_match_sequential(self, tmp_path):
        pages = [
            ("times", f"1906-10-{d:02d}", p, f"vote bridge rally doc{d}p{p}\n")
            for d in range(1, 8)
            for p in (1, 2)
        ]
        manifest_path = write_corpus(tmp_path, pages)
        manifest = load_manifest(manifest_path)
        sequential = build_index(manifest, VOCAB)
        threaded = build_index(manifest, VOCAB, threads=4)
        assert sequential == threaded
        assert sequential.to_json() == threaded.to_json()

    def test_corpus_term_counts(self, tmp_path):
        manifest_path = write_corpus(
            tmp_path,
            [("times", "1906-10-29", 1, "vote vote bridge\n"),
             ("times", "1906-10-30", 1, "vote\n")],
        )
        counts = corpus_term_counts(load_manifest(manifest_path), VOCAB)
        assert counts == {"vote": 3, "bridge": 1}


docs_strategy = st.lists(
    st.tuples(
        st.sampled_from(["times", "herald"]),
        st.integers(0, 6).map(lambda off: D(1906, 10, 1) + dt.timedelta(days=off)),
        st.lists(st.sampled_from(["vote", "bridge", "rally", "filler"]), max_size=8),
    ),
    max_size=25,
)


class TestIndexProperties:
    @given(docs_strategy)
    def test_conservation(self, docs):
        index = count_documents(docs)
        for title in index.titles():
            lo, hi = index.span(title)
            day = lo
            while day <= hi:
                totals = index.totals_for(title, day)
                if totals is not None:
                    term_sum = sum(
                        index.occurrence_count(title, term, day)
                        for term in index.terms(title)
                    )
                    assert term_sum == totals.total_tokens
                    for term in index.terms(title):
                        assert index.document_frequency(title, term, day) <= totals.n_docs
                day += dt.timedelta(days=1)

    @given(docs_strategy, st.randoms(use_true_random=False))
    @settings(max_examples=40)
    def test_order_independence(self, docs, rng):
        index = count_documents(docs)
        shuffled = list(docs)
        rng.shuffle(shuffled)
        assert count_documents(shuffled) == index
        assert count_documents(shuffled).to_json() == index.to_json()

    @given(docs_strategy)
    @settings(max_examples=40)
    def test_matches_brute_force(self, docs):
        vocab_terms = {"vote", "bridge", "rally", "filler"}
        index = count_documents(docs)
        stats, totals = brute_counts(docs, vocab_terms, set())
        for (title, day, term), (doc_count, term_count) in stats.items():
            assert index.document_frequency(title, term, day) == doc_count
            assert index.occurrence_count(title, term, day) == term_count
        for (title, day), (n_docs, total_tokens) in totals.items():
            got = index.totals_for(title, day)
            assert (got.n_docs, got.total_tokens) == (n_docs, total_tokens)

    @given(
        docs_strategy,
        st.sampled_from(["vote", "ghost"]),
        st.integers(0, 6),
        st.integers(0, 6),
    )
    def test_series_length_is_calendar_days(self, docs, term, a, b):
        start = D(1906, 10, 1) + dt.timedelta(days=min(a, b))
        end = D(1906, 10, 1) + dt.timedelta(days=max(a, b))
        index = count_documents(docs)
        points = index.term_series("times", term, start, end)
        assert len(points) == (end - start).days + 1
        assert [p.date for p in points] == sorted(p.date for p in points)
