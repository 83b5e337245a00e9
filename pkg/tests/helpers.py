"""Builders shared across test modules."""

from __future__ import annotations

import datetime as dt

from chronopress import Page, PageId, TextBlock, WordToken
from chronopress.index import TermDateIndex, count_documents


def pid(title: str = "times", date: str = "1906-10-29", page: int = 1) -> PageId:
    return PageId(title, dt.date.fromisoformat(date), page)


def make_page(fonts_by_block, **pid_kwargs) -> Page:
    """Build a Page from [(block_id, [font sizes])]; token text is w<n>."""
    blocks = []
    n = 0
    for block_id, fonts in fonts_by_block:
        tokens = tuple(
            WordToken(f"w{n + i}", font_size=size) for i, size in enumerate(fonts)
        )
        n += len(fonts)
        blocks.append(TextBlock(block_id, tokens))
    return Page(pid(**pid_kwargs), tuple(blocks))


def alto_xml(body: str, styles: str = "") -> bytes:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<alto xmlns="http://www.loc.gov/standards/alto/ns-v2#">\n'
        f"  <Styles>{styles}</Styles>\n"
        f"  <Layout><Page><PrintSpace>{body}</PrintSpace></Page></Layout>\n"
        "</alto>\n"
    ).encode("utf-8")


def index_from_df(
    title: str,
    term: str,
    dfs,
    start: dt.date = dt.date(1906, 10, 1),
    extra_docs: int = 0,
) -> TermDateIndex:
    """Index whose daily document frequency for ``term`` equals ``dfs``."""
    docs = []
    for i, df in enumerate(dfs):
        date = start + dt.timedelta(days=i)
        for _ in range(df):
            docs.append((title, date, [term]))
        for _ in range(extra_docs):
            docs.append((title, date, ["filler"]))
    return count_documents(docs)


def write_corpus(tmp_path, pages) -> str:
    """Write plain-text pages plus a manifest; pages: [(title, date_str, page_no, text)].

    Returns the manifest path as a string.
    """
    rows = ["path,title,date,page_number,format"]
    for i, (title, date_str, page_no, text) in enumerate(pages):
        name = f"doc{i}.txt"
        (tmp_path / name).write_text(text, encoding="utf-8")
        rows.append(f"{name},{title},{date_str},{page_no},text")
    manifest = tmp_path / "manifest.csv"
    manifest.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return str(manifest)


def write_wordlist(tmp_path, name: str, words) -> str:
    path = tmp_path / name
    path.write_text("".join(w + "\n" for w in words), encoding="utf-8")
    return str(path)
