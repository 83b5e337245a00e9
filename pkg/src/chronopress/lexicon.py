"""OCR cleaning by vocabulary intersection and stoplist removal.

A token survives only if it normalizes to a Term found in a reference
wordlist and absent from the stoplist of most-common words. Any wordlist
file works; shipping corpora are cleaned against whatever large English
sample the user has rights to.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import Term, is_term, normalize_token
from .errors import VocabularyError

logger = logging.getLogger(__name__)

DEFAULT_STOPLIST_SIZE = 500


@dataclass(frozen=True)
class Vocabulary:
    """Reference wordlist used for the intersection step."""

    terms: frozenset[Term]
    source_label: str = "wordlist"

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", frozenset(self.terms))
        bad = [t for t in self.terms if not is_term(t)]
        if bad:
            raise VocabularyError(f"invalid vocabulary terms: {sorted(bad)[:5]!r}")

    def __contains__(self, term: str) -> bool:
        return term in self.terms

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class Stoplist:
    """Most-common words removed after the vocabulary intersection."""

    terms: frozenset[Term] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", frozenset(self.terms))

    @property
    def size(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.terms

    def __len__(self) -> int:
        return len(self.terms)


def _read_wordlist(path: Path) -> tuple[set[Term], int]:
    """One word per line; '#'-prefixed lines are comments."""
    terms: set[Term] = set()
    skipped = 0
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise VocabularyError(f"cannot read wordlist {path}: {exc}") from exc
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        term = normalize_token(line)
        if term is None:
            skipped += 1
        else:
            terms.add(term)
    return terms, skipped


def load_vocabulary(path: str | Path) -> Vocabulary:
    """Load a vocabulary file; an empty result is an error."""
    path = Path(path)
    terms, skipped = _read_wordlist(path)
    if skipped:
        logger.warning("wordlist %s: skipped %d non-term lines", path, skipped)
    if not terms:
        raise VocabularyError(f"wordlist {path} yields an empty vocabulary")
    return Vocabulary(frozenset(terms), source_label=str(path))


def load_stoplist(path: str | Path) -> Stoplist:
    """Load a stoplist file (same format as a vocabulary; may be empty)."""
    path = Path(path)
    terms, skipped = _read_wordlist(path)
    if skipped:
        logger.warning("stoplist %s: skipped %d non-term lines", path, skipped)
    return Stoplist(frozenset(terms))


def build_stoplist(term_counts: Mapping[Term, int], k: int) -> Stoplist:
    """Take the k highest-count terms; ties break lexicographically."""
    if k < 0:
        raise ValueError("k must be >= 0")
    ranked = sorted(term_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return Stoplist(frozenset(term for term, _ in ranked[:k]))


def filter_tokens(
    raw_tokens: Iterable[str], vocab: Vocabulary, stop: Stoplist = Stoplist()
) -> list[Term]:
    """Normalize raw tokens and keep vocabulary members not stoplisted.

    Order and multiplicity are preserved; the output is a subsequence of
    the normalized input.
    """
    out: list[Term] = []
    for raw in raw_tokens:
        term = normalize_token(raw)
        if term is not None and term in vocab and term not in stop:
            out.append(term)
    return out
