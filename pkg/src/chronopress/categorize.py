"""Keyword-rule categorization of article segments.

Categories score by the sum of weights of DISTINCT matched keywords, so
OCR repetition noise cannot inflate a score. This works well for narrow
categories with highly distinctive terms and is not a trained classifier.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Term, normalize_token
from .errors import RulesetError
from .lexicon import Stoplist, Vocabulary, filter_tokens
from .segmentation import ArticleSegment


@dataclass(frozen=True)
class Ruleset:
    """Category name -> weighted keyword list, plus the emission threshold."""

    categories: Mapping[str, tuple[tuple[Term, float], ...]]
    min_score: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "categories",
            {name: tuple(entries) for name, entries in self.categories.items()},
        )


@dataclass(frozen=True)
class CategoryAssignment:
    category: str
    score: float
    matched_keywords: tuple[Term, ...]

    def __post_init__(self) -> None:
        if not self.matched_keywords:
            raise ValueError("assignment needs at least one matched keyword")
        object.__setattr__(self, "matched_keywords", tuple(self.matched_keywords))


def _no_duplicate_keys(pairs):
    keys = [k for k, _ in pairs]
    if len(keys) != len(set(keys)):
        dup = sorted(k for k in set(keys) if keys.count(k) > 1)
        raise RulesetError(f"duplicate key(s) in ruleset: {', '.join(dup)}")
    return dict(pairs)


def load_ruleset(path: str | Path) -> Ruleset:
    """Load a ruleset JSON file.

    Shape: {"min_score": 1.0, "categories": {"<name>": [entries...]}} where
    an entry is either a bare keyword string (weight 1.0) or an object
    {"keyword": ..., "weight": ...}. Keywords are normalized; anything
    that does not survive normalization is rejected with its location.
    """
    path = Path(path)
    try:
        raw = json.loads(
            path.read_text(encoding="utf-8"), object_pairs_hook=_no_duplicate_keys
        )
    except OSError as exc:
        raise RulesetError(f"cannot read ruleset {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise RulesetError(f"ruleset {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict) or not isinstance(raw.get("categories", {}), dict):
        raise RulesetError(f"ruleset {path}: expected an object with 'categories'")
    min_score = raw.get("min_score", 1.0)
    if not isinstance(min_score, (int, float)) or isinstance(min_score, bool):
        raise RulesetError(f"ruleset {path}: min_score must be a number")

    categories: dict[str, tuple[tuple[Term, float], ...]] = {}
    for name, entries in raw.get("categories", {}).items():
        if not isinstance(entries, list):
            raise RulesetError(f"category {name!r}: expected a list of keywords")
        keywords: list[tuple[Term, float]] = []
        seen: set[Term] = set()
        for pos, entry in enumerate(entries):
            if isinstance(entry, str):
                raw_keyword, weight = entry, 1.0
            elif isinstance(entry, dict):
                raw_keyword = entry.get("keyword")
                weight = entry.get("weight", 1.0)
            else:
                raise RulesetError(f"category {name!r} entry {pos}: bad keyword entry")
            if not isinstance(raw_keyword, str):
                raise RulesetError(f"category {name!r} entry {pos}: keyword must be a string")
            if not isinstance(weight, (int, float)) or isinstance(weight, bool) or weight <= 0:
                raise RulesetError(f"category {name!r} entry {pos}: weight must be > 0")
            keyword = normalize_token(raw_keyword)
            if keyword is None:
                raise RulesetError(
                    f"category {name!r} entry {pos}: {raw_keyword!r} is not a valid keyword"
                )
            if keyword in seen:
                raise RulesetError(f"category {name!r}: duplicate keyword {keyword!r}")
            seen.add(keyword)
            keywords.append((keyword, float(weight)))
        categories[name] = tuple(keywords)
    return Ruleset(categories, float(min_score))


def categorize_segment(
    segment: ArticleSegment,
    rules: Ruleset,
    vocab: Vocabulary,
    stop: Stoplist = Stoplist(),
) -> list[CategoryAssignment]:
    """Score a segment against every category.

    The segment's tokens are cleaned through the lexicon first; each
    category scores the weight sum of its distinct matched keywords.
    Assignments at or above min_score come back sorted by score
    descending, then category name.
    """
    present = set(filter_tokens([t.text for t in segment.tokens], vocab, stop))
    assignments: list[CategoryAssignment] = []
    for name, keywords in rules.categories.items():
        matched = sorted(kw for kw, _ in keywords if kw in present)
        if not matched:
            continue
        weights = dict(keywords)
        score = sum(weights[kw] for kw in matched)
        if score >= rules.min_score:
            assignments.append(CategoryAssignment(name, score, tuple(matched)))
    assignments.sort(key=lambda a: (-a.score, a.category))
    return assignments
