"""chronopress: burst and event mining for digitized historical newspapers.

Pipeline: parse ALTO or plain-text OCR pages, segment articles at
large-font headlines, clean tokens against a reference vocabulary and
stoplist, index per-term daily statistics, detect document-frequency
bursts, and correlate bursts across titles into event clusters.
"""

from .burst import (
    BaselineStats,
    Burst,
    BurstParams,
    baseline_stats,
    burst_score,
    bursts_to_jsonl,
    detect_bursts,
)
from .categorize import CategoryAssignment, Ruleset, categorize_segment, load_ruleset
from .corpus import (
    CorpusManifest,
    ManifestEntry,
    Page,
    PageId,
    Term,
    TextBlock,
    WordToken,
    load_manifest,
    load_page,
    normalize_token,
    parse_alto_page,
    parse_plaintext_page,
)
from .errors import (
    AltoParseError,
    AltoStructureError,
    ChronopressError,
    CorrelationError,
    DateRangeError,
    IndexFileError,
    IngestError,
    ManifestError,
    RulesetError,
    UsageError,
    VocabularyError,
)
from .events import (
    CrossTitleTerm,
    EventCluster,
    WindowParams,
    cluster_by_date,
    clusters_to_json,
    correlate_bursts,
    parse_event_table,
    render_event_table,
)
from .index import (
    DailyTermStats,
    DateTotals,
    SeriesPoint,
    TermDateIndex,
    build_index,
    corpus_term_counts,
    count_documents,
    series_to_csv,
)
from .lexicon import (
    Stoplist,
    Vocabulary,
    build_stoplist,
    filter_tokens,
    load_stoplist,
    load_vocabulary,
)
from .segmentation import (
    ArticleSegment,
    HeadlineSpan,
    SegmentationParams,
    body_font_size,
    detect_headlines,
    reading_order,
    segment_articles,
)

__version__ = "0.1.0"
