"""Exception hierarchy shared across the toolkit.

``exit_code`` is what the CLI returns when the exception escapes a
subcommand: 1 for I/O and build failures, 2 for usage and selector errors.
"""

from __future__ import annotations


class ChronopressError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class AltoParseError(ChronopressError):
    """Raised when an ALTO document is not well-formed XML."""


class AltoStructureError(ChronopressError):
    """Raised when well-formed XML violates the supported ALTO subset."""


class ManifestError(ChronopressError):
    """Raised when a corpus manifest fails validation."""


class IngestError(ChronopressError):
    """Raised when a manifest entry cannot be read or parsed at build time."""


class VocabularyError(ChronopressError):
    """Raised when a wordlist file is unreadable or yields no terms."""


class IndexFileError(ChronopressError):
    """Raised when a serialized index file is malformed or inconsistent."""


class UsageError(ChronopressError):
    """Base class for errors the CLI reports as usage problems (exit 2)."""

    exit_code = 2


class DateRangeError(UsageError):
    """Raised when a date range has start > end."""


class RulesetError(UsageError):
    """Raised when a category ruleset file fails validation."""


class CorrelationError(UsageError):
    """Raised when cross-title correlation is asked for fewer than 2 titles."""
