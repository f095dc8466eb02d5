"""Exception types raised by the library.

Everything derives from :class:`TextropyError` so callers can catch broadly;
the service layer maps these onto HTTP status codes.
"""


class TextropyError(Exception):
    """Base class for all library errors."""


class DecodeError(TextropyError):
    """Input bytes are not valid UTF-8."""

    def __init__(self, source: str, offset: int, reason: str = ""):
        self.source = source
        self.offset = offset
        msg = f"undecodable byte sequence in {source!r} at byte offset {offset}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class EmptyTextError(TextropyError):
    """Text produced no tokens, so no record can be computed."""


class EmptyProfileError(TextropyError):
    """Operation requires a non-empty frequency profile."""


class SegmentBoundsError(TextropyError):
    """Rank segment [a, b] falls outside 1..D or is inverted."""


class DomainError(TextropyError):
    """Argument outside the mathematical domain of the function."""


class FitError(TextropyError):
    """Regression or minimisation is underdetermined or failed."""


class UndefinedTailError(FitError):
    """Tail segment is a single rank; the tail deviation is undefined."""


class InsufficientDataError(TextropyError):
    """Too few observations for the requested statistic."""


class DegenerateSampleError(TextropyError):
    """Sample has no variance where variance is required."""


class CorpusError(TextropyError):
    """Library/corpus level failure (bad root, duplicate names, no matches)."""
