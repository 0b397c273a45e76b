"""Shared exception types."""


class DataError(Exception):
    """Invalid input data: corpus files, index/model files, or judgments.

    Raised instead of returning partial results; callers can rely on
    either a complete value or this exception.
    """
