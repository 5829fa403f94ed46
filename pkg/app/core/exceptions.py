"""
Errors raised by the field, linear algebra and code layers
"""


class MsrError(Exception):
    """Base class for every error raised by the project."""


class NotPrime(MsrError, ValueError):
    pass


class DivisionByZero(MsrError, ZeroDivisionError):
    pass


class NotSquare(MsrError):
    pass


class Singular(MsrError):
    """A linear system has no unique solution."""


class NotInSpan(MsrError):
    """Target rows are not contained in the row space of the basis."""


class OutOfRange(MsrError, IndexError):
    pass


class DimensionMismatch(MsrError):
    pass


class TooLarge(MsrError):
    """Dense materialization requested beyond the configured cap."""


class Overflow(MsrError):
    pass


class BadParams(MsrError, ValueError):
    pass


class ZeroLambda(BadParams):
    pass


class SearchExhausted(MsrError):
    pass


class BadLength(MsrError):
    pass


class ChecksumMismatch(MsrError):
    pass


class SymbolOverflow(MsrError):
    pass


class BadShard(MsrError):
    """A shard file header is malformed or belongs to another code."""
