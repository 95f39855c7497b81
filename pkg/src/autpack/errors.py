"""Exception hierarchy shared by all autpack modules."""

from __future__ import annotations


class AutpackError(Exception):
    """Base class for every error raised by autpack."""


# group kernel
class NotAGroup(AutpackError, ValueError):
    pass


class OrderCapExceeded(AutpackError, ValueError):
    pass


class UnsupportedSpec(AutpackError, ValueError):
    pass


class ParseError(AutpackError, ValueError):
    """Malformed input file; ``line`` is 1-based or None if unknown."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# curve actions
class NonIntegralGenus(AutpackError, ValueError):
    pass


class NegativeGenus(AutpackError, ValueError):
    pass


class NonDivisor(AutpackError, ValueError):
    pass


class GenusTooSmall(AutpackError, ValueError):
    pass


# packing
class SameElement(AutpackError, ValueError):
    pass


class GroupTooLarge(AutpackError, ValueError):
    pass


# slope
class InconsistentDegrees(AutpackError, ValueError):
    pass


class ZeroDenominator(AutpackError, ZeroDivisionError):
    pass


class PreconditionViolated(AutpackError, ValueError):
    pass


# search / verification
class SearchError(AutpackError, RuntimeError):
    """An internal consistency bound was violated during a search."""


class VerificationFailed(AutpackError, AssertionError):
    pass
