"""
Exception hierarchy for char1

Every failure raised by the core modules derives from Char1Error so that
handlers can map it to an exit code in one place.
"""

from typing import Any, Optional


class Char1Error(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DomainError(Char1Error):
    """Argument outside the domain of an operation."""


class ValidationError(Char1Error):
    """Malformed table, file or option."""


class PreconditionError(Char1Error):
    """A documented precondition does not hold.

    The offending data (for instance the triple violating a commutation
    identity) is kept on ``witness``.
    """

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class ResourceError(Char1Error):
    """Requested computation exceeds a configured size cap."""


class AccuracyError(Char1Error):
    """A numerical result cannot be certified to the requested tolerance."""

    exit_code = 2


class InternalConsistencyError(Char1Error):
    """A self-check failed; this signals a bug, not bad input."""
