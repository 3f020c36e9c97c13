"""Exception types shared across the package."""

from __future__ import annotations


class EquisymError(Exception):
    """Base class for all errors raised by equisym."""


class GroupValidationError(EquisymError, ValueError):
    """An ingested multiplication table is not a group table.

    ``witness`` holds the first failing pair/triple of element indices.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapabilityError(EquisymError):
    """The request is outside what the engine supports at configured limits."""


class ShapeError(EquisymError, ValueError):
    """A vector, move or subgroup does not fit the shape it is applied to."""


class NotAdmissibleError(EquisymError, ValueError):
    """A (signature, order) pair fails the Riemann-Hurwitz admissibility test.

    ``value`` is the exact rational value obtained for the genus.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class ParseError(EquisymError, ValueError):
    """Malformed textual input (group spec, signature, vector, element)."""


class ConsistencyError(EquisymError, AssertionError):
    """An internal cross-check failed; indicates a bug, never user error."""
