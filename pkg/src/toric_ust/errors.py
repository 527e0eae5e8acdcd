"""Exception hierarchy shared across the package."""

from __future__ import annotations


class ToricError(Exception):
    """Base class for all errors raised by toric_ust."""


class DimensionError(ToricError, ValueError):
    """Vectors or matrices with incompatible sizes."""


class DegenerateInputError(ToricError, ValueError):
    """Zero vectors, empty generator lists and similar degenerate data."""


class NotPointedError(ToricError, ValueError):
    """The cone contains a line; ``lineality`` holds one such direction."""

    def __init__(self, message: str, lineality: tuple[int, ...] | None = None):
        super().__init__(message)
        self.lineality = lineality


class NotFullError(ToricError, ValueError):
    """The cone does not span its ambient space."""


class NotSimplicialError(ToricError, ValueError):
    pass


class DomainError(ToricError, ValueError):
    """Argument outside the domain of an operation (e.g. a point outside the
    semigroup, a nonpositive exponent)."""


class InvariantBreach(ToricError, RuntimeError):
    """An internal consistency check failed; this is always a bug."""
