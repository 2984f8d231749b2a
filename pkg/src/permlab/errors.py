"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class PermlabError(Exception):
    """Base class for all errors raised by permlab."""


class ParameterError(PermlabError, ValueError):
    """Invalid argument: bad family parameters, out-of-range vertex, etc."""


class ParseError(PermlabError, ValueError):
    """Malformed graph6 / edge-list / matrix / config text.

    ``position`` is a character offset (graph6) or 1-based line number
    (line-oriented formats); ``kind`` says which.
    """

    def __init__(self, message: str, position: int | None = None, kind: str = "offset"):
        self.position = position
        self.kind = kind
        if position is not None:
            message = f"{message} (at {kind} {position})"
        super().__init__(message)


class InputClassError(PermlabError, ValueError):
    """Input lies outside the matrix class a check is defined for."""


class SizeLimitError(PermlabError):
    """Matrix dimension exceeds the configured engine cap."""


class StructuralError(PermlabError):
    """A closure decomposition does not rebuild the claimed graph."""
