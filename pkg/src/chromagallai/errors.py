"""Exception hierarchy.

Input problems derive from ``ValueError`` so callers can catch them
generically; broken internal invariants derive from ``RuntimeError``.
"""

from __future__ import annotations

from typing import Any


class ChromaError(Exception):
    """Base class for all errors raised by the package."""


class GraphFormatError(ChromaError, ValueError):
    """Malformed graph6 / edge-list / coloring / tree text."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnsupportedSizeError(ChromaError, ValueError):
    """Input exceeds a size guard (see ``limits``)."""


class PreconditionError(ChromaError, ValueError):
    """An operation was called outside its documented precondition."""


class CertificateError(ChromaError, ValueError):
    """A supplied certificate (chain, witness) does not validate."""


class InvariantError(ChromaError, RuntimeError):
    """An internal invariant broke; carries the partial trace for diagnosis."""

    def __init__(self, message: str, trace: Any = None):
        super().__init__(message)
        self.trace = trace
