"""Exceptions raised by maxips."""

from typing import Any, Dict, Optional


class MaxipsError(Exception):
    """Base error for maxips operations."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class DomainError(MaxipsError, ValueError):
    """An input lies outside the domain of an operation."""


class PointSetParseError(MaxipsError):
    """A point-set file could not be parsed."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}", {"line": line})
        self.line = line


class EmbeddingError(MaxipsError):
    """No isometry puts a rational point set onto the integer grid."""


class CheckpointError(MaxipsError):
    """A resume file does not belong to the requested search."""
