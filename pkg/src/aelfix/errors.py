"""Exception types shared across the engine."""

from __future__ import annotations


class ParseError(ValueError):
    """Raised on malformed input text; carries a 1-based source position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.col = col


class UndeclaredAtomError(ValueError):
    """An atom occurs that is not part of the declared alphabet."""

    def __init__(self, name: str, line: int | None = None, col: int | None = None):
        position = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(f"undeclared atom {name!r}{position}")
        self.name = name
        self.line = line
        self.col = col


class CapExceededError(RuntimeError):
    """An explicit-set operation was asked to materialize too large a space."""


class InternalInvariantError(RuntimeError):
    """A property the engine guarantees by construction was violated.

    Raising instead of silently continuing turns implementation bugs into
    loud failures; user input can never trigger this.
    """
