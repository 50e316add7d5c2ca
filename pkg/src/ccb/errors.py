"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class CCBError(Exception):
    """Base class for every error raised by :mod:`ccb`."""

    exit_code = 1


class GraphParseError(CCBError):
    """Malformed graph source. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidInputError(CCBError, ValueError):
    """An argument violates an operation's precondition."""


class WordSyntaxError(InvalidInputError):
    pass


class ResourceLimitError(CCBError):
    """A configured size bound would be exceeded."""

    exit_code = 4


class InvariantViolation(CCBError, AssertionError):
    """An internal consistency check failed. Always a bug."""

    exit_code = 3
