"""Exception hierarchy. The CLI maps each family to an exit code."""


class CarcassError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(CarcassError):
    """Malformed or unusable graph input (exit code 2)."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DomainError(CarcassError):
    """A well-formed request with no answer, e.g. "not separated" (exit code 1)."""


class InvariantBreach(CarcassError):
    """An internal structural guarantee failed (exit code 3)."""
