"""Exception hierarchy shared by every module."""


class RanksumError(Exception):
    """Base class for library errors."""


class InvalidInputError(RanksumError, ValueError):
    """Malformed or inconsistent input."""


class ResourceLimitError(RanksumError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class DegenerateOutcomeError(RanksumError, ValueError):
    """Outcome vector is all zeros or all ones where a curve is required."""


class PreconditionError(RanksumError, ValueError):
    """A required precondition does not hold for the supplied input."""
