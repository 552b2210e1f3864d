"""Exception hierarchy shared across the package."""


class QuadblochError(Exception):
    """Base class for all package errors."""


class DomainError(QuadblochError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class RingMismatchError(QuadblochError, ValueError):
    """Operands belong to different rings Z[omega_m]."""


class CapacityError(QuadblochError, RuntimeError):
    """A configured desk-scale bound (factoring, move budget) was exceeded."""


class CheckFailure(QuadblochError):
    """A verified construction (map well-definedness, covering) failed.

    Carries a witness describing the first violated constraint.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedCharacterError(DomainError):
    """The character class admits no certificate search (see classify())."""

    def __init__(self, message: str, kind=None):
        super().__init__(message)
        self.kind = kind
