"""Exception hierarchy shared by every radaff module."""
from typing import Optional


class RadaffError(ValueError):
    """Base class for all radaff errors.

    ``exit_code`` is what the command-line front end returns when the error
    escapes a subcommand.
    """

    exit_code = 2


class InvalidParameters(RadaffError):
    """Arguments outside the documented domain (bad prime, bad dimension...)."""


class Incompatible(RadaffError):
    """Operands live over different moduli or dimensions."""


class NotInvertible(RadaffError):
    """Zero has no multiplicative inverse."""


class Singular(RadaffError):
    """A matrix that must be invertible is not."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class ParseError(RadaffError):
    """Malformed text input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SizeBoundExceeded(RadaffError):
    """Subgroup closure grew past the configured bound."""


class BoundExceeded(RadaffError):
    """An exhaustive search would exceed its configured bound."""


class PrecisionExhausted(RadaffError):
    """A truncated series cannot represent the requested result."""


class VerificationFailed(RadaffError):
    """A property that must hold was found to fail."""

    exit_code = 1


class NotNilpotent(VerificationFailed):
    pass


class NotRadical(VerificationFailed):
    pass


class NotAssociative(VerificationFailed):
    pass


class NotASubgroup(VerificationFailed):
    pass


class NotRegular(VerificationFailed):
    pass


class NotAbelian(VerificationFailed):
    pass
