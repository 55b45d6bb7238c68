"""Exception types shared across the package."""


class CentrosimError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(CentrosimError):
    """Matrix dimensions are inconsistent with the requested operation."""


class ModeError(CentrosimError):
    """Exact and approximate scalars were mixed in one operation."""


class PreconditionError(CentrosimError):
    """An operation's mathematical precondition does not hold.

    Carries optional context (e.g. the offending residual matrix) in
    ``payload`` so failures can be inspected without rerunning.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


class RankError(PreconditionError):
    """A matrix does not have the rank the operation requires."""


class InsufficientSamplesError(CentrosimError):
    """Too few evaluation points to certify a polynomial identity."""
