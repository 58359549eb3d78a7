"""Exceptions raised by computations (as opposed to bad arguments).

Argument validation failures raise plain ``ValueError``; everything here
signals that a well-formed request could not be completed.
"""


class TuranError(Exception):
    """Base class for computation errors."""


class CapExceededError(TuranError):
    """An instance is larger than the configured size cap."""


class TruncatedError(TuranError):
    """An enumeration hit its cap and the caller needs the complete list."""


class WitnessUnavailableError(TuranError):
    """A requested witness construction does not apply to the instance."""


class InfeasibleError(TuranError):
    pass


class UnboundedError(TuranError):
    pass
