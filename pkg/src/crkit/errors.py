"""Exception hierarchy shared by every crkit module."""

from __future__ import annotations


class CrkitError(Exception):
    """Base class for all toolkit errors."""


class NotHermitian(CrkitError, ValueError):
    pass


class Singular(CrkitError, ValueError):
    """A matrix that must be inverted is numerically singular."""


class SingularA(Singular):
    """The weighted combination A = sum (b_j - 2 Re a_j) A_j is not invertible."""


class NoContraction(CrkitError, ValueError):
    """The fixed-point map for the small solution is not a certified contraction."""


class NormTooLarge(CrkitError, ValueError):
    pass


class NotConverged(CrkitError, RuntimeError):
    pass


class Diverged(CrkitError, RuntimeError):
    """A matrix series did not fall below the tail tolerance in time."""


class BadWeight(CrkitError, ValueError):
    pass


class NotBihomogeneous(CrkitError, ValueError):
    pass


class LengthMismatch(CrkitError, ValueError):
    pass


class PreconditionError(CrkitError, ValueError):
    pass


class ParseError(CrkitError, ValueError):
    pass


class InvariantViolation(CrkitError, ValueError):
    """Input parsed fine but breaks a model invariant (Hermitian, real-valued, ...)."""
