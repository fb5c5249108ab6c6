"""Exception types raised across the package."""


class KnotrepError(Exception):
    """Base class for all package errors."""


class ZeroParameter(KnotrepError, ValueError):
    pass


class ZeroDeterminant(KnotrepError, ValueError):
    pass


class NonUnitError(KnotrepError, ValueError):
    """An axis, quaternion or point that must have unit norm does not."""


NonUnitAxis = NonUnitError
NonUnitQuaternion = NonUnitError
NonUnitInput = NonUnitError


class OutOfRange(KnotrepError, ValueError):
    pass


class InfeasibleTriangle(KnotrepError, ValueError):
    pass


class UnsupportedShape(KnotrepError, ValueError):
    pass


class NotAKnot(KnotrepError, ValueError):
    pass


class UnsupportedStrandCount(KnotrepError, ValueError):
    pass


class UnknownGenerator(KnotrepError, KeyError):
    pass


class DegenerateConfiguration(KnotrepError, ValueError):
    pass


class RankAmbiguous(KnotrepError, ArithmeticError):
    """Singular values straddle the rank threshold without a clear gap."""


class InconsistentEnumeration(KnotrepError, RuntimeError):
    """Two independent routes through the enumeration disagree."""
