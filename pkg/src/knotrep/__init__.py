"""SU(2) trace-zero representation spaces of pretzel knots and links."""

from knotrep.angles import CentralCase, RationalAngle
from knotrep.knot import PretzelKnot

__all__ = ["CentralCase", "PretzelKnot", "RationalAngle"]
__version__ = "0.1.0"
