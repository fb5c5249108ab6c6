"""Exact angles that are rational multiples of pi, and the congruences on them.

Nothing in this module touches floating point except ``RationalAngle.radians``.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from knotrep.errors import ZeroDeterminant, ZeroParameter


class CentralCase(enum.Enum):
    """Value of the common central element ``(s_i s_{i+1})^{p_i}``."""

    PLUS_ONE = 1
    MINUS_ONE = -1

    @classmethod
    def parse(cls, text: str) -> "CentralCase":
        t = str(text).strip().lower()
        if t in ("+1", "1", "plus", "plusone", "plus_one", "p"):
            return cls.PLUS_ONE
        if t in ("-1", "minus", "minusone", "minus_one", "m"):
            return cls.MINUS_ONE
        raise ValueError(f"unknown central case {text!r}; expected +1 or -1")

    def __str__(self) -> str:
        return "+1" if self is CentralCase.PLUS_ONE else "-1"


@functools.total_ordering
@dataclass(frozen=True)
class RationalAngle:
    """The angle ``(numerator / denominator) * pi``, reduced and wrapped into [0, 2pi)."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise ZeroDivisionError("RationalAngle denominator is zero")
        f = Fraction(self.numerator, self.denominator) % 2
        object.__setattr__(self, "numerator", f.numerator)
        object.__setattr__(self, "denominator", f.denominator)

    @classmethod
    def from_fraction(cls, f) -> "RationalAngle":
        f = Fraction(f)
        return cls(f.numerator, f.denominator)

    @classmethod
    def parse(cls, text: str) -> "RationalAngle":
        """Parse ``"2/5"`` (meaning 2pi/5), optionally with a trailing ``pi``."""
        t = text.strip().replace("π", "").replace("pi", "").replace("*", "")
        if not t:
            t = "1"
        return cls.from_fraction(Fraction(t))

    @property
    def over_pi(self) -> Fraction:
        """The angle divided by pi, as an exact fraction in [0, 2)."""
        return Fraction(self.numerator, self.denominator)

    @property
    def radians(self) -> float:
        return math.pi * self.numerator / self.denominator

    def is_zero_or_pi(self) -> bool:
        return self.denominator == 1

    def __neg__(self) -> "RationalAngle":
        return RationalAngle(-self.numerator, self.denominator)

    def __add__(self, other: "RationalAngle") -> "RationalAngle":
        return add_mod_2pi(self, other)

    def __sub__(self, other: "RationalAngle") -> "RationalAngle":
        return add_mod_2pi(self, -other)

    def __lt__(self, other: "RationalAngle") -> bool:
        if not isinstance(other, RationalAngle):
            return NotImplemented
        return self.over_pi < other.over_pi

    def __str__(self) -> str:
        return str(self.over_pi)

    def pretty(self) -> str:
        n, d = self.numerator, self.denominator
        if n == 0:
            return "0"
        head = "π" if n == 1 else f"{n}π"
        return head if d == 1 else f"{head}/{d}"


ZERO = RationalAngle(0)
PI = RationalAngle(1)


def add_mod_2pi(a: RationalAngle, b: RationalAngle) -> RationalAngle:
    return RationalAngle.from_fraction(a.over_pi + b.over_pi)


def fold_to_distance(a: RationalAngle) -> RationalAngle:
    """Map an angle in [0, 2pi) to the spherical distance it represents, in [0, pi]."""
    f = a.over_pi
    return a if f <= 1 else RationalAngle.from_fraction(2 - f)


def solve_edge_congruence(p: int, case: CentralCase) -> list[RationalAngle]:
    """All distances alpha in [0, pi] with ``(-1)^p e^{i p alpha}`` equal to the central sign.

    Equivalently ``p alpha = p pi`` (case +1) or ``(p + 1) pi`` (case -1) mod 2pi, so
    alpha = k pi / |p| with k of the parity of p, respectively p + 1.
    """
    if p == 0:
        raise ZeroParameter("pretzel parameter must be nonzero")
    m = abs(p)
    parity = p % 2 if case is CentralCase.PLUS_ONE else (p + 1) % 2
    return [RationalAngle(k, m) for k in range(m + 1) if k % 2 == parity]


def signed_determinant(p) -> int:
    """``sum_i prod_{j != i} p_j``."""
    total = 0
    for i in range(len(p)):
        total += math.prod(p[:i] + p[i + 1:])
    return total


def solve_beta_congruences(
    p,
) -> list[tuple[RationalAngle, list[tuple[RationalAngle, ...]]]]:
    """Exact solutions of the non-central binary dihedral closure problem.

    Finds every beta not in {0, pi} and every tuple of chain angles alpha_i in [0, 2pi)
    such that ``(s_i s_{i+1})^{p_i}`` maps to ``-e^{i beta}`` for all i, i.e.
    ``p_i alpha_i = beta + (p_i + 1) pi (mod 2pi)``, with ``sum alpha_i = 0 (mod 2pi)``.
    For odd p_i this is the plain congruence ``p_i alpha_i = beta``.

    Returned groups are sorted by beta; tuples within a group lexicographically.
    """
    p = [int(x) for x in p]
    if any(x == 0 for x in p):
        raise ZeroParameter("pretzel parameters must be nonzero")
    delta = signed_determinant(p)
    if delta == 0:
        raise ZeroDeterminant(f"signed determinant of {tuple(p)} is zero")
    n = len(p)
    big = math.prod(p)
    # Multiplying the closure condition by prod(p) forces
    # beta * delta = -pi * sum_i (p_i + 1) prod_{j != i} p_j  (mod 2pi).
    offset = -sum((p[i] + 1) * (big // p[i]) for i in range(n))
    m = abs(delta)
    candidates = sorted({Fraction(offset + 2 * t, delta) % 2 for t in range(m)})

    out = []
    for beta in candidates:
        if beta in (0, 1):
            continue
        # alpha_i = (beta + (p_i + 1) + 2 k_i) / p_i, k_i modulo |p_i|
        choices = []
        for pi_ in p:
            base = beta + (pi_ + 1)
            choices.append(sorted({((base + 2 * k) / pi_) % 2 for k in range(abs(pi_))}))
        last = p[-1]
        target = (beta + last + 1) % 2
        tuples = []
        for head in itertools.product(*choices[:-1]):
            a_last = (-sum(head)) % 2
            if (last * a_last - target) % 2 == 0:
                tuples.append(tuple(RationalAngle.from_fraction(a) for a in (*head, a_last)))
        if tuples:
            tuples.sort(key=lambda tup: tuple(a.over_pi for a in tup))
            out.append((RationalAngle.from_fraction(beta), tuples))
    return out
