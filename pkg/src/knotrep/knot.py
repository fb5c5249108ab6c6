"""Pretzel knots: parameters, classical invariants and group presentations."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from knotrep.angles import signed_determinant
from knotrep.errors import NotAKnot, UnsupportedShape, ZeroParameter

# A word is a tuple of nonzero ints: +g is s_g, -g is s_g^{-1} (generators 1-based).
Word = tuple[int, ...]


@dataclass(frozen=True)
class PretzelKnot:
    p: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        if len(p) < 2:
            raise ValueError("a pretzel knot needs at least two twist regions")
        if any(x == 0 for x in p):
            raise ZeroParameter(
                f"P{p}: a zero twist region gives P(0, ...), a connected sum of "
                "torus knots, which is not handled"
            )
        object.__setattr__(self, "p", p)

    @classmethod
    def parse(cls, text: str) -> "PretzelKnot":
        t = text.strip()
        if t.lower().startswith("p="):
            t = t[2:]
        t = t.strip("P()[] ")
        return cls(tuple(int(x) for x in t.replace(" ", "").split(",") if x))

    @property
    def n(self) -> int:
        return len(self.p)

    def __str__(self) -> str:
        return "P(" + ",".join(str(x) for x in self.p) + ")"

    @property
    def has_unit_entry(self) -> bool:
        """Some |p_i| = 1: the knot has bridge number at most 2."""
        return any(abs(x) == 1 for x in self.p)

    def pairwise_coprime(self) -> bool:
        return all(
            math.gcd(a, b) == 1
            for i, a in enumerate(self.p)
            for b in self.p[i + 1:]
        )


def determinant(k: PretzelKnot) -> tuple[int, int]:
    """Signed ``sum_i prod_{j != i} p_j`` and its absolute value."""
    d = signed_determinant(k.p)
    return d, abs(d)


def component_count(k: PretzelKnot) -> int:
    evens = sum(1 for x in k.p if x % 2 == 0)
    if evens == 0:
        return 1 if k.n % 2 == 1 else 2
    return evens


def is_knot(k: PretzelKnot) -> bool:
    return component_count(k) == 1


def klassen_bd_count(k: PretzelKnot) -> int:
    """Number of irreducible binary dihedral classes, ``(|det| - 1) / 2``."""
    if not is_knot(k):
        raise NotAKnot(f"{k} has {component_count(k)} components")
    return (determinant(k)[1] - 1) // 2


def _require_odd_triple(k: PretzelKnot) -> None:
    if k.n != 3 or any(x % 2 == 0 for x in k.p):
        raise UnsupportedShape(f"Seifert form only implemented for P(p,q,r) with p,q,r odd, got {k}")


def seifert_matrix(k: PretzelKnot) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """``V = 1/2 [[p+q, q+1], [q-1, q+r]]`` for the genus one knot P(p,q,r), all odd."""
    _require_odd_triple(k)
    p, q, r = k.p
    h = Fraction(1, 2)
    return ((h * (p + q), h * (q + 1)), (h * (q - 1), h * (q + r)))


def symmetrized_seifert(k: PretzelKnot) -> tuple[tuple[int, int], tuple[int, int]]:
    v = seifert_matrix(k)
    m = [[v[a][b] + v[b][a] for b in range(2)] for a in range(2)]
    return tuple(tuple(int(x) for x in row) for row in m)


def signature(k: PretzelKnot) -> int:
    """Signature of ``V + V^T``, read off its trace and determinant."""
    (a, b), (_, d) = symmetrized_seifert(k)
    det = a * d - b * b
    tr = a + d
    if det > 0:
        return 2 if tr > 0 else -2
    if det < 0:
        return 0
    # rank <= 1
    return (tr > 0) - (tr < 0)


def lin_invariant(k: PretzelKnot) -> int:
    return signature(k) // 2


class GroupKind(enum.Enum):
    KNOT_GROUP = "knot"
    QUOTIENT_GROUP = "quotient"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = field(default_factory=tuple)

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            if not r:
                raise ValueError("empty relator")
            if any(x == 0 or abs(x) > n for x in r):
                raise ValueError(f"relator {r} references an undeclared generator")

    def format_word(self, word: Word) -> str:
        return " ".join(
            self.generators[abs(x) - 1] + ("" if x > 0 else "^-1") for x in word
        )

    def to_text(self) -> str:
        return "\n".join(self.format_word(r) for r in self.relators) + "\n"

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.relators]


def inverse_word(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def power_word(w: Sequence[int], k: int) -> Word:
    base = tuple(w) if k >= 0 else inverse_word(w)
    return base * abs(k)


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


# Tangle words over the two top meridians: 1 stands for s, 2 for t.
_S, _T = 1, 2


def tangle_words(p: int) -> tuple[Word, Word]:
    """Bottom meridians ``(u, v)`` of an elementary p-tangle, as words in s (=1) and t (=2)."""
    if p == 0:
        raise ZeroParameter("tangle parameter must be nonzero")
    ts = (_T, _S)

    def conj(inner: Word, k: int) -> Word:
        # (ts)^{-k} inner (ts)^{k}
        return power_word(ts, -k) + inner + power_word(ts, k)

    s_word, t_word = (_S,), (_T,)
    sinv_t_s = (-_S, _T, _S)
    t_s_tinv = (_T, _S, -_T)
    if p > 0 and p % 2 == 1:
        k = (p - 1) // 2
        return conj(sinv_t_s, k), conj(s_word, k)
    if p > 0:
        k = p // 2
        return conj(s_word, k), conj(sinv_t_s, k - 1)
    m = -p
    if m % 2 == 1:
        k = (m - 1) // 2
        return conj(t_word, -k), conj(t_s_tinv, -k)
    k = m // 2
    return conj(t_s_tinv, -(k - 1)), conj(t_word, -k)


def _substitute(word: Word, s_gen: int, t_gen: int) -> Word:
    """Replace s by s_{s_gen} and t by s_{t_gen}^{-1}."""
    out = []
    for x in word:
        if abs(x) == _S:
            out.append(s_gen if x > 0 else -s_gen)
        else:
            out.append(-t_gen if x > 0 else t_gen)
    return tuple(out)


def emit_presentation(k: PretzelKnot, which: GroupKind = GroupKind.QUOTIENT_GROUP) -> Presentation:
    n = k.n
    gens = tuple(f"s{i + 1}" for i in range(n))
    if which is GroupKind.QUOTIENT_GROUP:
        rels: list[Word] = [(1, 1, 1, 1)]
        for i in range(2, n + 1):
            rels.append((1, 1, -i, -i))
        chain = [power_word((i + 1, (i + 1) % n + 1), k.p[i]) for i in range(n)]
        for i in range(n - 1):
            rels.append(chain[i] + inverse_word(chain[i + 1]))
        return Presentation(gens, tuple(rels))

    # t_i = s_{i+1}^{-1} at tangle i; relations v_i u_{i+1} = 1, the last one omitted.
    uv = []
    for i in range(n):
        u, v = tangle_words(k.p[i])
        s_gen, t_gen = i + 1, (i + 1) % n + 1
        uv.append((_substitute(u, s_gen, t_gen), _substitute(v, s_gen, t_gen)))
    rels = [free_reduce(uv[i][1] + uv[(i + 1) % n][0]) for i in range(n - 1)]
    # a relation can cancel completely, e.g. for P(1,-1)
    return Presentation(gens, tuple(r for r in rels if r))


def all_knot_group_relators(k: PretzelKnot) -> tuple[Word, ...]:
    """All n relators ``v_i u_{i+1}``, including the redundant one."""
    n = k.n
    uv = []
    for i in range(n):
        u, v = tangle_words(k.p[i])
        uv.append((_substitute(u, i + 1, (i + 1) % n + 1), _substitute(v, i + 1, (i + 1) % n + 1)))
    return tuple(free_reduce(uv[i][1] + uv[(i + 1) % n][0]) for i in range(n))


class Bridge(enum.Enum):
    TWO = "two"
    THREE = "three"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


def bridge_number_estimate(k: PretzelKnot) -> Bridge:
    """Bridge number of a pairwise coprime P(p,q,r).

    Three is only returned once a non binary dihedral class has actually been found.
    """
    if k.n != 3 or not k.pairwise_coprime():
        return Bridge.UNKNOWN
    if k.has_unit_entry:
        return Bridge.TWO
    from knotrep.reps import enumerate_all

    report = enumerate_all(k)
    if not report.non_bd_classes:
        from knotrep.errors import InconsistentEnumeration

        raise InconsistentEnumeration(f"{k}: no non binary dihedral class found")
    return Bridge.THREE
