import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from knotrep.errors import NotAKnot, UnsupportedShape, ZeroParameter
from knotrep.knot import (
    Bridge,
    GroupKind,
    Presentation,
    PretzelKnot,
    all_knot_group_relators,
    bridge_number_estimate,
    component_count,
    determinant,
    emit_presentation,
    free_reduce,
    is_knot,
    klassen_bd_count,
    lin_invariant,
    seifert_matrix,
    signature,
    symmetrized_seifert,
    tangle_words,
)

K = lambda *p: PretzelKnot(p)  # noqa: E731

odd = st.integers(-11, 11).filter(lambda x: x % 2)
nonzero = st.integers(-9, 9).filter(bool)


def test_parse():
    assert PretzelKnot.parse("3,5,7") == K(3, 5, 7)
    assert PretzelKnot.parse("p=-3,5,7") == K(-3, 5, 7)
    assert PretzelKnot.parse("P(-2, 3, 7)") == K(-2, 3, 7)
    assert str(K(-2, 3, 7)) == "P(-2,3,7)"


def test_rejects_zero_and_short():
    with pytest.raises(ZeroParameter, match="connected sum"):
        K(0, 3, 5)
    with pytest.raises(ValueError):
        K(3)


@pytest.mark.parametrize("p, signed", [((3, 5, 7), 71), ((-3, 5, 7), -1), ((-2, 3, 7), 1)])
def test_determinant(p, signed):
    assert determinant(K(*p)) == (signed, abs(signed))


@pytest.mark.parametrize("p, comps", [((3, 5, 7), 1), ((3, 5, 7, 9), 2), ((-2, 3, 7), 1), ((2, 4, 3), 2)])
def test_components(p, comps):
    assert component_count(K(*p)) == comps
    assert is_knot(K(*p)) == (comps == 1)


@pytest.mark.parametrize("p, count", [((3, 5, 7), 35), ((-3, 5, 7), 0), ((3, 3, 3), 13)])
def test_klassen(p, count):
    assert klassen_bd_count(K(*p)) == count


def test_klassen_needs_knot():
    with pytest.raises(NotAKnot):
        klassen_bd_count(K(3, 5, 7, 9))


def test_seifert_examples():
    h = Fraction(1, 2)
    assert seifert_matrix(K(3, 5, 7)) == ((8 * h, 6 * h), (4 * h, 12 * h))
    assert seifert_matrix(K(1, 1, 1)) == ((2 * h, 2 * h), (0 * h, 2 * h))
    assert seifert_matrix(K(-3, 5, 7)) == ((2 * h, 6 * h), (4 * h, 12 * h))
    with pytest.raises(UnsupportedShape):
        seifert_matrix(K(-2, 3, 7))


@pytest.mark.parametrize("p, sig", [((3, 5, 7), 2), ((-3, -5, -7), -2), ((-3, 5, 7), 0)])
def test_signature(p, sig):
    assert signature(K(*p)) == sig
    assert lin_invariant(K(*p)) == sig // 2


@given(odd, odd, odd)
def test_signature_oracle(p, q, r):
    k = K(p, q, r)
    m = np.array(symmetrized_seifert(k), dtype=float)
    ev = np.linalg.eigvalsh(m)
    assert signature(k) == int(np.sum(ev > 1e-9) - np.sum(ev < -1e-9))
    assert signature(k) in (-2, 0, 2)
    a, b = symmetrized_seifert(k)
    assert abs(a[0] * b[1] - a[1] * b[0]) == determinant(k)[1]


@given(st.tuples(odd, odd, odd).filter(lambda t: len({x > 0 for x in t}) == 1))
def test_same_sign_parity(p):
    k = PretzelKnot(p)
    assert klassen_bd_count(k) % 2 == 1
    assert determinant(k)[1] % 4 == 3


class TestPresentation:
    def test_quotient_relators(self):
        pres = emit_presentation(K(3, 5, 7), GroupKind.QUOTIENT_GROUP)
        s12, s23, s31 = (1, 2), (2, 3), (3, 1)
        assert pres.relators == (
            (1, 1, 1, 1),
            (1, 1, -2, -2),
            (1, 1, -3, -3),
            s12 * 3 + tuple(-x for x in reversed(s23 * 5)),
            s23 * 5 + tuple(-x for x in reversed(s31 * 7)),
        )

    def test_tangle_words(self):
        assert tangle_words(3) == ((-1, -2, -1, 2, 1, 2, 1), (-1, -2, 1, 2, 1))
        assert tangle_words(-2) == ((2, 1, -2), (2, 1, 2, -1, -2))
        with pytest.raises(ZeroParameter):
            tangle_words(0)

    def test_text_form(self):
        pres = emit_presentation(K(3, 5, 7))
        lines = pres.to_text().splitlines()
        assert lines[0] == "s1 s1 s1 s1"
        assert lines[1] == "s1 s1 s2^-1 s2^-1"

    def test_validation(self):
        with pytest.raises(ValueError):
            Presentation(("s1",), ((2,),))
        with pytest.raises(ValueError):
            Presentation(("s1",), ((),))

    @given(st.lists(nonzero, min_size=2, max_size=5))
    def test_knot_group_abelianizes(self, p):
        # H_1 is free abelian of rank equal to the number of components
        k = PretzelKnot(p)
        pres = emit_presentation(k, GroupKind.KNOT_GROUP)
        assert len(pres.relators) <= k.n - 1
        rows = np.zeros((k.n, k.n), dtype=int)
        for r_idx, r in enumerate(all_knot_group_relators(k)):
            for x in r:
                rows[r_idx, abs(x) - 1] += 1 if x > 0 else -1
        rank = np.linalg.matrix_rank(rows)
        assert k.n - rank == component_count(k)

    def test_free_reduce(self):
        assert free_reduce((1, 2, -2, -1, 3)) == (3,)


@pytest.mark.parametrize(
    "p, want",
    [((3, 5, 7), Bridge.THREE), ((1, 5, 7), Bridge.TWO), ((3, 3, 5), Bridge.UNKNOWN), ((3, 5, 7, 9), Bridge.UNKNOWN)],
)
def test_bridge(p, want):
    assert bridge_number_estimate(K(*p)) is want


def test_bridge_three_for_coprime_sweep():
    for p in itertools.product((-5, 3, 7), (2, -3, 5), (7, -9, 11)):
        k = PretzelKnot(p)
        if k.pairwise_coprime() and is_knot(k):
            assert bridge_number_estimate(k) is Bridge.THREE
