import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from knotrep.angles import CentralCase, RationalAngle, solve_edge_congruence
from knotrep.errors import DegenerateConfiguration, UnsupportedStrandCount
from knotrep.knot import GroupKind, PretzelKnot, determinant, is_knot, klassen_bd_count
from knotrep.quat import ImVector, Quaternion, Verdict, triangle_realizability
from knotrep.reps import (
    CaseTag,
    OrbitType,
    central_candidates,
    conjugacy_key,
    enumerate_abelian,
    enumerate_all,
    enumerate_binary_dihedral,
    enumerate_central_case,
    evaluate_word,
    expected_abelian_count,
    family_dimension_estimate,
    relation_residual,
    solve_closure_numeric,
)
from knotrep.knot import emit_presentation

R = RationalAngle
K = lambda *p: PretzelKnot(p)  # noqa: E731

SAMPLE_KNOTS = [(3, 5, 7), (-3, 5, 7), (3, -5, 7), (-2, 3, 7), (3, 3, 3), (1, 3, 5), (2, 3, 5), (3, 5, 11)]


@pytest.fixture(scope="module", params=SAMPLE_KNOTS, ids=str)
def report(request):
    return enumerate_all(PretzelKnot(request.param))


class TestAbelian:
    @pytest.mark.parametrize("p, count", [((3, 5, 7), 1), ((3, 5, 7, 9), 2), ((2, 3), 1), ((2, 4, 6), 4)])
    def test_counts(self, p, count):
        k = PretzelKnot(p)
        assert len(enumerate_abelian(k)) == count == expected_abelian_count(k)

    @pytest.mark.parametrize("p", [(2, 3), (3, 5, 7, 9), (2, 4, 3), (2, 2, 2, 3)])
    def test_brute_force(self, p):
        # every sign pattern, evaluated directly; eps and -eps are conjugate by i
        k = PretzelKnot(p)
        pres = emit_presentation(k, GroupKind.QUOTIENT_GROUP)
        hits = 0
        for eps in itertools.product((1, -1), repeat=k.n):
            images = [Quaternion(0.0, 0.0, float(e), 0.0) for e in eps]
            if all(evaluate_word(r, images).distance_to(Quaternion(1.0)) < 1e-12 for r in pres.relators):
                hits += 1
        assert len(enumerate_abelian(k)) == hits // 2


class TestCentralCase:
    def test_table_rows(self):
        rows = central_candidates(K(3, 5, 7), CentralCase.PLUS_ONE, interior_only=True)
        assert [tuple(str(a) for a in r.angles) for r in rows] == [
            ("1/3", "1/5", "1/7"), ("1/3", "1/5", "3/7"), ("1/3", "1/5", "5/7"),
            ("1/3", "3/5", "1/7"), ("1/3", "3/5", "3/7"), ("1/3", "3/5", "5/7"),
        ]
        classes = enumerate_central_case(K(3, 5, 7), CentralCase.PLUS_ONE)
        assert any(tuple(map(str, c.angles)) == ("1/3", "1/5", "3/7") for c in classes)

    def test_minus_one_rows(self):
        rows = central_candidates(K(3, 5, 7), CentralCase.MINUS_ONE, interior_only=True)
        assert {tuple(str(a) for a in r.angles) for r in rows} == {
            (a, b, c) for a in ("2/3",) for b in ("2/5", "4/5") for c in ("2/7", "4/7", "6/7")
        }

    def test_unit_knot(self):
        classes = enumerate_central_case(K(1, 1, 1), CentralCase.PLUS_ONE)
        assert all(c.binary_dihedral for c in classes)

    def test_needs_three_strands(self):
        with pytest.raises(UnsupportedStrandCount):
            enumerate_central_case(K(3, 5, 7, 9), CentralCase.PLUS_ONE)


class TestBinaryDihedral:
    @pytest.mark.parametrize("p, count", [((3, 5, 7), 35), ((-3, 5, 7), 0), ((-2, 3, 7), 0), ((3, 3, 3), 13)])
    def test_counts(self, p, count):
        assert len(enumerate_binary_dihedral(PretzelKnot(p))) == count

    def test_central_class_in_p333(self):
        classes = enumerate_binary_dihedral(K(3, 3, 3))
        assert any(c.case in (CaseTag.PLUS_ONE, CaseTag.MINUS_ONE) for c in classes)

    def test_klassen_sweep(self):
        checked = 0
        for p in itertools.combinations_with_replacement((-9, -5, -2, 1, 3, 4, 7, 9), 3):
            k = PretzelKnot(p)
            if not is_knot(k) or determinant(k)[0] == 0:
                continue
            assert len(enumerate_binary_dihedral(k)) == klassen_bd_count(k), p
            checked += 1
        assert checked >= 20

    def test_link(self):
        # for links no count is enforced, but every class still satisfies the relations
        k = K(3, 5, 7, 9)
        for c in enumerate_binary_dihedral(k):
            assert relation_residual(c, k) < 1e-9


class TestReport:
    def test_class_invariants(self, report):
        for c in report.all_classes:
            z = c.points
            n = len(z)
            for i in range(n):
                d = math.acos(max(-1.0, min(1.0, z[i].dot(z[(i + 1) % n]))))
                assert abs(d - c.angles[i].radians) < 1e-7
                assert abs(z[i].dot(z[(i + 1) % n]) - math.cos(c.angles[i].radians)) < 1e-10
            assert c.binary_dihedral == all(abs(p.x) < 1e-12 for p in z)
            assert (not c.abelian) or c.binary_dihedral
            assert c.abelian == all(a.is_zero_or_pi() for a in c.angles)
            assert (c.orbit_type is OrbitType.SPHERE) == c.abelian
            assert z[0] == ImVector(0.0, 1.0, 0.0)

    def test_relations(self, report):
        k = report.knot
        for c in report.all_classes:
            assert relation_residual(c, k, GroupKind.QUOTIENT_GROUP) < 1e-9
            assert relation_residual(c, k, GroupKind.KNOT_GROUP) < 1e-9

    def test_mirror_pairs(self, report):
        non_bd = report.non_bd_classes
        assert len(non_bd) % 2 == 0
        keys = {conjugacy_key(c.points) for c in non_bd}
        for c in non_bd:
            mirrored = [ImVector(-p.x, p.y, p.z) for p in c.points]
            assert conjugacy_key(mirrored) in keys
            assert conjugacy_key(mirrored) != conjugacy_key(c.points)
        ids = [c.mirror_pair_id for c in non_bd]
        assert all(ids.count(i) == 2 for i in ids)
        for c in report.binary_dihedral_classes + report.abelian_classes:
            mirrored = [ImVector(-p.x, p.y, p.z) for p in c.points]
            assert conjugacy_key(mirrored) == conjugacy_key(c.points)

    def test_single_abelian(self, report):
        assert report.counts["abelian"] == 1
        assert report.counts["total"] == len(report.all_classes)

    def test_numeric_cross_check(self, report):
        # 2 numeric solutions per mirror pair and 1 per degenerate class. Tuples with an
        # angle 0 or pi are skipped: there z_1 = +-z_2 leaves a circle of conjugate solutions.
        k = report.knot
        expected = found = 0
        for case in CentralCase:
            for row in central_candidates(k, case, interior_only=True):
                found += len(solve_closure_numeric(row.angles, attempts=200))
                expected += {Verdict.NON_DEGENERATE: 2, Verdict.DEGENERATE: 1, Verdict.INFEASIBLE: 0}[row.verdict]
        enumerated = [
            c for c in report.all_classes
            if c.case is not CaseTag.BETA and not any(a.is_zero_or_pi() for a in c.angles)
        ]
        assert found == expected == len(enumerated)


@pytest.mark.parametrize(
    "p, bd, non_bd",
    [((3, 5, 7), 35, 16), ((1, 3, 5), 11, 0), ((-3, 5, 7), 0, 16), ((3, 3, 3), 13, 2)],
)
def test_enumerate_all_counts(p, bd, non_bd):
    rep = enumerate_all(PretzelKnot(p))
    assert rep.counts["binary_dihedral"] == bd
    assert rep.counts["non_binary_dihedral"] == non_bd
    assert rep.complete


def test_enumerate_all_link_incomplete():
    rep = enumerate_all(K(3, 5, 7, 9))
    assert not rep.complete
    assert rep.counts["abelian"] == 2


def _coprime_triples(limit):
    vals = range(1, limit + 1)
    for p in itertools.combinations_with_replacement(vals, 3):
        if all(math.gcd(a, b) == 1 for a, b in itertools.combinations(p, 2)):
            yield p


@pytest.mark.parametrize("case", list(CentralCase))
def test_arithmetic_exclusions(case):
    # only |p_i| and parity enter the edge sets, so positive triples cover all signs
    for p in _coprime_triples(11):
        for row in central_candidates(PretzelKnot(p), case):
            on_axis = sum(a.is_zero_or_pi() for a in row.angles)
            if on_axis in (1, 2):
                assert not row.verdict.feasible, (p, row.angles)
            if on_axis < 3:
                assert row.verdict is not Verdict.DEGENERATE, (p, row.angles)


class TestClosureSolver:
    def test_square(self):
        h = R(1, 2)
        sols = solve_closure_numeric((h, h, h, h), attempts=50)
        assert sols
        assert family_dimension_estimate(sols[0], (h, h, h, h)) == 1

    def test_pentagon(self):
        h = R(1, 2)
        sols = solve_closure_numeric((h,) * 5, attempts=50)
        assert family_dimension_estimate(sols[0], (h,) * 5) == 2

    def test_infeasible(self):
        assert solve_closure_numeric((R(2, 3), R(4, 5), R(4, 7))) == []

    def test_deterministic(self):
        a = (R(1, 3), R(2, 5), R(3, 7), R(4, 9))
        assert solve_closure_numeric(a, attempts=100, seed=3) == solve_closure_numeric(a, attempts=100, seed=3)

    @settings(max_examples=40, deadline=None)
    @given(st.tuples(*[st.integers(1, 11)] * 3), st.tuples(*[st.integers(1, 12)] * 3))
    def test_triangle_oracle(self, nums, dens):
        angles = tuple(R(min(n, d), d) for n, d in zip(nums, dens))
        verdict = triangle_realizability(*angles).verdict
        sols = solve_closure_numeric(angles, attempts=64)
        assert bool(sols) == verdict.feasible

    def test_dimension_zero_for_triangles(self):
        for c in enumerate_all(K(3, 5, 7)).non_bd_classes:
            assert family_dimension_estimate(c.points, c.angles) == 0

    def test_degenerate_configuration(self):
        j = ImVector(0.0, 1.0, 0.0)
        with pytest.raises(DegenerateConfiguration):
            family_dimension_estimate((j, j, ImVector(1.0, 0.0, 0.0)), (R(0), R(1, 2), R(1, 2)))

    def test_p3579_sample(self):
        k = K(3, 5, 7, 9)
        sets = [solve_edge_congruence(p, CentralCase.PLUS_ONE) for p in k.p]
        angles = tuple(s[0] for s in sets)
        sols = [s for s in solve_closure_numeric(angles, attempts=200) if any(abs(z.x) > 1e-6 for z in s)]
        assert sols
        assert family_dimension_estimate(sols[0], angles) == 1
        np.testing.assert_allclose(
            [np.dot(sols[0][i].as_array(), sols[0][(i + 1) % 4].as_array()) for i in range(4)],
            [math.cos(a.radians) for a in angles],
            atol=1e-8,
        )
