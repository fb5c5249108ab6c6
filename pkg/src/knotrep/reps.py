"""Conjugacy classes of trace-zero SU(2) representations of pretzel knot groups.

A representation is recorded by the images z_i = rho(s_i) of the meridians, which are
unit imaginary quaternions. Conjugacy is fixed by z_1 = j and z_2 = j e^{i alpha_12}.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from knotrep.angles import (
    PI,
    ZERO,
    CentralCase,
    RationalAngle,
    fold_to_distance,
    solve_beta_congruences,
    solve_edge_congruence,
)
from knotrep.errors import (
    DegenerateConfiguration,
    InconsistentEnumeration,
    UnsupportedStrandCount,
)
from knotrep.knot import (
    GroupKind,
    PretzelKnot,
    Word,
    component_count,
    emit_presentation,
    is_knot,
)
from knotrep.quat import (
    ONE,
    ImVector,
    Quaternion,
    Verdict,
    construct_triangle,
    planar_triangle_check,
    qmul,
    triangle_realizability,
)

RELATION_TOL = 1e-9


class CaseTag(enum.Enum):
    PLUS_ONE = "+1"
    MINUS_ONE = "-1"
    BETA = "beta"
    ABELIAN = "abelian"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def of(cls, case: CentralCase) -> "CaseTag":
        return cls.PLUS_ONE if case is CentralCase.PLUS_ONE else cls.MINUS_ONE


class OrbitType(enum.Enum):
    SPHERE = "S2"
    PROJECTIVE_SPACE = "RP3"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RepClass:
    """One conjugacy class in R(K; i), with a canonical representative.

    ``angles`` are the spherical distances d(z_i, z_{i+1}) in [0, pi]. For binary
    dihedral classes ``chain`` holds the positions theta_i of z_i = j e^{i theta_i}
    on the (j, k) great circle. ``mirror`` is +1 or -1 for non binary dihedral
    classes (sign of the i-component of z_3) and 0 otherwise.
    """

    case: CaseTag
    angles: tuple[RationalAngle, ...]
    points: tuple[ImVector, ...]
    abelian: bool
    binary_dihedral: bool
    mirror_pair_id: Optional[int] = None
    mirror: int = 0
    beta: Optional[RationalAngle] = None
    chain: Optional[tuple[RationalAngle, ...]] = None

    @property
    def orbit_type(self) -> OrbitType:
        return OrbitType.SPHERE if self.abelian else OrbitType.PROJECTIVE_SPACE

    @property
    def quaternions(self) -> tuple[Quaternion, ...]:
        return tuple(z.as_quaternion() for z in self.points)

    def sort_key(self):
        return (
            tuple(a.over_pi for a in self.angles),
            self.case.value,
            tuple(a.over_pi for a in self.chain) if self.chain else (),
            -self.mirror,
        )

    def label(self) -> str:
        a = ",".join(str(x) for x in self.angles)
        tag = {1: "+", -1: "-", 0: ""}[self.mirror]
        extra = f" beta={self.beta}" if self.beta is not None else ""
        return f"[{self.case}] ({a}){tag}{extra}"


@dataclass
class RepSpaceReport:
    knot: PretzelKnot
    abelian_classes: list[RepClass]
    binary_dihedral_classes: list[RepClass]
    non_bd_classes: list[RepClass]
    reference_discrepancies: list[dict] = field(default_factory=list)
    complete: bool = True

    @property
    def all_classes(self) -> list[RepClass]:
        return self.abelian_classes + self.binary_dihedral_classes + self.non_bd_classes

    @property
    def counts(self) -> dict:
        return {
            "abelian": len(self.abelian_classes),
            "binary_dihedral": len(self.binary_dihedral_classes),
            "non_binary_dihedral": len(self.non_bd_classes),
            "mirror_pairs": len(self.non_bd_classes) // 2,
            "total": len(self.all_classes),
        }


# ---------------------------------------------------------------------------
# evaluation helpers


def evaluate_word(word: Word, images: Sequence[Quaternion]) -> Quaternion:
    out = ONE
    for x in word:
        q = images[abs(x) - 1]
        out = qmul(out, q if x > 0 else q.conj())
    return out


def relation_residual(rep: RepClass, k: PretzelKnot, which: GroupKind = GroupKind.QUOTIENT_GROUP) -> float:
    """Largest deviation from 1 of the relators evaluated at ``rep`` (and of -z_i^2)."""
    qs = rep.quaternions
    pres = emit_presentation(k, which)
    worst = 0.0
    for r in pres.relators:
        worst = max(worst, evaluate_word(r, qs).distance_to(ONE))
    for q in qs:
        worst = max(worst, qmul(q, q).distance_to(Quaternion(-1.0)))
    return worst


def conjugacy_key(points: Sequence[ImVector], digits: int = 6) -> tuple:
    """Rotation invariant of a point configuration: Gram entries and triple products."""
    arr = np.array([z.as_array() for z in points])
    n = len(arr)
    key = []
    for a in range(n):
        for b in range(a + 1, n):
            key.append(round(float(arr[a] @ arr[b]), digits) + 0.0)
    for a, b, c in itertools.combinations(range(n), 3):
        key.append(round(float(np.linalg.det(arr[[a, b, c]])), digits) + 0.0)
    return tuple(key)


def _is_binary_dihedral_points(points: Sequence[ImVector], tol: float = 1e-9) -> bool:
    return all(abs(z.x) < tol for z in points)


def circle_point(theta: RationalAngle) -> ImVector:
    """``j e^{i theta} = cos(theta) j - sin(theta) k``."""
    t = theta.radians
    return ImVector(0.0, math.cos(t), -math.sin(t))


def _distances_from_chain(thetas: Sequence[RationalAngle]) -> tuple[RationalAngle, ...]:
    n = len(thetas)
    return tuple(fold_to_distance(thetas[(i + 1) % n] - thetas[i]) for i in range(n))


def canonical_chain(thetas: Sequence[RationalAngle]) -> tuple[RationalAngle, ...]:
    """Representative of ``theta -> -theta`` (conjugation by j).

    The first theta_i outside {0, pi} is made to lie in (0, pi).
    """
    for t in thetas:
        if not t.is_zero_or_pi():
            if t.over_pi > 1:
                return tuple(-x for x in thetas)
            break
    return tuple(thetas)


def _chain_from_increments(alphas: Sequence[RationalAngle]) -> tuple[RationalAngle, ...]:
    thetas = [ZERO]
    for a in alphas[:-1]:
        thetas.append(thetas[-1] + a)
    return tuple(thetas)


def _bd_class(case: CaseTag, thetas, beta=None) -> RepClass:
    thetas = canonical_chain(thetas)
    return RepClass(
        case=case,
        angles=_distances_from_chain(thetas),
        points=tuple(circle_point(t) for t in thetas),
        abelian=False,
        binary_dihedral=True,
        beta=beta,
        chain=thetas,
    )


# ---------------------------------------------------------------------------
# abelian classes


def enumerate_abelian(k: PretzelKnot) -> list[RepClass]:
    """Classes with z_i = eps_i j, eps_1 = +1, satisfying the quotient relations."""
    n = k.n
    out = []
    for tail in itertools.product((1, -1), repeat=n - 1):
        eps = (1,) + tail
        # rho(s_i s_{i+1}) = -eps_i eps_{i+1}
        values = {(-eps[i] * eps[(i + 1) % n]) ** (k.p[i] % 2) for i in range(n)}
        if len(values) != 1:
            continue
        thetas = tuple(ZERO if e == 1 else PI for e in eps)
        out.append(
            RepClass(
                case=CaseTag.ABELIAN,
                angles=_distances_from_chain(thetas),
                points=tuple(ImVector(0.0, float(e), 0.0) for e in eps),
                abelian=True,
                binary_dihedral=True,
                chain=thetas,
            )
        )
    out.sort(key=RepClass.sort_key)
    return out


# ---------------------------------------------------------------------------
# central cases


@dataclass(frozen=True)
class CandidateRow:
    """One tuple of edge distances admitted by the congruences of a central case."""

    case: CentralCase
    angles: tuple[RationalAngle, RationalAngle, RationalAngle]
    lo: object
    hi: object
    planar_ok: bool
    verdict: Verdict
    gram_det: float

    @property
    def interior(self) -> bool:
        return not any(a.is_zero_or_pi() for a in self.angles)

    @property
    def abelian(self) -> bool:
        return all(a.is_zero_or_pi() for a in self.angles)


def central_candidates(k: PretzelKnot, case: CentralCase, interior_only: bool = False) -> list[CandidateRow]:
    if k.n != 3:
        raise UnsupportedStrandCount(f"exact central-case enumeration needs 3 strands, {k} has {k.n}")
    sets = [solve_edge_congruence(p, case) for p in k.p]
    if interior_only:
        sets = [[a for a in s if not a.is_zero_or_pi()] for s in sets]
    rows = []
    for a12, a23, a31 in itertools.product(*sets):
        lo, hi, ok = planar_triangle_check(a12, a23, a31)
        real = triangle_realizability(a12, a23, a31)
        rows.append(CandidateRow(case, (a12, a23, a31), lo, hi, ok, real.verdict, real.gram_det))
    return rows


def enumerate_central_case(k: PretzelKnot, case: CentralCase) -> list[RepClass]:
    """All classes of a 3-strand pretzel with ``(s_i s_{i+1})^{p_i}`` mapped to the sign ``case``.

    Abelian tuples come back tagged ABELIAN, degenerate ones as binary dihedral classes,
    and each non-degenerate tuple as a mirror pair.
    """
    tag = CaseTag.of(case)
    out = []
    for row in central_candidates(k, case):
        if row.verdict is Verdict.INFEASIBLE:
            continue
        a12, a23, a31 = row.angles
        if row.verdict is Verdict.DEGENERATE:
            pts = construct_triangle(a12, a23, a31, 1)
            out.append(
                RepClass(
                    case=CaseTag.ABELIAN if row.abelian else tag,
                    angles=row.angles,
                    points=pts,
                    abelian=row.abelian,
                    binary_dihedral=True,
                    chain=_chain_of_degenerate(row.angles),
                )
            )
            continue
        for mirror in (1, -1):
            out.append(
                RepClass(
                    case=tag,
                    angles=row.angles,
                    points=construct_triangle(a12, a23, a31, mirror),
                    abelian=False,
                    binary_dihedral=False,
                    mirror=mirror,
                )
            )
    out.sort(key=RepClass.sort_key)
    return out


def _chain_of_degenerate(angles) -> tuple[RationalAngle, ...]:
    a12, a23, a31 = angles
    # z1 = j, z2 = j e^{i a12}; z3 sits at +-a31 on the circle
    for t3 in (a31, -a31):
        if fold_to_distance(t3 - a12) == a23:
            return canonical_chain((ZERO, a12, t3))
    raise InconsistentEnumeration(f"degenerate triple {angles} has no great-circle placement")


def central_bd_chains(k: PretzelKnot, case: CentralCase) -> set[tuple[RationalAngle, ...]]:
    """Non-abelian great-circle configurations of a central case, for any n.

    z_{i+1} = z_i e^{+- i alpha_i} with alpha_i from the edge congruence; the signed
    increments must close up mod 2pi.
    """
    n = k.n
    sets = [solve_edge_congruence(p, case) for p in k.p]
    found = set()
    for alphas in itertools.product(*sets):
        if all(a.is_zero_or_pi() for a in alphas):
            continue
        for signs in itertools.product((1, -1), repeat=n):
            incs = [a if s > 0 else -a for a, s in zip(alphas, signs)]
            total = ZERO
            for x in incs:
                total = total + x
            if total != ZERO:
                continue
            found.add(canonical_chain(_chain_from_increments(incs)))
    return found


# ---------------------------------------------------------------------------
# binary dihedral classes


def beta_case_classes(k: PretzelKnot) -> list[RepClass]:
    seen = {}
    for beta, tuples in solve_beta_congruences(k.p):
        for alphas in tuples:
            chain = canonical_chain(_chain_from_increments(alphas))
            if chain not in seen:
                seen[chain] = _bd_class(CaseTag.BETA, chain, beta=beta)
    out = list(seen.values())
    out.sort(key=RepClass.sort_key)
    return out


def enumerate_binary_dihedral(k: PretzelKnot) -> list[RepClass]:
    """Non-abelian binary dihedral classes: beta case plus great-circle central-case ones."""
    out = beta_case_classes(k)
    for case in (CentralCase.PLUS_ONE, CentralCase.MINUS_ONE):
        tag = CaseTag.of(case)
        out.extend(_bd_class(tag, chain) for chain in central_bd_chains(k, case))
    out.sort(key=RepClass.sort_key)
    if is_knot(k):
        from knotrep.knot import klassen_bd_count

        if len(out) != klassen_bd_count(k):
            raise InconsistentEnumeration(
                f"{k}: {len(out)} binary dihedral classes, expected {klassen_bd_count(k)}"
            )
    return out


# ---------------------------------------------------------------------------
# full enumeration


def _assign_mirror_pairs(classes: list[RepClass]) -> list[RepClass]:
    out = []
    ids = {}
    for c in classes:
        key = (c.case, c.angles)
        if key not in ids:
            ids[key] = len(ids)
        out.append(replace(c, mirror_pair_id=ids[key]))
    return out


def enumerate_all(k: PretzelKnot, reference_tables=None) -> RepSpaceReport:
    """Every conjugacy class of R(K; i).

    Exact for three strands. For more strands the abelian and binary dihedral classes
    are still exact, but non binary dihedral classes form positive dimensional
    families and are left to ``solve_closure_numeric``; ``complete`` is then False.
    """
    abelian = enumerate_abelian(k)
    bd = enumerate_binary_dihedral(k)
    non_bd: list[RepClass] = []
    complete = k.n == 3
    if complete:
        central_bd = []
        central_ab = []
        for case in (CentralCase.PLUS_ONE, CentralCase.MINUS_ONE):
            for c in enumerate_central_case(k, case):
                if c.abelian:
                    central_ab.append(c)
                elif c.binary_dihedral:
                    central_bd.append(c)
                else:
                    non_bd.append(c)
        _check_same_classes("abelian", abelian, central_ab, k)
        _check_same_classes(
            "central binary dihedral",
            [c for c in bd if c.case is not CaseTag.BETA],
            central_bd,
            k,
        )
        non_bd.sort(key=RepClass.sort_key)
        non_bd = _assign_mirror_pairs(non_bd)

    keys = [conjugacy_key(c.points) for c in abelian + bd + non_bd]
    if len(set(keys)) != len(keys):
        raise InconsistentEnumeration(f"{k}: two enumerated classes are conjugate")

    discrepancies = []
    if reference_tables is not None and complete:
        from knotrep.report import audit_rows

        discrepancies = [r for r in audit_rows(k, reference_tables) if r["disagreement"]]
    return RepSpaceReport(k, abelian, bd, non_bd, discrepancies, complete)


def _check_same_classes(what, a: list[RepClass], b: list[RepClass], k) -> None:
    ka = sorted(conjugacy_key(c.points) for c in a)
    kb = sorted(conjugacy_key(c.points) for c in b)
    if ka != kb:
        raise InconsistentEnumeration(f"{k}: {what} classes disagree between enumeration routes")


def expected_abelian_count(k: PretzelKnot) -> int:
    return 2 ** (component_count(k) - 1)


# ---------------------------------------------------------------------------
# numeric closure for general n


def _tangent_frame(z: np.ndarray, prev: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal tangent frame at each z (rows), with e1 continuing the geodesic from prev."""
    e1 = z * np.sum(z * prev, axis=-1, keepdims=True) - prev
    norm = np.linalg.norm(e1, axis=-1, keepdims=True)
    bad = norm[..., 0] < 1e-9
    if np.any(bad):
        ref = np.where(np.abs(z[..., :1]) < 0.9, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
        alt = ref - z * np.sum(z * ref, axis=-1, keepdims=True)
        alt /= np.linalg.norm(alt, axis=-1, keepdims=True)
        e1 = np.where(bad[..., None], alt, e1 / np.where(norm > 0, norm, 1.0))
    else:
        e1 = e1 / norm
    return e1, np.cross(z, e1)


def chain_points(alphas: Sequence[float], phis: np.ndarray) -> np.ndarray:
    """Points z_1..z_n for a batch of turning angles.

    ``phis`` has shape (batch, n - 2); returns shape (batch, n, 3). z_1 = j and
    z_2 = j e^{i alpha_1}; z_{i+1} is at distance alpha_i from z_i, in the direction
    rotated by phi_i from the continuation of the previous edge.
    """
    phis = np.atleast_2d(phis)
    batch, free = phis.shape
    n = free + 2
    pts = np.zeros((batch, n, 3))
    pts[:, 0] = [0.0, 1.0, 0.0]
    pts[:, 1] = [0.0, math.cos(alphas[0]), -math.sin(alphas[0])]
    for i in range(1, n - 1):
        z, prev = pts[:, i], pts[:, i - 1]
        e1, e2 = _tangent_frame(z, prev)
        phi = phis[:, i - 1][:, None]
        a = alphas[i]
        pts[:, i + 1] = math.cos(a) * z + math.sin(a) * (np.cos(phi) * e1 + np.sin(phi) * e2)
    return pts


def _distance(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.arctan2(np.linalg.norm(np.cross(u, v), axis=-1), np.sum(u * v, axis=-1))


def solve_closure_numeric(
    angles: Sequence[RationalAngle],
    attempts: int = 1000,
    seed: int = 0,
    iterations: int = 80,
) -> list[tuple[ImVector, ...]]:
    """Random-restart Newton search for closed chains with the given edge distances.

    Returns distinct configurations (resolution 1e-4) whose closing edge is within
    1e-8 of ``angles[-1]``, ordered lexicographically by coordinates.
    """
    n = len(angles)
    if n < 3:
        raise UnsupportedStrandCount("closure search needs at least three edges")
    alphas = [a.radians for a in angles]
    target = math.cos(alphas[-1])
    rng = np.random.default_rng(seed)
    phis = rng.uniform(0.0, 2 * math.pi, size=(attempts, n - 2))
    h = 1e-7

    def residual(ph):
        pts = chain_points(alphas, ph)
        return pts[:, -1, 1] - target  # <z_n, z_1> with z_1 = j

    active = np.arange(attempts)
    checkpoint = np.full(attempts, np.inf)
    for it in range(iterations):
        ph = phis[active]
        f = residual(ph)
        # converged starts drop out of the batch, and so do starts that stopped improving
        moving = f != 0.0
        if it % 10 == 0:
            moving &= np.abs(f) < 0.5 * checkpoint[active]
            checkpoint[active] = np.abs(f)
        active, ph, f = active[moving], ph[moving], f[moving]
        if not active.size:
            break
        grad = np.empty_like(ph)
        for c in range(n - 2):
            step = np.zeros(n - 2)
            step[c] = h
            grad[:, c] = (residual(ph + step) - residual(ph - step)) / (2 * h)
        g2 = np.sum(grad * grad, axis=1)
        safe = g2 > 1e-300
        delta = np.zeros_like(ph)
        delta[safe] = (f[safe] / g2[safe])[:, None] * grad[safe]
        # keep steps bounded so the iteration stays on the torus chart
        scale = np.maximum(1.0, np.linalg.norm(delta, axis=1) / 0.5)
        phis[active] = ph - delta / scale[:, None]

    pts = chain_points(alphas, phis)
    err = np.abs(_distance(pts[:, -1], pts[:, 0]) - alphas[-1])
    good = pts[err < 1e-8].reshape(-1, 3 * n)
    kept = np.empty((0, 3 * n))
    for cfg in good:
        if not kept.size or np.min(np.max(np.abs(kept - cfg), axis=1)) > 1e-4:
            kept = np.vstack([kept, cfg])
    kept = [cfg.reshape(n, 3) for cfg in kept]
    kept.sort(key=lambda c: tuple(np.round(c.ravel(), 12)))
    return [tuple(ImVector.of(z) for z in cfg) for cfg in kept]


def family_dimension_estimate(points: Sequence[ImVector], angles: Sequence[RationalAngle]) -> int:
    """Local dimension of the configuration space mod rotations.

    Nullity of the Jacobian of the n edge constraints <z_i, z_{i+1}> = cos(alpha_i),
    on the tangent spaces of the points, minus the three rotation directions.
    """
    z = np.array([p.as_array() for p in points])
    n = len(z)
    if n != len(angles):
        raise ValueError("points and angles differ in length")
    for i in range(n):
        nxt = z[(i + 1) % n]
        if abs(abs(float(z[i] @ nxt)) - 1.0) < 1e-9:
            raise DegenerateConfiguration(f"points {i + 1} and {(i + 1) % n + 1} coincide or are antipodal")
        if abs(float(_distance(z[i], nxt)) - angles[i].radians) > 1e-8:
            raise ValueError(f"edge {i + 1} does not have the prescribed length")
    frames = []
    for i in range(n):
        ref = np.array([1.0, 0.0, 0.0]) if abs(z[i][0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        e1 = ref - z[i] * (z[i] @ ref)
        e1 /= np.linalg.norm(e1)
        frames.append((e1, np.cross(z[i], e1)))
    jac = np.zeros((n, 2 * n))
    for i in range(n):
        j = (i + 1) % n
        for c in range(2):
            jac[i, 2 * i + c] = frames[i][c] @ z[j]
            jac[i, 2 * j + c] = frames[j][c] @ z[i]
    sv = np.linalg.svd(jac, compute_uv=False)
    rank = int(np.sum(sv > 1e-6 * sv.max())) if sv.size and sv.max() > 0 else 0
    return max(2 * n - rank - 3, 0)


@dataclass(frozen=True)
class NumericSample:
    """A closed chain found numerically for an angle tuple of a central case."""

    case: CaseTag
    angles: tuple[RationalAngle, ...]
    points: tuple[ImVector, ...]
    binary_dihedral: bool
    dimension: Optional[int]


def explore_numeric(
    k: PretzelKnot, attempts: int = 1000, seed: int = 0, max_tuples: Optional[int] = None
) -> list[NumericSample]:
    """Numeric non binary dihedral samples for every central-case angle tuple.

    One sample per tuple (the first solution found off the (j, k) great circle), with
    its local family dimension. No completeness claim is made.
    """
    out = []
    for case in (CentralCase.PLUS_ONE, CentralCase.MINUS_ONE):
        sets = [solve_edge_congruence(p, case) for p in k.p]
        tuples = [t for t in itertools.product(*sets) if not all(a.is_zero_or_pi() for a in t)]
        if max_tuples is not None:
            tuples = tuples[:max_tuples]
        for t in tuples:
            sols = solve_closure_numeric(t, attempts=attempts, seed=seed)
            for pts in sols:
                if _is_binary_dihedral_points(pts, 1e-6):
                    continue
                try:
                    dim = family_dimension_estimate(pts, t)
                except DegenerateConfiguration:
                    dim = None
                out.append(NumericSample(CaseTag.of(case), tuple(t), pts, False, dim))
                break
    return out
