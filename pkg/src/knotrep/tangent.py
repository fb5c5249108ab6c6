"""Zariski tangent spaces H^1(G(K)_{m,i}; su(2)_rho) from the quotient presentation.

A cocycle is determined by its values on the generators, and its value on any word
is linear in them; stacking the relator values gives a matrix whose kernel is Z^1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from knotrep.errors import RankAmbiguous, UnknownGenerator
from knotrep.knot import GroupKind, PretzelKnot, Word, emit_presentation
from knotrep.quat import ONE, Quaternion, adjoint_matrix, qmul, rotation_matrix
from knotrep.reps import RepClass

ZERO_SV = 1e-8
MIN_GAP = 1e3


def word_cocycle_coefficients(word: Word, images: Sequence[Quaternion]) -> list[np.ndarray]:
    """Matrices M_g with ``xi(word) = sum_g M_g xi(s_g)`` for every cocycle xi.

    Uses ``xi(P x) = xi(P) + Ad_P xi(x)`` and ``xi(s^{-1}) = -Ad_{s^{-1}} xi(s)``.
    """
    n = len(images)
    mats = [np.zeros((3, 3)) for _ in range(n)]
    prefix = ONE
    for letter in word:
        g = abs(letter) - 1
        if letter == 0 or g >= n:
            raise UnknownGenerator(letter)
        q = images[g]
        if letter > 0:
            mats[g] += rotation_matrix(prefix)
            prefix = qmul(prefix, q)
        else:
            prefix = qmul(prefix, q.conj())
            mats[g] -= rotation_matrix(prefix)
    return mats


def _images(rep) -> tuple[Quaternion, ...]:
    if isinstance(rep, RepClass):
        return rep.quaternions
    return tuple(q if isinstance(q, Quaternion) else q.as_quaternion() for q in rep)


def constraint_matrix(rep, k: PretzelKnot) -> np.ndarray:
    """Rows: three per relator of the quotient presentation. Columns: xi(s_1), ..., xi(s_n)."""
    images = _images(rep)
    pres = emit_presentation(k, GroupKind.QUOTIENT_GROUP)
    blocks = [np.hstack(word_cocycle_coefficients(r, images)) for r in pres.relators]
    return np.vstack(blocks)


def coboundary_matrix(rep) -> np.ndarray:
    """The map zeta -> ((1 - Ad_{rho(s_i)}) zeta)_i, as a (3n x 3) matrix."""
    images = _images(rep)
    return np.vstack([np.eye(3) - adjoint_matrix(q) for q in images])


@dataclass(frozen=True)
class RankInfo:
    rank: int
    nullity: int
    singular_values: tuple[float, ...]
    min_nonzero: float
    gap: float


def guarded_rank(mat: np.ndarray, rel_tol: float = ZERO_SV, min_gap: float = MIN_GAP) -> RankInfo:
    """Numerical rank with a spectral gap check around ``rel_tol * s_max``."""
    sv = np.linalg.svd(mat, compute_uv=False)
    cols = mat.shape[1]
    smax = float(sv.max()) if sv.size else 0.0
    if smax == 0.0:
        return RankInfo(0, cols, tuple(sv), 0.0, float("inf"))
    thr = rel_tol * smax
    big = sv[sv > thr]
    small = sv[sv <= thr]
    min_nonzero = float(big.min())
    if small.size:
        gap = min_nonzero / max(float(small.max()), np.finfo(float).tiny)
    else:
        gap = min_nonzero / thr
    if gap < min_gap:
        raise RankAmbiguous(f"spectral gap {gap:.3g} below {min_gap:g} (singular values {sv})")
    rank = int(big.size)
    return RankInfo(rank, cols - rank, tuple(float(s) for s in sv), min_nonzero, float(gap))


@dataclass(frozen=True)
class CocycleSystem:
    constraint_matrix: np.ndarray
    z1_dim: int
    b1_dim: int
    h1_dim: int
    min_nonzero_sv: float
    gap: float

    @property
    def unknowns(self) -> int:
        return self.constraint_matrix.shape[1]


def cocycle_system(rep, k: PretzelKnot) -> CocycleSystem:
    mat = constraint_matrix(rep, k)
    z = guarded_rank(mat)
    b = coboundary_space_dim(rep)
    return CocycleSystem(mat, z.nullity, b, z.nullity - b, z.min_nonzero, z.gap)


def cocycle_space_dim(rep, k: PretzelKnot) -> int:
    return guarded_rank(constraint_matrix(rep, k)).nullity


def coboundary_space_dim(rep) -> int:
    return guarded_rank(coboundary_matrix(rep)).rank


def h1_dim(rep, k: PretzelKnot) -> int:
    return cocycle_space_dim(rep, k) - coboundary_space_dim(rep)


def b_operator(rep, i: int, p: int) -> np.ndarray:
    """``sum_{m=0}^{p-1} Ad^m`` of rho(s_i s_{i+1}) (0-based i, indices mod n)."""
    images = _images(rep)
    n = len(images)
    ad = adjoint_matrix(qmul(images[i], images[(i + 1) % n]))
    out = np.zeros((3, 3))
    power = np.eye(3)
    for _ in range(p):
        out += power
        power = ad @ power
    return out


def tangent_rows(classes: Sequence[RepClass], k: PretzelKnot) -> list[dict]:
    rows = []
    for idx, c in enumerate(classes):
        system = cocycle_system(c, k)
        rows.append({
            "class_id": idx,
            "label": c.label(),
            "z1_dim": system.z1_dim,
            "b1_dim": system.b1_dim,
            "h1_dim": system.h1_dim,
            "min_nonzero_sv": system.min_nonzero_sv,
        })
    return rows
