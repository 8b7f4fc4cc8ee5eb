"""Rank and nullspace over Fractions (exact) or complex numbers (via SVD)."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from .scalars import Scalar, is_exact


def _all_exact(rows: Sequence[Sequence[Scalar]]) -> bool:
    return all(is_exact(v) for row in rows for v in row)


def row_reduce(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form over Q; zero rows dropped."""
    m = [[Fraction(v) for v in row] for row in rows]
    out: list[list[Fraction]] = []
    ncols = len(m[0]) if m else 0
    col = 0
    while m and col < ncols:
        pivot = next((r for r in m if r[col] != 0), None)
        if pivot is None:
            col += 1
            continue
        m.remove(pivot)
        pivot = [v / pivot[col] for v in pivot]
        m = [[a - r[col] * b for a, b in zip(r, pivot)] for r in m]
        out = [[a - r[col] * b for a, b in zip(r, pivot)] for r in out]
        out.append(pivot)
        col += 1
    return out


def rank(rows: Sequence[Sequence[Scalar]], tol: float = 1e-9) -> int:
    if not rows:
        return 0
    if _all_exact(rows):
        return len(row_reduce(rows))
    s = np.linalg.svd(np.array(rows, dtype=complex), compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def singular_values(rows: Sequence[Sequence[Scalar]]) -> np.ndarray:
    s = np.linalg.svd(np.array(rows, dtype=complex), compute_uv=False)
    return s / s[0] if s[0] else s


def nullspace(rows: Sequence[Sequence[Scalar]], tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (as rows) of the numerical kernel, relative tolerance ``tol``."""
    A = np.array(rows, dtype=complex)
    _, s, vh = np.linalg.svd(A)
    cutoff = tol * (s[0] if len(s) else 1.0)
    r = int(np.sum(s > cutoff))
    return vh[r:].conj()


def exact_nullspace(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    red = row_reduce(rows)
    ncols = len(rows[0])
    pivots = []
    for r in red:
        pivots.append(next(i for i, v in enumerate(r) if v != 0))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


def solve_2x2(a11: Scalar, a12: Scalar, a21: Scalar, a22: Scalar, b1: Scalar, b2: Scalar) -> tuple[Scalar, Scalar] | None:
    det = a11 * a22 - a12 * a21
    if det == 0:
        return None
    return ((b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det)
