"""Exact linear algebra over prime fields, on top of numpy int64.

All entries stay far below the int64 overflow line: matrices are
reduced mod p after every elimination step and p here is a small
prime.
"""

from __future__ import annotations

import numpy as np


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("expected a two-dimensional array")
    return m


def rref_mod(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    m = _as_matrix(a) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        # every row is zero left of c by now, so updates stay in m[:, c:]
        m[r, c:] = m[r, c:] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        if np.any(col):
            m[:, c:] = (m[:, c:] - np.outer(col, m[r, c:])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def echelon_mod(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Forward row echelon form over F_p (no back-substitution); returns
    (matrix, pivot columns) with normalized pivot rows on top."""
    m = _as_matrix(a) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r, c:] = m[r, c:] * inv % p
        below = m[r + 1 :, c].copy()
        if np.any(below):
            m[r + 1 :, c:] = (m[r + 1 :, c:] - np.outer(below, m[r, c:])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod(a, p: int) -> int:
    m = _as_matrix(a)
    if m.size == 0:
        return 0
    return len(rref_mod(m, p)[1])


def nullspace_mod(a, p: int) -> np.ndarray:
    """Basis of the right kernel, one vector per row."""
    m = _as_matrix(a)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0 or m.size == 0:
        return np.eye(cols, dtype=np.int64)
    red, pivots = rref_mod(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(red[i, fc])) % p
    return basis
