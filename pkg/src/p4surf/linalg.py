"""Dense linear algebra over F_p (numpy int64 rows, entries reduced mod p)."""

from __future__ import annotations

import numpy as np


def _as_matrix(rows, ncols):
    if isinstance(rows, np.ndarray):
        a = rows.astype(np.int64, copy=True)
        if a.ndim != 2:
            a = a.reshape(-1, ncols)
        return a
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def row_echelon(mat: np.ndarray, p: int):
    """In-place forward elimination; returns (matrix, pivot column list)."""
    a = mat % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[r + 1:, c]
        mask = col != 0
        if mask.any():
            a[r + 1:][mask] = (a[r + 1:][mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(rows, ncols: int, p: int) -> int:
    a = _as_matrix(rows, ncols)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    _, pivots = row_echelon(a, p)
    return len(pivots)


def rref(rows, ncols: int, p: int):
    """Reduced row echelon form; returns (matrix of nonzero rows, pivot cols)."""
    a = _as_matrix(rows, ncols)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a.reshape(0, ncols), []
    a, pivots = row_echelon(a, p)
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        col = a[:r, c]
        mask = col != 0
        if mask.any():
            a[:r][mask] = (a[:r][mask] - np.outer(col[mask], a[r])) % p
    return a[: len(pivots)], pivots


def nullspace(rows, ncols: int, p: int) -> np.ndarray:
    """Basis of the right kernel, as rows of the returned matrix."""
    a = _as_matrix(rows, ncols)
    if a.shape[1] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    r, pivots = rref(a, ncols, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(r[i, c])) % p
    return basis


def in_row_space(rows, vec, ncols: int, p: int) -> bool:
    """Is vec in the span of rows?"""
    a = _as_matrix(rows, ncols)
    base = rank(a, ncols, p)
    b = np.vstack([a, _as_matrix([vec], ncols)])
    return rank(b, ncols, p) == base


def solve_in_row_space(rows, vec, ncols: int, p: int):
    """Coefficients c with c @ rows == vec, or None."""
    a = _as_matrix(rows, ncols)
    v = np.array(vec, dtype=np.int64) % p
    n = a.shape[0]
    aug = np.hstack([a.T % p, v.reshape(-1, 1)])
    r, pivots = rref(aug, n + 1, p)
    if n in pivots:
        return None
    sol = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(pivots):
        sol[c] = r[i, n]
    return sol


class Echelon:
    """Incremental reduced row echelon form over F_p.

    ``insert`` reduces the candidate against the current basis and reports
    whether it enlarged the span; the stored matrix stays fully reduced, so
    each insert costs one matrix product plus one outer-product update.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.mat = np.zeros((0, ncols), dtype=np.int64)
        self.pivots = []  # pivot column of each stored row

    @property
    def rank(self) -> int:
        return self.mat.shape[0]

    def insert(self, row) -> bool:
        p = self.p
        row = np.asarray(row, dtype=np.int64) % p
        if self.mat.shape[0]:
            coeffs = row[self.pivots]
            if coeffs.any():
                row = (row - coeffs @ self.mat) % p
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            return False
        j = int(nz[0])
        row = (row * pow(int(row[j]), p - 2, p)) % p
        if self.mat.shape[0]:
            col = self.mat[:, j]
            if col.any():
                self.mat = (self.mat - np.outer(col, row)) % p
        self.mat = np.vstack([self.mat, row.reshape(1, -1)])
        self.pivots.append(j)
        return True
