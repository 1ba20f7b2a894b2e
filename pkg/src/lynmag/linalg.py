"""Small dense linear algebra over F_p.

Matrices are numpy int64 arrays with entries reduced mod p; sizes here
are tiny (tens of rows), so clarity wins over vectorization tricks.
Pivots are always chosen left to right, which makes every reduced form
canonical given the row set.
"""

from __future__ import annotations

import numpy as np


def rref_mod_p(matrix: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form over F_p.

    Returns (rref rows without zero rows, pivot column indices).
    """
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a[: len(pivots)], tuple(pivots)


def inverse_mod_p(matrix: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p; raises on singular input."""
    a = np.array(matrix, dtype=np.int64) % p
    d = a.shape[0]
    if a.shape != (d, d):
        raise ValueError("matrix must be square")
    aug = np.concatenate([a, np.eye(d, dtype=np.int64)], axis=1)
    rref, pivots = rref_mod_p(aug, p)
    if pivots[:d] != tuple(range(d)):
        raise ValueError("matrix is singular mod p")
    return rref[:, d:]


def solve_mod_p(matrix: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray:
    """The unique solution of A x = b over F_p.

    Raises if the system is inconsistent or underdetermined; callers here
    rely on uniqueness as a mathematical claim, so anything else is an
    error worth surfacing.
    """
    a = np.array(matrix, dtype=np.int64) % p
    b = np.array(rhs, dtype=np.int64).reshape(-1, 1) % p
    rows, cols = a.shape
    aug = np.concatenate([a, b], axis=1)
    rref, pivots = rref_mod_p(aug, p)
    if cols in pivots:
        raise ValueError("inconsistent linear system mod p")
    if len(pivots) < cols:
        raise ValueError("underdetermined linear system mod p")
    x = np.zeros(cols, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = rref[row, cols]
    return x
