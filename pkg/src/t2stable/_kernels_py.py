"""Numpy fallback for the compiled kernels in ``_kernels.pyx``.

Same signatures and results; used when the extension is not built or when
``T2STABLE_PURE=1`` is set.
"""
import numpy as np


def rref_mod(matrix, p):
    a = np.array(matrix, dtype=np.int64) % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(col[rows], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def matmul_mod(left, right, p):
    return (np.asarray(left, dtype=np.int64) @ np.asarray(right, dtype=np.int64)) % p
