# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over F_p.

Entries are int64 residues in [0, p).  All loops skip zero multipliers, which
dominates on the sparse structure-constant systems the library produces.
"""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef inline i64 _inv(i64 a, i64 p):
    cdef i64 r = 1, b = a % p, e = p - 2
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


def rref_mod(object matrix, long p):
    """Reduced row echelon form of ``matrix`` over F_p; returns (R, pivots)."""
    cdef cnp.ndarray[i64, ndim=2] arr = np.ascontiguousarray(np.asarray(matrix, dtype=np.int64) % p)
    cdef i64[:, ::1] a = arr
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, t
    pivots = []
    for c in range(n):
        if r >= m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        inv = _inv(a[r, c], p)
        if inv != 1:
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, n):
                if a[r, j] != 0:
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
                    if a[i, j] < 0:
                        a[i, j] += p
        pivots.append(c)
        r += 1
    return arr, pivots


def matmul_mod(object left, object right, long p):
    """Product of two residue matrices reduced mod p."""
    cdef cnp.ndarray[i64, ndim=2] x = np.ascontiguousarray(left, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=2] y = np.ascontiguousarray(right, dtype=np.int64)
    cdef i64[:, ::1] a = x
    cdef i64[:, ::1] b = y
    cdef Py_ssize_t m = a.shape[0], k = a.shape[1], n = b.shape[1]
    cdef cnp.ndarray[i64, ndim=2] out = np.zeros((m, n), dtype=np.int64)
    cdef i64[:, ::1] o = out
    cdef Py_ssize_t i, j, l
    cdef i64 f
    if b.shape[0] != k:
        raise ValueError("shape mismatch")
    for i in range(m):
        for l in range(k):
            f = a[i, l]
            if f == 0:
                continue
            for j in range(n):
                o[i, j] += f * b[l, j]
        for j in range(n):
            o[i, j] %= p
    return out
