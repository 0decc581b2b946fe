"""Exact dense linear algebra over a prime field F_p.

Matrices are ``numpy.int64`` arrays holding residues in ``[0, p)``.  Row
reduction is delegated to the compiled kernel when it is importable (set
``T2STABLE_PURE=1`` to force the numpy fallback).  Pivoting is always the
leftmost nonzero entry, so every "pick a solution" below is reproducible.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _kernels_py

if os.environ.get("T2STABLE_PURE"):
    _backend = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _backend  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _backend = _kernels_py
        BACKEND = "python"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)


def as_matrix(data, p: int, shape=None) -> np.ndarray:
    m = np.asarray(data, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    return m % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return _backend.matmul_mod(a, b, p)


def mul(p: int, *mats: np.ndarray) -> np.ndarray:
    """Product of a chain of matrices mod p (left to right)."""
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m, p)
    return out


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return m.reshape(m.shape) % p, []
    r, piv = _backend.rref_mod(m, p)
    return np.asarray(r, dtype=np.int64), list(piv)


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def solve_linear(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some x with a @ x = b, or None.

    Free variables are set to zero, so the answer is the pivot-variable
    solution of the reduced system.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(a.shape[0], 1)
    x = solve_matrix(a, b, p)
    if x is None:
        return None
    return x[:, 0]


def solve_matrix(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some X with a @ X = b (all columns at once), or None."""
    rows, cols = a.shape
    k = b.shape[1]
    if rows == 0:
        return np.zeros((cols, k), dtype=np.int64) if not np.any(b % p) else None
    aug = np.concatenate([a % p, b % p], axis=1)
    r, piv = rref(aug, p)
    if any(c >= cols for c in piv):
        return None
    x = np.zeros((cols, k), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, cols:]
    return x


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning {x : a @ x = 0}; one column per free variable."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    if rows == 0:
        return identity(cols)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, c in enumerate(piv):
            basis[c, j] = (-r[i, f]) % p
    return basis


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """The pivot columns of ``a``: a basis of its column space made of its own columns."""
    a = np.asarray(a, dtype=np.int64)
    if a.shape[1] == 0:
        return a.reshape(a.shape[0], 0)
    _, piv = rref(a, p)
    return a[:, piv] % p


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("not square")
    x = solve_matrix(a, identity(n), p)
    if x is None or rank(a, p) < n:
        raise ValueError("matrix is singular")
    return x


def is_invertible(a: np.ndarray, p: int) -> bool:
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def power_stable(a: np.ndarray, p: int) -> np.ndarray:
    """a^(2^k) for 2^k >= size; its image and kernel give the Fitting splitting."""
    n = a.shape[0]
    out = a % p
    k = 1
    while k < n:
        out = matmul(out, out, p)
        k *= 2
    return out


class Span:
    """Incrementally grown subspace of F_p^n with a reduced basis.

    Used for greedy "take the leftmost vector not yet in the span" choices.
    """

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        """Add v; return True iff the dimension grew."""
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), self.p - 2, self.p)) % self.p
        for i, row in enumerate(self.rows):
            if row[c]:
                self.rows[i] = (row - row[c] * v) % self.p
        self.rows.append(v)
        self.pivots.append(c)
        return True

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce(v))

    @property
    def dim(self) -> int:
        return len(self.rows)
