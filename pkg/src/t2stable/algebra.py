"""Finite-dimensional algebras over F_p given by structure constants.

Paths compose like functions: the product ``a*b`` means "first b, then a",
and the indecomposable projective ``e_v A`` is spanned by the paths ending
at ``v``.  A basis element is stored as a word in the algebra generators so
modules can be specified by generator actions only.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import BoundTooSmall, NonAdmissibleRelations


@dataclass
class QuiverPresentation:
    """Quiver with relations over F_p.

    Attributes:
        p: prime modulus.
        vertices: vertex names.
        arrows: ``(name, source, target)`` triples.
        relations: each relation is a list of ``(coeff, path)`` pairs, a path
            being a list of arrow names in product order.
        nilpotency_bound: every path of this length must vanish.
    """

    p: int
    vertices: list
    arrows: list
    relations: list = field(default_factory=list)
    nilpotency_bound: int = 2


class Exceeded:
    """Result marker for a resolution that did not terminate within the cap."""

    def __repr__(self):
        return "Exceeded"

    def __eq__(self, other):
        return isinstance(other, Exceeded)

    def __hash__(self):
        return hash("Exceeded")


EXCEEDED = Exceeded()


class Algebra:
    """Associative unital algebra with a basis of "vertex-homogeneous" elements.

    ``table[i, j]`` holds the coordinates of ``b_i * b_j``.  Each basis element
    satisfies ``e_s b e_t = b`` for a unique pair of primitive idempotents,
    recorded in ``left_vertex`` / ``right_vertex``.
    """

    def __init__(self, p, labels, table, idempotents, radical, gens, words,
                 vertex_names=None, name=None, check=True):
        self.p = int(p)
        self.labels = list(labels)
        self.table = np.asarray(table, dtype=np.int64) % self.p
        self.idempotents = list(idempotents)
        self.radical = list(radical)
        self.gens = list(gens)
        self.words = [tuple(w) for w in words]
        self.vertex_names = list(vertex_names) if vertex_names else [str(i) for i in range(len(idempotents))]
        self.name = name
        self._opposite = None
        self._t2 = None
        self.base = None
        d = self.dim
        self.unit = np.zeros(d, dtype=np.int64)
        for e in self.idempotents:
            self.unit[e] = (self.unit[e] + 1) % self.p
        self.left_vertex = [self._vertex_of(k, left=True) for k in range(d)]
        self.right_vertex = [self._vertex_of(k, left=False) for k in range(d)]
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n_vertices(self) -> int:
        return len(self.idempotents)

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, p={self.p})"

    def _vertex_of(self, k, left):
        for v, e in enumerate(self.idempotents):
            prod = self.table[e, k] if left else self.table[k, e]
            if prod[k] == 1 and np.count_nonzero(prod) == 1:
                return v
        raise ValueError(f"basis element {self.labels[k]} is not vertex-homogeneous")

    def mult(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two coordinate vectors."""
        return np.einsum("i,j,ijk->k", x, y, self.table) % self.p

    def basis_vector(self, k: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[k] = 1
        return v

    def left_mult(self, k: int) -> np.ndarray:
        """Matrix of ``y -> b_k y`` on coordinate columns."""
        return self.table[k].T.copy()

    def right_mult(self, k: int) -> np.ndarray:
        """Matrix of ``y -> y b_k`` on coordinate columns."""
        return self.table[:, k, :].T.copy()

    def vertex_basis(self, v: int) -> list[int]:
        """Indices spanning ``e_v A``."""
        return [k for k in range(self.dim) if self.left_vertex[k] == v]

    def validate(self):
        p, t, d = self.p, self.table, self.dim
        lhs = np.einsum("ijk,klm->ijlm", t, t) % p
        rhs = np.einsum("jlk,ikm->ijlm", t, t) % p
        if not np.array_equal(lhs, rhs):
            raise ValueError("structure constants are not associative")
        u = self.unit
        for k in range(d):
            e = self.basis_vector(k)
            if not (np.array_equal(self.mult(u, e), e) and np.array_equal(self.mult(e, u), e)):
                raise ValueError("unit does not act as identity")
        for a, b in itertools.product(range(self.n_vertices), repeat=2):
            ea, eb = self.idempotents[a], self.idempotents[b]
            expect = self.basis_vector(ea) if a == b else np.zeros(d, dtype=np.int64)
            if not np.array_equal(t[ea, eb], expect):
                raise ValueError("idempotents are not orthogonal")
        # radical span must be nilpotent
        span = [self.basis_vector(r) for r in self.radical]
        for _ in range(d + 1):
            if not span:
                break
            prods = [self.mult(x, self.basis_vector(r)) for x in span for r in self.radical]
            mat = np.array(prods, dtype=np.int64).T if prods else la.zeros(d, 0)
            span = list(la.column_basis(mat, p).T) if mat.size else []
        if span:
            raise ValueError("radical is not nilpotent")


def _path_key(path, arrow_info):
    """(target, source) of a product-order path of arrow names."""
    return arrow_info[path[0]][1], arrow_info[path[-1]][0]


def _paths_by_length(pres, bound):
    """All composable paths up to ``bound``, as tuples in product order."""
    info = {a: (s, t) for a, s, t in pres.arrows}
    out = {0: [(v, v, ()) for v in pres.vertices]}
    out[1] = [(t, s, (a,)) for a, s, t in pres.arrows]
    for length in range(2, bound + 1):
        nxt = []
        for tgt, src, w in out[length - 1]:
            # extend on the right: w * a needs src(w) == tgt(a)
            for a, s, t in pres.arrows:
                if t == src:
                    nxt.append((tgt, s, w + (a,)))
        out[length] = nxt
    return out, info


def build_algebra(pres: QuiverPresentation, name=None) -> Algebra:
    """Basis and multiplication table of ``kQ / (relations + paths of length N)``."""
    p, bound = pres.p, pres.nilpotency_bound
    la.FieldSpec(p)
    if bound < 2:
        raise NonAdmissibleRelations("nilpotency bound must be at least 2")
    by_len, info = _paths_by_length(pres, bound)
    for rel in pres.relations:
        for coeff, path in rel:
            if len(path) < 2:
                raise NonAdmissibleRelations(f"relation term {path} has length < 2")
            for a in path:
                if a not in info:
                    raise NonAdmissibleRelations(f"unknown arrow {a}")
            for x, y in zip(path, path[1:]):
                if info[x][0] != info[y][1]:
                    raise NonAdmissibleRelations(f"path {path} is not composable")
    # columns ordered longest first so pivots land on long paths
    ordered = [q for length in range(bound, -1, -1) for q in by_len[length]]
    col = {q: i for i, q in enumerate(ordered)}
    all_paths = [q for length in range(bound + 1) for q in by_len[length]]

    def concat(x, y):
        if x[1] != y[0]:
            return None
        if not x[2]:
            return y
        if not y[2]:
            return x
        return (x[0], y[1], x[2] + y[2])

    rows = []
    for rel in pres.relations:
        terms = []
        for coeff, path in rel:
            tgt, src = _path_key(path, info)
            terms.append((coeff, (tgt, src, tuple(path))))
        for u in all_paths:
            for v in all_paths:
                row = np.zeros(len(ordered), dtype=np.int64)
                for coeff, r in terms:
                    q = concat(u, r)
                    q = concat(q, v) if q is not None else None
                    if q is not None and len(q[2]) <= bound:
                        row[col[q]] = (row[col[q]] + coeff) % p
                if row.any():
                    rows.append(row)
    ideal = np.array(rows, dtype=np.int64) if rows else la.zeros(0, len(ordered))
    red, piv = la.rref(ideal, p)
    pivset = set(piv)
    for q in by_len[bound]:
        if col[q] not in pivset:
            raise BoundTooSmall(f"path {'*'.join(q[2])} of length {bound} survives")
    basis = [q for length in range(bound) for q in by_len[length] if col[q] not in pivset]
    bidx = {q: i for i, q in enumerate(basis)}
    piv_row = {c: i for i, c in enumerate(piv)}

    def reduce(q):
        out = np.zeros(len(basis), dtype=np.int64)
        if q is None or len(q[2]) > bound:
            return out
        c = col[q]
        if c in piv_row:
            r = red[piv_row[c]]
            for c2 in np.nonzero(r)[0]:
                if c2 != c:
                    out[bidx[ordered[c2]]] = (out[bidx[ordered[c2]]] - r[c2]) % p
        else:
            out[bidx[q]] = 1
        return out

    d = len(basis)
    table = np.zeros((d, d, d), dtype=np.int64)
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            table[i, j] = reduce(concat(x, y))
    idem = [bidx[(v, v, ())] for v in pres.vertices]
    gens = idem + [bidx[(t, s, (a,))] for a, s, t in pres.arrows]
    words = []
    for q in basis:
        if q[2]:
            words.append(tuple(bidx[(info[a][1], info[a][0], (a,))] for a in q[2]))
        else:
            words.append((bidx[q],))
    labels = [("e" + str(q[0])) if not q[2] else "*".join(q[2]) for q in basis]
    radical = [i for i, q in enumerate(basis) if q[2]]
    return Algebra(p, labels, table, idem, radical, gens, words,
                   vertex_names=[str(v) for v in pres.vertices], name=name)


def opposite_algebra(A: Algebra) -> Algebra:
    """Same basis with ``b_i *op b_j = b_j * b_i``; ``opposite(opposite(A)) is A``."""
    if A._opposite is None:
        op = Algebra(A.p, A.labels, A.table.transpose(1, 0, 2), A.idempotents, A.radical,
                     A.gens, [tuple(reversed(w)) for w in A.words],
                     vertex_names=A.vertex_names,
                     name=(A.name + "^op") if A.name else None, check=False)
        op._opposite = A
        A._opposite = op
    return A._opposite


def triangular2(A: Algebra) -> Algebra:
    """Upper triangular 2x2 matrices over A.

    Basis slots: ``E11 (x) b`` at ``0..d-1``, ``E12 (x) b`` at ``d..2d-1`` and
    ``E22 (x) b`` at ``2d..3d-1``.
    """
    if A._t2 is not None:
        return A._t2
    d, p = A.dim, A.p
    slot = {(1, 1): 0, (1, 2): d, (2, 2): 2 * d}
    table = np.zeros((3 * d, 3 * d, 3 * d), dtype=np.int64)
    for (i, j), si in slot.items():
        for (k, l), sk in slot.items():
            if j != k:
                continue
            so = slot[(i, l)]
            table[si:si + d, sk:sk + d, so:so + d] = A.table
    idem = [e for e in A.idempotents] + [2 * d + e for e in A.idempotents]
    radical = list(A.radical) + list(range(d, 2 * d)) + [2 * d + r for r in A.radical]
    e12 = [d + e for e in A.idempotents]
    gens = [g for g in A.gens] + [2 * d + g for g in A.gens] + e12
    words = [tuple(w) for w in A.words]
    words += [(d + A.idempotents[A.left_vertex[k]],) + tuple(2 * d + g for g in A.words[k])
              for k in range(d)]
    words += [tuple(2 * d + g for g in w) for w in A.words]
    labels = [f"E11({x})" for x in A.labels] + [f"E12({x})" for x in A.labels] + \
        [f"E22({x})" for x in A.labels]
    names = [f"1.{v}" for v in A.vertex_names] + [f"2.{v}" for v in A.vertex_names]
    T = Algebra(p, labels, table, idem, radical, gens, words, vertex_names=names,
                name=f"T2({A.name})" if A.name else None)
    T.base = A
    A._t2 = T
    return T


def injective_dimension(A: Algebra, side: str = "right", cap: int = 64):
    """Injective dimension of the regular module on one side, or ``EXCEEDED``.

    Computed as the projective dimension of the vector-space dual of the
    regular module, which lives over the opposite algebra.
    """
    from .modules import projective_dimension, regular_module, vector_dual

    if cap < 1:
        raise ValueError("cap must be >= 1")
    base = A if side == "right" else opposite_algebra(A)
    return projective_dimension(vector_dual(regular_module(base)), cap)


def is_iwanaga_gorenstein(A: Algebra, cap: int = 64):
    """``(True, d)`` when both one-sided injective dimensions are finite within ``cap``."""
    r = injective_dimension(A, "right", cap)
    l_ = injective_dimension(A, "left", cap)
    if r == EXCEEDED or l_ == EXCEEDED:
        return False, None
    return True, max(r, l_)
