"""Right modules over an :class:`~t2stable.algebra.Algebra` and their maps.

A module of dimension ``n`` stores one ``n x n`` matrix per algebra basis
element acting on column vectors: ``act[b] @ v`` is ``v * b``.  Hence
``act[i] @ act[j]`` represents ``b_j * b_i``.  A map ``M -> N`` is an
``N.dim x M.dim`` matrix ``F`` with ``F @ act_M[b] == act_N[b] @ F``.

Modules are immutable by convention; covers, cosyzygies and decompositions
are cached on the instance, so repeated constructions return the very same
objects.  Downstream code relies on that identity when it glues tails.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .algebra import EXCEEDED, Algebra, opposite_algebra
from .errors import AlgebraMismatch, FieldTooSmallForSplit, NotAModuleMap

SPLIT_BUDGET = 2**16


class Module:
    """Finite-dimensional right module given by action matrices.

    Args:
        algebra: the acting algebra.
        act: array of shape ``(algebra.dim, n, n)``.
        tag: for the standard free modules, the tuple of vertices ``v`` with
            the module equal to ``(+) e_v A`` in that order.
        name: optional display name.
    """

    def __init__(self, algebra: Algebra, act, tag=None, name=None, check=False):
        self.algebra = algebra
        self.act = np.asarray(act, dtype=np.int64) % algebra.p
        if self.act.ndim != 3 or self.act.shape[0] != algebra.dim:
            raise ValueError("action must have shape (dim A, n, n)")
        self.tag = tuple(tag) if tag is not None else None
        self.name = name
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return self.act.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def __repr__(self):
        label = self.name or ("P" + str(list(self.tag)) if self.tag is not None else "M")
        return f"<{label} dim={self.dim}>"

    def validate(self):
        A, p, n = self.algebra, self.p, self.dim
        if not np.array_equal(np.einsum("k,kij->ij", A.unit, self.act) % p, la.identity(n)):
            raise ValueError("unit does not act as the identity")
        lhs = np.einsum("iab,jbc->ijac", self.act, self.act) % p
        rhs = np.einsum("jik,kac->ijac", A.table, self.act) % p
        if not np.array_equal(lhs, rhs):
            raise ValueError("action is not multiplicative")

    @classmethod
    def from_generators(cls, algebra: Algebra, gen_actions: dict, name=None):
        """Build a module from the actions of the algebra generators and validate it."""
        n = None
        for m in gen_actions.values():
            n = np.asarray(m).shape[0]
        if n is None:
            n = 0
        mats = {g: np.asarray(gen_actions[g], dtype=np.int64).reshape(n, n) % algebra.p
                for g in algebra.gens if g in gen_actions}
        for g in algebra.gens:
            if g not in mats:
                raise ValueError(f"missing action of generator {algebra.labels[g]}")
        act = np.zeros((algebra.dim, n, n), dtype=np.int64)
        for k, word in enumerate(algebra.words):
            m = la.identity(n)
            for g in word:
                m = la.matmul(mats[g], m, algebra.p)
            act[k] = m
        return cls(algebra, act, name=name, check=True)

    # cached structure -------------------------------------------------
    @cached_property
    def cover(self) -> "Cover":
        return _projective_cover(self)

    @cached_property
    def syzygy_inclusion(self):
        """``(Omega M, inclusion into P(M))``."""
        c = self.cover
        K = submodule(c.P, c.kernel)
        return K, c.kernel

    @cached_property
    def decomposition(self) -> list:
        return _decompose(self)

    @cached_property
    def dimension_vector(self) -> tuple:
        return tuple(la.rank(self.act[e], self.p) for e in self.algebra.idempotents)


@dataclass(eq=False)
class ModuleMap:
    """A module homomorphism; ``matrix`` has shape ``target.dim x source.dim``."""

    source: Module
    target: Module
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64).reshape(
            self.target.dim, self.source.dim) % self.source.p

    def check(self):
        if not is_module_map(self.source, self.target, self.matrix):
            raise NotAModuleMap("matrix does not intertwine the actions")
        return self

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        return ModuleMap(other.source, self.target,
                         la.matmul(self.matrix, other.matrix, self.source.p))


@dataclass(eq=False)
class Cover:
    """Projective cover data for a module ``M``.

    Attributes:
        P: the free module ``(+) e_v A`` with ``P.tag`` listing the ``v``.
        epi: ``M.dim x P.dim`` surjection.
        generators: ``(vertex, vector)`` pairs; ``vector`` lies in ``M e_v``.
        kernel: columns spanning ``ker(epi)`` inside ``P``.
        section: linear (not module) right inverse of ``epi``.
    """

    P: Module
    epi: np.ndarray
    generators: list
    kernel: np.ndarray
    section: np.ndarray


def _same_algebra(*mods):
    a = mods[0].algebra
    for m in mods[1:]:
        if m.algebra is not a:
            raise AlgebraMismatch("modules live over different algebras")


def is_module_map(M: Module, N: Module, F: np.ndarray) -> bool:
    _same_algebra(M, N)
    p = M.p
    lhs = np.einsum("ab,kbc->kac", F, M.act) % p
    rhs = np.einsum("kab,bc->kac", N.act, F) % p
    return np.array_equal(lhs, rhs)


# constructors -----------------------------------------------------------

def _cache(A: Algebra) -> dict:
    if not hasattr(A, "_module_cache"):
        A._module_cache = {}
    return A._module_cache


def zero_module(A: Algebra) -> Module:
    c = _cache(A)
    if "zero" not in c:
        c["zero"] = Module(A, np.zeros((A.dim, 0, 0), dtype=np.int64), tag=(), name="0")
    return c["zero"]


def free_module(A: Algebra, vertices) -> Module:
    """``(+) e_v A`` over the given vertex sequence (cached per algebra)."""
    vertices = tuple(int(v) for v in vertices)
    if not vertices:
        return zero_module(A)
    c = _cache(A)
    key = ("free", vertices)
    if key in c:
        return c[key]
    blocks = [A.vertex_basis(v) for v in vertices]
    n = sum(len(b) for b in blocks)
    act = np.zeros((A.dim, n, n), dtype=np.int64)
    off = 0
    for b in blocks:
        sub = A.table[np.ix_(b, range(A.dim), b)]  # [src, j, dst]
        act[:, off:off + len(b), off:off + len(b)] = sub.transpose(1, 2, 0)
        off += len(b)
    name = "+".join(f"P{A.vertex_names[v]}" for v in vertices) if vertices else "0"
    M = Module(A, act, tag=vertices, name=name)
    c[key] = M
    return M


def indecomposable_projective(A: Algebra, v: int) -> Module:
    return free_module(A, (v,))


def regular_module(A: Algebra) -> Module:
    """``A_A`` in its own basis (not a tagged free module)."""
    c = _cache(A)
    if "regular" not in c:
        act = np.stack([A.right_mult(k) for k in range(A.dim)])
        c["regular"] = Module(A, act, name="A")
    return c["regular"]


def simple_module(A: Algebra, v: int) -> Module:
    act = np.zeros((A.dim, 1, 1), dtype=np.int64)
    act[A.idempotents[v], 0, 0] = 1
    return Module(A, act, name=f"S{A.vertex_names[v]}")


def truncated_projectives(A: Algebra) -> list:
    """All proper quotients ``e_v A / e_v A J^l`` with ``l >= 1``."""
    out = []
    for v in range(A.n_vertices):
        P = indecomposable_projective(A, v)
        length = 1
        while True:
            Q = truncated_projective(A, v, length)
            if Q.dim == P.dim:
                break
            out.append(Q)
            length += 1
    return out


def radical_span(M: Module) -> np.ndarray:
    """Columns spanning ``M * rad A``."""
    if not M.algebra.radical or M.dim == 0:
        return la.zeros(M.dim, 0)
    mat = np.concatenate([M.act[r] for r in M.algebra.radical], axis=1)
    return la.column_basis(mat, M.p)


def truncated_projective(A: Algebra, v: int, length: int) -> Module:
    """``e_v A / e_v A J^length``."""
    P = indecomposable_projective(A, v)
    span = la.identity(P.dim)
    for _ in range(length):
        if span.shape[1] == 0:
            break
        mats = [la.matmul(P.act[r], span, A.p) for r in A.radical]
        span = la.column_basis(np.concatenate(mats, axis=1), A.p) if mats else la.zeros(P.dim, 0)
    Q, _, _ = quotient(P, span)
    Q.name = f"P{A.vertex_names[v]}/J^{length}"
    return Q


def direct_sum(*mods: Module):
    """Return ``(S, inclusions, projections)``; free modules stay tagged."""
    A = mods[0].algebra
    _same_algebra(*mods)
    n = sum(m.dim for m in mods)
    act = np.zeros((A.dim, n, n), dtype=np.int64)
    incs, projs = [], []
    off = 0
    for m in mods:
        act[:, off:off + m.dim, off:off + m.dim] = m.act
        inc = la.zeros(n, m.dim)
        inc[off:off + m.dim] = la.identity(m.dim)
        incs.append(inc)
        projs.append(inc.T.copy())
        off += m.dim
    if all(m.tag is not None for m in mods):
        S = free_module(A, tuple(v for m in mods for v in m.tag))
    else:
        S = Module(A, act, name="(+)".join(m.name or "M" for m in mods))
    return S, incs, projs


def submodule(M: Module, basis: np.ndarray) -> Module:
    """Submodule spanned by the (independent, invariant) columns ``basis``."""
    basis = np.asarray(basis, dtype=np.int64)
    if basis.size == 0 or M.dim == 0:
        return zero_module(M.algebra)
    basis = basis.reshape(M.dim, -1)
    s, d, p = basis.shape[1], M.algebra.dim, M.p
    rhs = np.einsum("kab,bc->akc", M.act, basis).reshape(M.dim, d * s) % p
    sol = la.solve_matrix(basis, rhs, p)
    if sol is None:
        raise ValueError("span is not a submodule")
    act = sol.reshape(s, d, s).transpose(1, 0, 2)
    return Module(M.algebra, act)


def complement_basis(basis: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing ``basis`` to a basis of F_p^n."""
    span = la.Span(n, p)
    for v in basis.T:
        span.add(v)
    cols = []
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        if span.add(e):
            cols.append(i)
    out = la.zeros(n, len(cols))
    for j, i in enumerate(cols):
        out[i, j] = 1
    return out


def quotient(M: Module, basis: np.ndarray):
    """``(M / span(basis), projection, section)``; ``basis`` must span a submodule."""
    p, n = M.p, M.dim
    basis = np.asarray(basis, dtype=np.int64)
    basis = la.column_basis(basis.reshape(n, -1) if basis.size else la.zeros(n, 0), p)
    comp = complement_basis(basis, n, p)
    full = np.concatenate([basis, comp], axis=1)
    inv = la.inverse(full, p)
    proj = inv[basis.shape[1]:]
    q = comp.shape[1]
    if q == 0:
        return zero_module(M.algebra), la.zeros(0, n), la.zeros(n, 0)
    act = np.einsum("ab,kbc,cd->kad", proj, M.act, comp) % p
    return Module(M.algebra, act), proj, comp


# Hom spaces -------------------------------------------------------------

def hom_basis(M: Module, N: Module) -> np.ndarray:
    """Basis of ``Hom_A(M, N)`` as an array of shape ``(h, N.dim, M.dim)``.

    Uses the presentation ``0 -> K -> P(M) -> M``: a map is fixed by the
    images of the cover generators, subject to killing ``K``.
    """
    _same_algebra(M, N)
    p = M.p
    if M.dim == 0 or N.dim == 0:
        return np.zeros((0, N.dim, M.dim), dtype=np.int64)
    A = M.algebra
    cov = M.cover
    Ws = [la.column_basis(N.act[A.idempotents[v]], p) for v, _ in cov.generators]
    U = sum(w.shape[1] for w in Ws)
    if U == 0:
        return np.zeros((0, N.dim, M.dim), dtype=np.int64)
    G = np.zeros((N.dim, cov.P.dim, U), dtype=np.int64)
    col = off = 0
    for (v, _), W in zip(cov.generators, Ws):
        idx = A.vertex_basis(v)
        r = W.shape[1]
        if r:
            G[:, col:col + len(idx), off:off + r] = np.einsum("kab,bc->akc", N.act[idx], W) % p
        col += len(idx)
        off += r
    if cov.kernel.shape[1]:
        cons = np.einsum("aPu,Pj->aju", G, cov.kernel).reshape(-1, U) % p
        C = la.kernel_basis(cons, p)
    else:
        C = la.identity(U)
    if C.shape[1] == 0:
        return np.zeros((0, N.dim, M.dim), dtype=np.int64)
    return np.einsum("aPu,uh,Pm->ham", G, C, cov.section) % p


def hom_basis_naive(M: Module, N: Module) -> np.ndarray:
    """Same space as :func:`hom_basis`, solving ``F act_M = act_N F`` for every basis element."""
    _same_algebra(M, N)
    p, m, n = M.p, M.dim, N.dim
    if m == 0 or n == 0:
        return np.zeros((0, n, m), dtype=np.int64)
    blocks = [np.kron(la.identity(n), M.act[k].T) - np.kron(N.act[k], la.identity(m))
              for k in range(M.algebra.dim)]
    K = la.kernel_basis(np.concatenate(blocks, axis=0) % p, p)
    return K.T.reshape(-1, n, m).copy()


def module_hom_basis(M: Module, N: Module) -> list:
    return [ModuleMap(M, N, f) for f in hom_basis(M, N)]


def solve_hom(M: Module, N: Module, equations) -> np.ndarray | None:
    """Find a map ``h: M -> N`` with ``sum L @ h @ R == rhs`` for each equation.

    Args:
        equations: list of ``(terms, rhs)`` where ``terms`` is a list of
            ``(L, R)`` matrix pairs (``None`` meaning identity).
    """
    p = M.p
    H = hom_basis(M, N)
    if len(H) == 0:
        ok = all(not (np.asarray(rhs, dtype=np.int64) % p).any() for _, rhs in equations)
        return la.zeros(N.dim, M.dim) if ok else None
    cols, target = [], []
    for terms, rhs in equations:
        blocks = 0
        for L, R in terms:
            X = H
            if L is not None:
                X = np.einsum("ab,hbc->hac", L, X) % p
            if R is not None:
                X = np.einsum("hab,bc->hac", X, R) % p
            blocks = blocks + X
        rhs = np.asarray(rhs, dtype=np.int64) % p
        if isinstance(blocks, int):
            if rhs.any():
                return None
            continue
        cols.append(blocks.reshape(len(H), -1).T % p)
        target.append(rhs.reshape(-1))
    if not cols:
        return la.zeros(N.dim, M.dim)
    system = np.concatenate(cols, axis=0)
    rhs = np.concatenate(target)
    c = la.solve_linear(system, rhs, p)
    if c is None:
        return None
    return np.einsum("h,hab->ab", c, H) % p


# covers, syzygies, kernels ---------------------------------------------

def _projective_cover(M: Module) -> Cover:
    A, p, n = M.algebra, M.p, M.dim
    if M.tag is not None:
        gens = []
        off = 0
        for v in M.tag:
            vec = np.zeros(n, dtype=np.int64)
            vec[off + A.vertex_basis(v).index(A.idempotents[v])] = 1
            gens.append((v, vec))
            off += len(A.vertex_basis(v))
        I = la.identity(n)
        return Cover(M, I, gens, la.zeros(n, 0), I)
    span = la.Span(n, p)
    for v in radical_span(M).T:
        span.add(v)
    gens = []
    for v in range(A.n_vertices):
        E = M.act[A.idempotents[v]]
        for c in range(n):
            if span.add(E[:, c]):
                gens.append((v, E[:, c].copy()))
    P = free_module(A, [v for v, _ in gens])
    epi = la.zeros(n, P.dim)
    col = 0
    for v, m in gens:
        for k in A.vertex_basis(v):
            epi[:, col] = la.matmul(M.act[k], m.reshape(-1, 1), p)[:, 0]
            col += 1
    section = la.solve_matrix(epi, la.identity(n), p)
    assert section is not None, "cover map is not surjective"
    return Cover(P, epi, gens, la.kernel_basis(epi, p), section)


def projective_cover(M: Module):
    """``(P, epi)`` with ``P`` a tagged free module and ``epi`` a ModuleMap."""
    c = M.cover
    return c.P, ModuleMap(c.P, M, c.epi)


def syzygy(M: Module) -> Module:
    return M.syzygy_inclusion[0]


def is_projective(M: Module) -> bool:
    """A minimal cover splits exactly when it is an isomorphism."""
    return M.cover.P.dim == M.dim


def projective_dimension(M: Module, cap: int = 64):
    X, k = M, 0
    while not is_projective(X):
        if k >= cap:
            return EXCEEDED
        X = syzygy(X)
        k += 1
    return k


@dataclass(eq=False)
class Factorization:
    kernel: Module
    kernel_inclusion: np.ndarray
    image: Module
    image_inclusion: np.ndarray
    coimage: np.ndarray
    cokernel: Module
    cokernel_projection: np.ndarray


def factorize(f: ModuleMap) -> Factorization:
    M, N, F, p = f.source, f.target, f.matrix, f.source.p
    Kb = la.kernel_basis(F, p) if M.dim else la.zeros(0, 0)
    Ib = la.column_basis(F, p) if M.dim else la.zeros(N.dim, 0)
    K = submodule(M, Kb)
    I = submodule(N, Ib)
    coim = la.solve_matrix(Ib, F, p) if Ib.shape[1] else la.zeros(0, M.dim)
    C, proj, _ = quotient(N, Ib)
    return Factorization(K, Kb, I, Ib, coim, C, proj)


def kernel(f: ModuleMap):
    fac = factorize(f)
    return fac.kernel, fac.kernel_inclusion


def cokernel(f: ModuleMap):
    fac = factorize(f)
    return fac.cokernel, fac.cokernel_projection


def induced_on_cokernels(h: np.ndarray, proj1: np.ndarray, sec1: np.ndarray, proj2: np.ndarray, p: int):
    """Map ``N1/S1 -> N2/S2`` induced by ``h: N1 -> N2``."""
    return la.mul(p, proj2, h, sec1)


# duals -------------------------------------------------------------------

def vector_dual(M: Module) -> Module:
    """``Hom_k(M, k)`` over the opposite algebra (transposed action)."""
    op = opposite_algebra(M.algebra)
    return Module(op, M.act.transpose(0, 2, 1), name=f"D({M.name or 'M'})")


def star_dual(M: Module) -> Module:
    """``Hom_A(M, A)`` as a right module over the opposite algebra.

    The returned module carries ``hom_basis_to_regular``: the maps ``M -> A``
    its coordinates refer to.
    """
    c = M.__dict__.setdefault("_star", {})
    if "dual" in c:
        return c["dual"]
    A, p = M.algebra, M.p
    op = opposite_algebra(A)
    R = regular_module(A)
    H = hom_basis(M, R)
    r = len(H)
    if r == 0:
        D = zero_module(op)
        c["dual"] = D
        return D
    Phi = H.reshape(r, -1).T
    L = np.stack([A.left_mult(k) for k in range(A.dim)])
    rhs = np.einsum("kab,hbc->khac", L, H).reshape(A.dim * r, -1).T % p
    sol = la.solve_matrix(Phi, rhs, p)
    act = sol.reshape(r, A.dim, r).transpose(1, 0, 2)
    D = Module(op, act, name=f"{M.name or 'M'}*")
    D.hom_basis_to_regular = H
    c["dual"] = D
    return D


def star_dual_map(f: ModuleMap) -> ModuleMap:
    """``f*: N* -> M*``, ``psi -> psi o f``."""
    M, N, p = f.source, f.target, f.source.p
    DM, DN = star_dual(M), star_dual(N)
    if DM.dim == 0 or DN.dim == 0:
        return ModuleMap(DN, DM, la.zeros(DM.dim, DN.dim))
    HM = DM.hom_basis_to_regular
    HN = DN.hom_basis_to_regular
    comp = np.einsum("hab,bc->hac", HN, f.matrix) % p
    sol = la.solve_matrix(HM.reshape(len(HM), -1).T, comp.reshape(len(HN), -1).T, p)
    return ModuleMap(DN, DM, sol)


def evaluation_map(M: Module) -> ModuleMap:
    """``M -> M**``, ``m -> (phi -> phi(m))``."""
    p = M.p
    D = star_dual(M)
    DD = star_dual(D)
    if DD.dim == 0 or D.dim == 0:
        return ModuleMap(M, DD, la.zeros(DD.dim, M.dim))
    H = D.hom_basis_to_regular  # (r, dimA, n)
    HH = DD.hom_basis_to_regular  # (s, dimA, r)
    ev = H.transpose(2, 1, 0)  # (n, dimA, r): ev_m[:, j] = phi_j[:, m]
    sol = la.solve_matrix(HH.reshape(len(HH), -1).T, ev.reshape(M.dim, -1).T, p)
    return ModuleMap(M, DD, sol)


def standardize_projective(P: Module):
    """``(F, iso)`` with ``F`` the tagged free module isomorphic to projective ``P``."""
    if not is_projective(P):
        raise ValueError("module is not projective")
    c = P.cover
    return c.P, la.inverse(c.epi, P.p)


# stable Hom ----------------------------------------------------------------

def _rank_of_maps(maps: np.ndarray, p: int) -> int:
    if len(maps) == 0:
        return 0
    return la.rank(maps.reshape(len(maps), -1), p)


def stable_hom(M: Module, N: Module):
    """``(dim, representatives)`` of Hom modulo maps factoring through projectives."""
    p = M.p
    H = hom_basis(M, N)
    if len(H) == 0:
        return 0, []
    c = N.cover
    G = hom_basis(M, c.P)
    fact = np.einsum("ab,hbc->hac", c.epi, G) % p if len(G) else np.zeros((0,) + H.shape[1:], dtype=np.int64)
    span = la.Span(H[0].size, p)
    for f in fact:
        span.add(f.reshape(-1))
    reps = [ModuleMap(M, N, f) for f in H if span.add(f.reshape(-1))]
    return len(reps), reps


def stable_hom_dim(M: Module, N: Module) -> int:
    return stable_hom(M, N)[0]


# Krull-Schmidt -------------------------------------------------------------

@dataclass(eq=False)
class Summand:
    """An indecomposable summand: ``proj @ inc == I`` and the ``inc @ proj`` sum to ``I``."""

    module: Module
    inc: np.ndarray
    proj: np.ndarray


def _fitting_split(M: Module, phi: np.ndarray):
    p = M.p
    Phi = la.power_stable(phi, p)
    r = la.rank(Phi, p)
    if r in (0, M.dim):
        return r, None
    im = la.column_basis(Phi, p)
    ker = la.kernel_basis(Phi, p)
    full = np.concatenate([im, ker], axis=1)
    inv = la.inverse(full, p)
    return r, ((im, inv[:r]), (ker, inv[r:]))


def _is_nilpotent_span(mats: list, p: int) -> bool:
    if not mats:
        return True
    n = mats[0].shape[0]
    span = list(mats)
    for _ in range(n + 1):
        prods = [la.matmul(x, y, p).reshape(-1) for x in span for y in mats]
        basis = la.column_basis(np.array(prods, dtype=np.int64).T, p)
        if basis.shape[1] == 0:
            return True
        span = [basis[:, j].reshape(n, n) for j in range(basis.shape[1])]
    return False


def find_splitting(M: Module):
    """A pair of complementary summand bases, or ``None`` when ``End(M)`` is local."""
    p, n = M.p, M.dim
    E = hom_basis(M, M)
    I = la.identity(n)
    nilparts = []
    needs_search = False
    for Ek in E:
        found = None
        for lam in range(p):
            r, split = _fitting_split(M, (Ek - lam * I) % p)
            if split is not None:
                return split
            if r == 0:
                found = (Ek - lam * I) % p
                break
        if found is None:
            needs_search = True
        else:
            nilparts.append(found)
    if not needs_search and _is_nilpotent_span(nilparts, p):
        return None
    if p ** len(E) > SPLIT_BUDGET:
        raise FieldTooSmallForSplit(
            f"End has dimension {len(E)}; exhaustive idempotent search exceeds budget")
    for coeffs in itertools.product(range(p), repeat=len(E)):
        phi = np.einsum("h,hab->ab", np.array(coeffs, dtype=np.int64), E) % p
        r, split = _fitting_split(M, phi)
        if split is not None:
            return split
    return None


def _decompose(M: Module) -> list:
    if M.dim == 0:
        return []
    split = find_splitting(M)
    if split is None:
        return [Summand(M, la.identity(M.dim), la.identity(M.dim))]
    out = []
    for inc, proj in split:
        S = submodule(M, inc)
        for piece in S.decomposition:
            out.append(Summand(piece.module, la.matmul(inc, piece.inc, M.p),
                               la.matmul(piece.proj, proj, M.p)))
    return out


def decompose(M: Module) -> list:
    """Indecomposable summands with inclusion/projection matrices."""
    return M.decomposition


def is_indecomposable(M: Module) -> bool:
    return M.dim > 0 and len(M.decomposition) == 1


def iso_indecomposables(M: Module, N: Module) -> np.ndarray | None:
    """An isomorphism between indecomposables, or ``None``."""
    if M.dim != N.dim or M.dimension_vector != N.dimension_vector:
        return None
    p = M.p
    F = hom_basis(M, N)
    G = hom_basis(N, M)
    for f in F:
        if la.is_invertible(f, p):
            return f
    for f in F:
        for g in G:
            if la.is_invertible(la.matmul(g, f, p), p):
                return f
    return None


def find_isomorphism(M: Module, N: Module) -> np.ndarray | None:
    """An isomorphism ``M -> N`` assembled from matched indecomposable summands."""
    _same_algebra(M, N)
    if M.dim != N.dim or M.dimension_vector != N.dimension_vector:
        return None
    p = M.p
    if M.dim == 0:
        return la.zeros(0, 0)
    dm, dn = M.decomposition, N.decomposition
    if len(dm) != len(dn):
        return None
    used = [False] * len(dn)
    iso = la.zeros(N.dim, M.dim)
    for s in dm:
        for j, t in enumerate(dn):
            if used[j]:
                continue
            f = iso_indecomposables(s.module, t.module)
            if f is not None:
                used[j] = True
                iso = (iso + la.mul(p, t.inc, f, s.proj)) % p
                break
        else:
            return None
    return iso


def is_isomorphic(M: Module, N: Module) -> bool:
    return find_isomorphism(M, N) is not None


def in_additive_closure(M: Module, generators: list) -> bool:
    pieces = [s.module for g in generators for s in g.decomposition]
    for s in M.decomposition:
        if not any(iso_indecomposables(s.module, q) is not None for q in pieces):
            return False
    return True


def top_multiplicities(M: Module) -> tuple:
    """Multiplicities of the simple tops, i.e. the tag of the projective cover."""
    counts = [0] * M.algebra.n_vertices
    for v, _ in M.cover.generators:
        counts[v] += 1
    return tuple(counts)
