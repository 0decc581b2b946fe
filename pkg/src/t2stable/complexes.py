"""Bounded complexes of projectives and their spliced (infinite) extensions.

Differentials go up in degree: ``d^i: X^i -> X^{i+1}``.  A
:class:`SplicedComplex` is a finite window ``[m, n]`` plus two tails:

* below ``m`` the minimal projective resolution of a module ``L`` glued by an
  injective ``iota: L -> X^m`` (so ``d^{m-1} = iota o rho_L``);
* above ``n`` the cosyzygy coresolution of a context member ``C`` glued by
  ``pi: X^n -> C`` (so ``d^n = s_C o pi``).

The homology of the whole complex lives in ``[m, n+1]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import LiftFailed
from .frobenius import FrobeniusContext, cosyzygy, is_member, require_member
from .modules import (
    Module,
    direct_sum,
    hom_basis,
    is_module_map,
    is_projective,
    solve_hom,
    star_dual,
    star_dual_map,
    ModuleMap,
    submodule,
    quotient,
    zero_module,
)


class BoundedComplex:
    """Complex supported in ``[lo, hi]``; missing components are zero."""

    def __init__(self, algebra, comps: dict, diffs: dict | None = None, check=True):
        self.algebra = algebra
        self.comps = {int(k): v for k, v in comps.items() if v.dim > 0}
        keys = sorted(self.comps)
        self.lo = keys[0] if keys else 0
        self.hi = keys[-1] if keys else -1
        self.diffs = {}
        for k, d in (diffs or {}).items():
            d = np.asarray(d, dtype=np.int64) % algebra.p
            if d.size:
                self.diffs[int(k)] = d.reshape(self.comp(k + 1).dim, self.comp(k).dim)
        if check:
            self.check()

    @property
    def p(self) -> int:
        return self.algebra.p

    def comp(self, i: int) -> Module:
        return self.comps.get(i, zero_module(self.algebra))

    def diff(self, i: int) -> np.ndarray:
        if i in self.diffs:
            return self.diffs[i]
        return la.zeros(self.comp(i + 1).dim, self.comp(i).dim)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def total_dim(self) -> int:
        return sum(m.dim for m in self.comps.values())

    def is_zero(self) -> bool:
        return not self.comps

    def check(self):
        p = self.p
        for i in range(self.lo - 1, self.hi + 1):
            d = self.diff(i)
            if not is_module_map(self.comp(i), self.comp(i + 1), d):
                raise ValueError(f"differential {i} is not a module map")
            if la.matmul(self.diff(i + 1), d, p).any():
                raise ValueError(f"d^{i + 1} d^{i} != 0")
        return self

    def homology_dim(self, i: int) -> int:
        p = self.p
        n = self.comp(i).dim
        return n - la.rank(self.diff(i), p) - la.rank(self.diff(i - 1), p)

    def is_acyclic(self, lo=None, hi=None) -> bool:
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        return all(self.homology_dim(i) == 0 for i in range(lo, hi + 1))

    def shift(self, k: int = 1) -> "BoundedComplex":
        """``X[k]``: component ``i`` is ``X^{i+k}``, differential ``(-1)^k d``."""
        sign = -1 if k % 2 else 1
        return BoundedComplex(self.algebra, {i - k: m for i, m in self.comps.items()},
                              {i - k: sign * d for i, d in self.diffs.items()})

    def __repr__(self):
        parts = [f"{i}:{self.comp(i).dim}" for i in self.degrees()]
        return f"BoundedComplex[{', '.join(parts)}]"


@dataclass(eq=False)
class ChainMap:
    source: BoundedComplex
    target: BoundedComplex
    maps: dict = field(default_factory=dict)

    def at(self, i: int) -> np.ndarray:
        if i in self.maps:
            return np.asarray(self.maps[i], dtype=np.int64) % self.source.p
        return la.zeros(self.target.comp(i).dim, self.source.comp(i).dim)

    def degrees(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo - 1, hi + 2)

    def is_chain_map(self) -> bool:
        p = self.source.p
        for i in self.degrees():
            if not is_module_map(self.source.comp(i), self.target.comp(i), self.at(i)):
                return False
            lhs = la.matmul(self.target.diff(i), self.at(i), p)
            rhs = la.matmul(self.at(i + 1), self.source.diff(i), p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        p = self.source.p
        degs = set(self.degrees()) | set(other.degrees())
        return ChainMap(other.source, self.target,
                        {i: la.matmul(self.at(i), other.at(i), p) for i in degs})

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.degrees()) | set(other.degrees())
        return ChainMap(self.source, self.target,
                        {i: (self.at(i) - other.at(i)) % self.source.p for i in degs})

    def is_zero(self) -> bool:
        return all(not self.at(i).any() for i in self.degrees())


def identity_map(X: BoundedComplex) -> ChainMap:
    return ChainMap(X, X, {i: la.identity(X.comp(i).dim) for i in X.degrees()})


def zero_map(X: BoundedComplex, Y: BoundedComplex) -> ChainMap:
    return ChainMap(X, Y, {})


def cone(f: ChainMap) -> BoundedComplex:
    """``cone^k = X^{k+1} (+) Y^k`` with ``d = [[-d_X, 0], [f, d_Y]]``."""
    X, Y, p = f.source, f.target, f.source.p
    A = X.algebra
    lo = min(X.lo - 1, Y.lo)
    hi = max(X.hi - 1, Y.hi)
    comps, diffs = {}, {}
    for k in range(lo, hi + 1):
        comps[k] = direct_sum(X.comp(k + 1), Y.comp(k))[0]
    for k in range(lo - 1, hi + 1):
        a, b = X.comp(k + 1).dim, Y.comp(k).dim
        a2, b2 = X.comp(k + 2).dim, Y.comp(k + 1).dim
        d = la.zeros(a2 + b2, a + b)
        d[:a2, :a] = -X.diff(k + 1)
        d[a2:, :a] = f.at(k + 1)
        d[a2:, a:] = Y.diff(k)
        diffs[k] = d % p
    return BoundedComplex(A, comps, diffs)


def is_null_homotopic(f: ChainMap):
    """A homotopy ``{k: h^k: X^k -> Y^{k-1}}`` with ``f = d h + h d``, or ``None``."""
    X, Y, p = f.source, f.target, f.source.p
    degs = list(f.degrees())
    bases = {k: hom_basis(X.comp(k), Y.comp(k - 1)) for k in degs}
    cols = []
    index = []
    for k in degs:
        for j, h in enumerate(bases[k]):
            # h^k enters equation k as d_Y^{k-1} h and equation k-1 as h d_X^{k-1}
            vec = []
            for e in degs:
                if e == k:
                    blk = la.matmul(Y.diff(k - 1), h, p)
                elif e == k - 1:
                    blk = la.matmul(h, X.diff(k - 1), p)
                else:
                    blk = la.zeros(Y.comp(e).dim, X.comp(e).dim)
                vec.append(blk.reshape(-1))
            cols.append(np.concatenate(vec) if vec else np.zeros(0, dtype=np.int64))
            index.append((k, j))
    rhs = np.concatenate([f.at(e).reshape(-1) for e in degs]) if degs else np.zeros(0, np.int64)
    if not rhs.any():
        return {k: la.zeros(Y.comp(k - 1).dim, X.comp(k).dim) for k in degs}
    if not cols:
        return None
    c = la.solve_linear(np.array(cols, dtype=np.int64).T, rhs, p)
    if c is None:
        return None
    h = {k: la.zeros(Y.comp(k - 1).dim, X.comp(k).dim) for k in degs}
    for (k, j), coef in zip(index, c):
        if coef:
            h[k] = (h[k] + coef * bases[k][j]) % p
    return h


def truncate(X: BoundedComplex, mode: str, n: int) -> BoundedComplex:
    """Brutal truncation ``tau_{>=n}`` (``mode='ge'``) or ``tau_{<=n}`` (``'le'``)."""
    if mode == "ge":
        keep = [i for i in X.comps if i >= n]
        dkeep = [i for i in X.diffs if i >= n]
    elif mode == "le":
        keep = [i for i in X.comps if i <= n]
        dkeep = [i for i in X.diffs if i + 1 <= n]
    else:
        raise ValueError("mode must be 'ge' or 'le'")
    return BoundedComplex(X.algebra, {i: X.comps[i] for i in keep}, {i: X.diffs[i] for i in dkeep})


def dualize_complex(X: BoundedComplex) -> BoundedComplex:
    """Degreewise ``Hom_A(-, A)``: ``(X*)^k = (X^{-k})*`` and ``d^k = (d^{-k-1})*``."""
    from .algebra import opposite_algebra

    op = opposite_algebra(X.algebra)
    comps = {-i: star_dual(m) for i, m in X.comps.items()}
    diffs = {}
    for i, d in X.diffs.items():
        f = ModuleMap(X.comp(i), X.comp(i + 1), d)
        diffs[-i - 1] = star_dual_map(f).matrix
    return BoundedComplex(op, comps, diffs)


# spliced complexes ------------------------------------------------------

class SplicedComplex:
    """Finite representation of a complex with bounded homology.

    Args:
        ctx: the Frobenius context (source of cosyzygies for the right tail).
        window: components on ``[m, n]``.
        m, n: window bounds (components may be zero).
        left: module ``L`` whose minimal resolution forms the left tail.
        iota: injective ``L -> X^m``.
        right: context member ``C`` whose coresolution forms the right tail.
        pi: ``X^n -> C``.
    """

    def __init__(self, ctx: FrobeniusContext, window: BoundedComplex, m: int, n: int,
                 left: Module, iota, right: Module, pi, check=True, name=None):
        self.ctx = ctx
        self.window = window
        self.m, self.n = int(m), int(n)
        self.left = left
        self.right = right
        p = ctx.algebra.p
        self.iota = np.asarray(iota, dtype=np.int64).reshape(window.comp(m).dim, left.dim) % p
        self.pi = np.asarray(pi, dtype=np.int64).reshape(right.dim, window.comp(n).dim) % p
        self.name = name
        self._ext = {}
        if check:
            self.check()

    @property
    def algebra(self):
        return self.ctx.algebra

    def __repr__(self):
        return (f"SplicedComplex({self.name or ''}[{self.m},{self.n}] "
                f"L={self.left.dim} C={self.right.dim} {self.window!r})")

    def check(self):
        W, p, m, n = self.window, self.algebra.p, self.m, self.n
        if not (W.is_zero() or (m <= W.lo and W.hi <= n)):
            raise ValueError("window components outside [m, n]")
        if m > n:
            raise ValueError("empty window")
        if la.rank(self.iota, p) != self.left.dim:
            raise ValueError("iota is not injective")
        if not is_module_map(self.left, W.comp(m), self.iota):
            raise ValueError("iota is not a module map")
        if not is_module_map(W.comp(n), self.right, self.pi):
            raise ValueError("pi is not a module map")
        if m < n:
            if la.matmul(W.diff(m), self.iota, p).any():
                raise ValueError("d^m iota != 0")
            if la.matmul(self.pi, W.diff(n - 1), p).any():
                raise ValueError("pi d^{n-1} != 0")
        elif la.matmul(self.pi, self.iota, p).any():
            raise ValueError("pi iota != 0")
        for i in range(m, n - 1):
            if la.matmul(W.diff(i + 1), W.diff(i), p).any():
                raise ValueError("d d != 0 inside the window")
        require_member(self.right, self.ctx, "right cocycle")
        return self

    def extend_window(self, lo: int, hi: int) -> "SplicedComplex":
        """Same object with window ``[min(lo, m), max(hi, n)]``."""
        lo, hi = min(lo, self.m), max(hi, self.n)
        if (lo, hi) == (self.m, self.n):
            return self
        if (lo, hi) in self._ext:
            return self._ext[(lo, hi)]
        p = self.algebra.p
        comps = dict(self.window.comps)
        diffs = dict(self.window.diffs)
        L, iota, m = self.left, self.iota, self.m
        while m > lo:
            c = L.cover
            comps[m - 1] = c.P
            diffs[m - 1] = la.matmul(iota, c.epi, p)
            L, iota = L.syzygy_inclusion
            m -= 1
        C, pi, n = self.right, self.pi, self.n
        while n < hi:
            cz = cosyzygy(C, self.ctx)
            comps[n + 1] = cz.P
            diffs[n] = la.matmul(cz.mono, pi, p)
            C, pi = cz.cok, cz.projection
            n += 1
        W = BoundedComplex(self.algebra, comps, diffs, check=False)
        out = SplicedComplex(self.ctx, W, m, n, L, iota, C, pi, check=False, name=self.name)
        self._ext[(lo, hi)] = out
        return out

    def materialize(self, lo: int, hi: int) -> BoundedComplex:
        """Brutal window ``[lo, hi]`` of the infinite complex."""
        S = self.extend_window(lo, hi)
        W = S.window
        comps = {i: W.comp(i) for i in range(lo, hi + 1)}
        diffs = {i: W.diff(i) for i in range(lo, hi)}
        return BoundedComplex(self.algebra, comps, diffs, check=False)

    def comp(self, i: int) -> Module:
        return self.extend_window(i, i).window.comp(i)

    def diff(self, i: int) -> np.ndarray:
        return self.extend_window(i, i + 1).window.diff(i)

    def homology_dim(self, i: int) -> int:
        if i < self.m or i > self.n + 1:
            return 0
        return self.materialize(i - 1, i + 1).homology_dim(i)

    def homology_range(self):
        return range(self.m, self.n + 2)

    # shapes
    def is_bounded_below(self) -> bool:
        """Left tail finite (class ``K^{+,b}``)."""
        return is_projective(self.left)

    def is_bounded_above(self) -> bool:
        """Right tail finite (class ``K^{-,b}``)."""
        return is_projective(self.right)

    def is_bounded(self) -> bool:
        return self.is_bounded_below() and self.is_bounded_above()

    def is_acyclic(self) -> bool:
        return all(self.homology_dim(i) == 0 for i in self.homology_range())

    def cocycle(self, i: int):
        """``(Z^i, inclusion into X^i)``."""
        X = self.comp(i)
        K = la.kernel_basis(self.diff(i), self.algebra.p)
        return submodule(X, K), K


def spliced_from_bounded(ctx, X: BoundedComplex, name=None) -> SplicedComplex:
    """A bounded complex viewed as a spliced complex with zero tails."""
    A = ctx.algebra
    Z = zero_module(A)
    m, n = (X.lo, X.hi) if not X.is_zero() else (0, 0)
    return SplicedComplex(ctx, X, m, n, Z, la.zeros(X.comp(m).dim, 0), Z,
                          la.zeros(0, X.comp(n).dim), name=name)


def complete_resolution_spliced(M: Module, ctx: FrobeniusContext, name=None) -> SplicedComplex:
    """``... -> P(M) -> I(M) -> ...`` in degrees 0, 1 with ``Z^1 = M``."""
    p = ctx.algebra.p
    c = M.cover
    cz = cosyzygy(M, ctx)
    K, inc = M.syzygy_inclusion
    W = BoundedComplex(ctx.algebra, {0: c.P, 1: cz.P}, {0: la.matmul(cz.mono, c.epi, p)},
                       check=False)
    return SplicedComplex(ctx, W, 0, 1, K, inc, cz.cok, cz.projection,
                          name=name or f"CR({M.name})")


def stalk(ctx, P: Module, degree: int = 0) -> SplicedComplex:
    return spliced_from_bounded(ctx, BoundedComplex(ctx.algebra, {degree: P}), name=f"{P.name}[{-degree}]")


@dataclass(eq=False)
class TruncationTriangle:
    """``tau_{>=n+1} X -> X -> tau_{<=n} X`` on a common extended window."""

    ge: SplicedComplex
    full: SplicedComplex
    le: SplicedComplex
    n: int


def truncation_triangle(X: SplicedComplex, n: int) -> TruncationTriangle:
    S = X.extend_window(min(X.m, n), max(X.n, n + 1))
    W = S.window
    A = X.algebra
    Z = zero_module(A)
    ge_w = BoundedComplex(A, {i: W.comp(i) for i in range(n + 1, S.n + 1)},
                          {i: W.diff(i) for i in range(n + 1, S.n)}, check=False)
    ge = SplicedComplex(X.ctx, ge_w, n + 1, S.n, Z, la.zeros(W.comp(n + 1).dim, 0),
                        S.right, S.pi, name="tau>=%d" % (n + 1))
    le_w = BoundedComplex(A, {i: W.comp(i) for i in range(S.m, n + 1)},
                          {i: W.diff(i) for i in range(S.m, n)}, check=False)
    le = SplicedComplex(X.ctx, le_w, S.m, n, S.left, S.iota, Z, la.zeros(0, W.comp(n).dim),
                        name="tau<=%d" % n)
    return TruncationTriangle(ge, S, le, n)


def truncation_cone_equivalence(X: SplicedComplex, n: int, lo: int, hi: int):
    """Check ``cone(tau_{>=n+1} X -> X) ~ tau_{<=n} X`` on the window ``[lo, hi]``.

    Returns ``(phi, psi, h)`` where ``phi: cone -> tau<=``, ``psi`` its inverse
    up to homotopy and ``h`` a homotopy ``psi phi ~ id``.

    Raises:
        LiftFailed: when any step of the certificate fails.
    """
    p = X.algebra.p
    W = X.materialize(lo, hi)
    ge, le = truncate(W, "ge", n + 1), truncate(W, "le", n)
    inc = ChainMap(ge, W, {i: la.identity(W.comp(i).dim) for i in range(n + 1, hi + 1)})
    C = cone(inc)
    phi, psi = {}, {}
    for k in C.degrees():
        a, b = ge.comp(k + 1).dim, W.comp(k).dim
        if k <= n:
            phi[k] = np.concatenate([la.zeros(b, a), la.identity(b)], axis=1)
            x = -W.diff(k) if k == n else la.zeros(a, b)
            psi[k] = np.concatenate([x % p, la.identity(b)], axis=0)
    phi = ChainMap(C, le, phi)
    psi = ChainMap(le, C, psi)
    if not (phi.is_chain_map() and psi.is_chain_map()):
        raise LiftFailed("comparison maps are not chain maps")
    if not (phi.compose(psi) - identity_map(le)).is_zero():
        raise LiftFailed("phi psi != id")
    h = is_null_homotopic(psi.compose(phi) - identity_map(C))
    if h is None:
        raise LiftFailed("psi phi is not homotopic to the identity")
    return phi, psi, h


def lift_chain_map_down(src: BoundedComplex, tgt: BoundedComplex, maps: dict, k: int) -> np.ndarray:
    """Solve ``d_tgt^k h = h^{k+1} d_src^k`` for ``h: src^k -> tgt^k``."""
    rhs = la.matmul(maps[k + 1], src.diff(k), src.p)
    h = solve_hom(src.comp(k), tgt.comp(k), [([(tgt.diff(k), None)], rhs)])
    if h is None:
        raise LiftFailed(f"no lift in degree {k}")
    return h


def extend_chain_map_up(src: BoundedComplex, tgt: BoundedComplex, maps: dict, k: int) -> np.ndarray:
    """Solve ``h d_src^k = d_tgt^k h^k`` for ``h: src^{k+1} -> tgt^{k+1}``."""
    rhs = la.matmul(tgt.diff(k), maps[k], src.p)
    h = solve_hom(src.comp(k + 1), tgt.comp(k + 1), [([(None, src.diff(k))], rhs)])
    if h is None:
        raise LiftFailed(f"no extension in degree {k + 1}")
    return h


def quotient_complex_cocycle(X: BoundedComplex, i: int):
    """``(cok d^{i-1}, projection from X^i, section)``."""
    Bi = la.column_basis(X.diff(i - 1), X.p) if X.comp(i - 1).dim else la.zeros(X.comp(i).dim, 0)
    return quotient(X.comp(i), Bi)

