"""Ext groups, Frobenius contexts, membership tests and cosyzygies.

A context is either CM(A) for an Iwanaga-Gorenstein algebra ``A`` or the
additive closure of an explicit list of modules (which must contain the
projectives and be closed under syzygy and cosyzygy).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import Algebra, is_iwanaga_gorenstein
from .errors import NoAdmissibleMono, NotFrobeniusClosed, NotGorenstein, NotMember
from .modules import (
    Module,
    ModuleMap,
    hom_basis,
    in_additive_closure,
    indecomposable_projective,
    is_projective,
    quotient,
    regular_module,
    standardize_projective,
    star_dual,
    star_dual_map,
    evaluation_map,
    syzygy,
    zero_module,
)


def minimal_resolution(M: Module, length: int):
    """Projectives ``P_0..P_length`` and differentials ``d_j: P_j -> P_{j-1}``.

    ``d[j]`` is defined for ``1 <= j <= length``; ``aug`` is ``P_0 -> M``.
    """
    Ps, ds = [M.cover.P], {}
    X = M
    p = M.p
    for j in range(1, length + 1):
        K, inc = X.syzygy_inclusion
        Ps.append(K.cover.P)
        ds[j] = la.matmul(inc, K.cover.epi, p)
        X = K
    return Ps, ds, M.cover.epi


def ext_dim(M: Module, N: Module, i: int) -> int:
    """``dim Ext^i(M, N)`` from the minimal projective resolution of ``M``."""
    if i < 0:
        raise ValueError("i must be >= 0")
    p = M.p
    Ps, ds, _ = minimal_resolution(M, i + 1)

    def rank_delta(j):
        # rank of Hom(P_j, N) -> Hom(P_{j+1}, N), precomposition with d_{j+1}
        if j < 0:
            return 0
        H = hom_basis(Ps[j], N)
        if len(H) == 0 or ds[j + 1].shape[1] == 0:
            return 0
        comp = np.einsum("hab,bc->hac", H, ds[j + 1]) % p
        return la.rank(comp.reshape(len(H), -1), p)

    return len(hom_basis(Ps[i], N)) - rank_delta(i) - rank_delta(i - 1)


@dataclass(eq=False)
class FrobeniusContext:
    """Ambient Frobenius category.

    Attributes:
        algebra: the algebra.
        mode: ``"gorenstein"`` or ``"list"``.
        d: Gorenstein dimension (``None`` in list mode).
        generators: the explicit generators in list mode.
        cap: resolution cap used for dimension searches.
    """

    algebra: Algebra
    mode: str
    d: int | None = None
    generators: list = field(default_factory=list)
    cap: int = 64
    name: str | None = None

    def __repr__(self):
        if self.mode == "gorenstein":
            return f"CM({self.algebra.name}) d={self.d}"
        return f"add{{{', '.join(g.name or '?' for g in self.generators)}}}"

    @property
    def projectives(self) -> list:
        return [indecomposable_projective(self.algebra, v) for v in range(self.algebra.n_vertices)]

    @property
    def stabilization_bound(self) -> int:
        return self.d if self.mode == "gorenstein" else self.cap


def _approximation(M: Module):
    """Left ``add(A)``-approximation ``M -> P`` built through the double dual.

    Returns ``(P, mono)`` with ``P`` a tagged free module.
    """
    if M.tag is not None:
        return M, la.identity(M.dim)
    if is_projective(M):
        c = M.cover
        return c.P, la.inverse(c.epi, M.p)
    D = star_dual(M)
    c = D.cover
    cstar = star_dual_map(ModuleMap(c.P, D, c.epi))  # D* -> P'*
    ev = evaluation_map(M)
    F, iso = standardize_projective(cstar.target)
    mono = la.mul(M.p, iso, cstar.matrix, ev.matrix)
    return F, mono


@dataclass(eq=False)
class Cosyzygy:
    """``0 -> M -> P -> cok -> 0`` with ``P`` a tagged free module."""

    P: Module
    mono: np.ndarray
    cok: Module
    projection: np.ndarray
    section: np.ndarray


def _raw_cosyzygy(M: Module) -> Cosyzygy:
    cache = M.__dict__.setdefault("_cosyz", {})
    if "c" in cache:
        return cache["c"]
    P, mono = _approximation(M)
    if la.rank(mono, M.p) != M.dim:
        raise NoAdmissibleMono(f"{M!r} does not embed into a projective through its double dual")
    if P is M:
        out = Cosyzygy(P, mono, zero_module(M.algebra), la.zeros(0, P.dim), la.zeros(P.dim, 0))
    else:
        C, proj, sec = quotient(P, mono)
        C.name = f"Sigma({M.name})" if M.name else None
        out = Cosyzygy(P, mono, C, proj, sec)
    cache["c"] = out
    return out


def is_member(M: Module, ctx: FrobeniusContext) -> bool:
    cache = M.__dict__.setdefault("_member", {})
    key = id(ctx)
    if key not in cache:
        if M.dim == 0 or M.tag is not None:
            res = True
        elif ctx.mode == "gorenstein":
            R = regular_module(ctx.algebra)
            res = all(ext_dim(M, R, i) == 0 for i in range(1, ctx.d + 1))
        else:
            res = in_additive_closure(M, ctx.generators)
        cache[key] = res
    return cache[key]


def cosyzygy(M: Module, ctx: FrobeniusContext) -> Cosyzygy:
    """Mono of a member into a projective(-injective) with member cokernel."""
    out = _raw_cosyzygy(M)
    if not is_member(out.cok, ctx):
        raise NoAdmissibleMono(f"cokernel of the approximation of {M!r} is not a member")
    return out


def cosuspension_chain(M: Module, ctx: FrobeniusContext, k: int) -> Module:
    for _ in range(k):
        M = cosyzygy(M, ctx).cok
    return M


def make_context(A: Algebra, mode: str = "gorenstein", generators=None, cap: int = 64,
                 name=None) -> FrobeniusContext:
    """Validated Frobenius context.

    Raises:
        NotGorenstein: gorenstein mode and some injective dimension exceeds ``cap``.
        NotFrobeniusClosed: list mode and a projective, syzygy or cosyzygy escapes.
    """
    if mode == "gorenstein":
        ok, d = is_iwanaga_gorenstein(A, cap)
        if not ok:
            raise NotGorenstein(f"{A!r}: injective dimension exceeds cap {cap}")
        return FrobeniusContext(A, "gorenstein", d=d, cap=cap, name=name)
    if mode != "list":
        raise ValueError(f"unknown context mode {mode!r}")
    gens = list(generators or [])
    hint = ("; if the generators were written for the opposite composition convention, "
            "try reversing the quiver arrows")
    ctx = FrobeniusContext(A, "list", d=None, generators=gens, cap=cap, name=name)
    for P in ctx.projectives:
        if not in_additive_closure(P, gens):
            raise NotFrobeniusClosed(f"projective {P!r} is not in the closure", P, P)
    for G in gens:
        om = syzygy(G)
        if not in_additive_closure(om, gens):
            raise NotFrobeniusClosed(f"syzygy of {G!r} escapes the closure{hint}", G, om)
        try:
            cz = _raw_cosyzygy(G)
        except NoAdmissibleMono as exc:
            raise NotFrobeniusClosed(str(exc), G, None) from exc
        if not in_additive_closure(cz.cok, gens):
            raise NotFrobeniusClosed(f"cosyzygy of {G!r} escapes the closure{hint}", G, cz.cok)
    return ctx


def require_member(M: Module, ctx: FrobeniusContext, what="module"):
    if not is_member(M, ctx):
        raise NotMember(f"{what} {M!r} is not a member of {ctx!r}", witness=M)


def complete_resolution(M: Module, ctx: FrobeniusContext, lo: int, hi: int):
    """Window ``[lo, hi]`` of the complete resolution of a member ``M``.

    Degrees ``<= 0`` hold the minimal projective resolution and degrees
    ``>= 1`` the cosyzygy coresolution, so the cocycle ``Z^1`` is ``M``.
    """
    from .complexes import complete_resolution_spliced

    require_member(M, ctx)
    return complete_resolution_spliced(M, ctx).materialize(lo, hi)
