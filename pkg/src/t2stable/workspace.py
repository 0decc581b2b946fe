"""Workspace files: an algebra, a context, named modules and named objects."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .algebra import Algebra
from .bridge import functor_F
from .complexes import (BoundedComplex, SplicedComplex, complete_resolution_spliced,
                        spliced_from_bounded, stalk)
from .errors import InputError, NotMember, T2Error
from .fixtures import as_int_matrix, load_algebra, load_json, workspace_path
from .frobenius import FrobeniusContext, _raw_cosyzygy, make_context
from .modules import (
    Module,
    direct_sum,
    indecomposable_projective,
    regular_module,
    simple_module,
    syzygy,
    truncated_projective,
    zero_module,
)
from .morphisms import MorE, MorM


@dataclass(eq=False)
class Workspace:
    algebra: Algebra
    ctx: FrobeniusContext
    modules: dict = field(default_factory=dict)
    objects: dict = field(default_factory=dict)
    seeds: list = field(default_factory=list)
    raw: dict = field(default_factory=dict)
    base_dir: Path | None = None

    def module(self, name: str) -> Module:
        if name not in self.modules:
            raise KeyError(f"unknown module {name!r}")
        return self.modules[name]

    def obj(self, name: str):
        if name in self.objects:
            return self.objects[name]
        raise KeyError(f"unknown object {name!r}")


def _vertex(A: Algebra, ref, where: str) -> int:
    names = A.vertex_names
    if str(ref) in names:
        return names.index(str(ref))
    if isinstance(ref, int) and 0 <= ref < len(names):
        return ref
    raise InputError(f"{where}: unknown vertex {ref!r}")


def build_module(A: Algebra, spec: dict, known: dict, where: str) -> Module:
    """Module from its JSON description.

    Kinds: ``simple``/``projective`` (``vertex``), ``truncated`` (``vertex``,
    ``length``), ``zero``, ``regular``, ``sum`` (``of``: names), ``syzygy``
    and ``cosyzygy`` (``of``: name) and ``explicit`` (``dim``, ``action``:
    label -> matrix, only idempotents and arrows required).
    """
    if not isinstance(spec, dict):
        raise InputError(f"{where}: module spec must be an object")
    kind = spec.get("kind", "explicit")

    def ref(key):
        name = spec.get(key)
        if name not in known:
            raise InputError(f"{where}: unresolved module reference {name!r}")
        return known[name]

    if kind == "simple":
        return simple_module(A, _vertex(A, spec.get("vertex"), where))
    if kind == "projective":
        return indecomposable_projective(A, _vertex(A, spec.get("vertex"), where))
    if kind == "truncated":
        length = spec.get("length")
        if not isinstance(length, int) or length < 1:
            raise InputError(f"{where}: truncated needs a positive integer length")
        return truncated_projective(A, _vertex(A, spec.get("vertex"), where), length)
    if kind == "zero":
        return zero_module(A)
    if kind == "regular":
        return regular_module(A)
    if kind == "sum":
        names = spec.get("of", [])
        if any(n not in known for n in names):
            raise InputError(f"{where}: unresolved summand")
        return direct_sum(*[known[n] for n in names])[0]
    if kind == "syzygy":
        return syzygy(ref("of"))
    if kind == "cosyzygy":
        return _raw_cosyzygy(ref("of")).cok
    if kind == "explicit":
        dim = spec.get("dim")
        action = spec.get("action")
        if not isinstance(dim, int) or dim < 0 or not isinstance(action, dict):
            raise InputError(f"{where}: explicit module needs dim and action")
        gens = {}
        for g in A.gens:
            label = A.labels[g]
            if label not in action:
                raise InputError(f"{where}: missing action of {label}")
            gens[g] = as_int_matrix(action[label], dim, dim, f"{where}.action.{label}")
        extra = set(action) - {A.labels[g] for g in A.gens}
        if extra:
            raise InputError(f"{where}: unknown action labels {sorted(extra)}")
        try:
            return Module.from_generators(A, gens)
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from exc
    raise InputError(f"{where}: unknown module kind {kind!r}")


def _complex_literal(ws: Workspace, spec: dict, where: str) -> SplicedComplex:
    """``{degrees, differentials, left_module?, left_map?, right_module?, right_map?}``.

    The window is the span of ``degrees``; ``left_map`` is ``X^m x L`` and
    ``right_map`` is ``C x X^n``.  Missing tails are zero.
    """
    A = ws.algebra
    degs = spec.get("degrees")
    if not isinstance(degs, dict) or not degs:
        raise InputError(f"{where}: degrees must be a non-empty object")
    try:
        comps = {int(i): ws.modules[r] for i, r in degs.items()}
    except (KeyError, ValueError) as exc:
        raise InputError(f"{where}: bad degree entry {exc}") from exc
    m, n = min(comps), max(comps)
    Z = zero_module(A)
    diffs = {}
    for i, mat in spec.get("differentials", {}).items():
        i = int(i)
        src, tgt = comps.get(i, Z), comps.get(i + 1, Z)
        diffs[i] = as_int_matrix(mat, tgt.dim, src.dim, f"{where}.differentials.{i}")

    def tail(key):
        name = spec.get(key)
        if name is None:
            return Z
        if name not in ws.modules:
            raise InputError(f"{where}: unresolved module reference {name!r}")
        return ws.modules[name]

    L, C = tail("left_module"), tail("right_module")
    Xm, Xn = comps.get(m, Z), comps.get(n, Z)
    iota = as_int_matrix(spec.get("left_map"), Xm.dim, L.dim, f"{where}.left_map")
    pi = as_int_matrix(spec.get("right_map"), C.dim, Xn.dim, f"{where}.right_map")
    try:
        W = BoundedComplex(A, comps, diffs)
        return SplicedComplex(ws.ctx, W, m, n, L, iota, C, pi)
    except (ValueError, NotMember) as exc:
        raise InputError(f"{where}: {exc}") from exc


def build_object(ws: Workspace, spec: dict, where: str):
    """Morphism object or spliced complex from its JSON description."""
    A, ctx = ws.algebra, ws.ctx
    if not isinstance(spec, dict):
        raise InputError(f"{where}: object spec must be an object")
    if "degrees" in spec:
        return _complex_literal(ws, spec, where)
    if "complex" in spec:
        kind = spec["complex"]
        if kind == "F":
            a = ws.objects.get(spec.get("of"))
            if not isinstance(a, MorE):
                raise InputError(f"{where}: F needs an epi object")
            return functor_F(a)
        if kind in ("resolution", "stalk"):
            M = ws.modules.get(spec.get("module"))
            if M is None:
                raise InputError(f"{where}: unresolved module")
            if kind == "resolution":
                return complete_resolution_spliced(M, ctx, name=f"CR({spec['module']})")
            return stalk(ctx, M, int(spec.get("degree", 0)))
        if kind == "bounded":
            comps = {int(k): ws.modules[v] for k, v in spec.get("comps", {}).items()}
            diffs = {}
            for k, m in spec.get("diffs", {}).items():
                k = int(k)
                src = comps.get(k, zero_module(A))
                tgt = comps.get(k + 1, zero_module(A))
                diffs[k] = as_int_matrix(m, tgt.dim, src.dim, f"{where}.diffs.{k}")
            try:
                X = BoundedComplex(A, comps, diffs)
            except ValueError as exc:
                raise InputError(f"{where}: {exc}") from exc
            return spliced_from_bounded(ctx, X)
        raise InputError(f"{where}: unknown complex kind {kind!r}")
    mono = spec.get("kind") == "mono"
    src_key, tgt_key = ("z", "x") if mono else ("x", "t")
    try:
        X = ws.modules[spec[src_key]]
        T = ws.modules[spec[tgt_key]]
    except KeyError as exc:
        raise InputError(f"{where}: unresolved module reference {exc}") from exc
    alpha = as_int_matrix(spec.get("matrix"), T.dim, X.dim, f"{where}.matrix")
    cls = MorM if mono else MorE
    try:
        return cls(ctx, X, T, alpha)
    except (ValueError, NotMember) as exc:
        raise InputError(f"{where}: {exc}") from exc


def load_workspace(ref, cap: int = 64) -> Workspace:
    """Load and validate a workspace file (or a bundled workspace name)."""
    path = workspace_path(str(ref))
    data = load_json(path)
    if not isinstance(data, dict) or "algebra" not in data:
        raise InputError(f"{path}: workspace needs an 'algebra' field")
    A = load_algebra(data["algebra"], base_dir=path.parent)
    known = {}
    for name, spec in data.get("modules", {}).items():
        M = build_module(A, spec, known, f"modules.{name}")
        known[name] = M
    cspec = data.get("context", {"mode": "gorenstein"})
    mode = cspec.get("mode", "gorenstein")
    try:
        if mode == "list":
            gens = cspec.get("generators", [])
            if any(g not in known for g in gens):
                raise InputError("context: unresolved generator")
            ctx = make_context(A, "list", [known[g] for g in gens], cap=cap)
        else:
            ctx = make_context(A, mode, cap=cap)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"context: {exc}") from exc
    for name, M in known.items():
        if M.name is None or M.tag is None:
            M.name = name
    ws = Workspace(A, ctx, known, {}, [], data, path.parent)
    for name, spec in data.get("objects", {}).items():
        try:
            obj = build_object(ws, spec, f"objects.{name}")
        except InputError:
            raise
        except T2Error as exc:
            raise InputError(f"objects.{name}: {type(exc).__name__}: {exc}") from exc
        obj.name = name
        ws.objects[name] = obj
    seeds = data.get("seeds", [])
    if any(s not in known for s in seeds):
        raise InputError("seeds: unresolved module")
    ws.seeds = [known[s] for s in seeds]
    return ws


def default_seed_modules(ws: Workspace) -> list:
    if ws.seeds:
        return ws.seeds
    return list(ws.modules.values())

