"""Command-line front end.

Commands::

    t2stable algebra-info <fixture-or-file> [--json] [--cap N]
    t2stable compute --workspace W <expr...> [--json]
    t2stable verify --workspace W --suite S [--swapped] [--seed N] [--json] [--quiet]

Exit codes: 0 pass, 1 check failure (or unresolved name), 2 input error.

Algebra file (JSON)::

    {"p": 2, "vertices": ["1"],
     "arrows": [{"name": "x", "src": "1", "tgt": "1"}],
     "relations": [[{"coeff": 1, "path": ["x", "x"]}]],
     "nilpotency_bound": 2}

Paths list arrow names in product order: ``["a", "b"]`` is ``a*b``, which
runs ``b`` first.  The projective at vertex ``v`` is spanned by the paths
ending at ``v``.

Workspace file (JSON)::

    {"algebra": "r2" | "path/to/algebra.json" | {...inline...},
     "context": {"mode": "gorenstein"}
              | {"mode": "list", "generators": [moduleName, ...]},
     "modules": {name: moduleSpec, ...},
     "objects": {name: objectSpec, ...},
     "seeds": [moduleName, ...]}

``moduleSpec`` is one of ``{"kind": "simple"|"projective", "vertex": v}``,
``{"kind": "truncated", "vertex": v, "length": l}``, ``{"kind": "zero"}``,
``{"kind": "regular"}``, ``{"kind": "sum", "of": [names]}``,
``{"kind": "syzygy"|"cosyzygy", "of": name}`` or
``{"dim": n, "action": {label: n x n matrix}}`` giving the right action of
the idempotents and arrows on column vectors (``action[b] @ v = v*b``).

``objectSpec`` is a morphism literal ``{"x": X, "t": T, "matrix": [...]}``
(an epimorphism; add ``"kind": "mono"`` with ``"z"``/``"x"`` for a
monomorphism) or a complex: ``{"complex": "F", "of": objectName}``,
``{"complex": "resolution", "module": M}``,
``{"complex": "stalk", "module": P, "degree": k}`` or
``{"complex": "bounded", "comps": {k: module}, "diffs": {k: matrix}}``.
A general spliced complex is ``{"degrees": {k: module}, "differentials":
{k: matrix}, "left_module": L, "left_map": X^m x L, "right_module": C,
"right_map": C x X^n}`` with both tails optional.
Matrices are row-major integer arrays, shaped target x source.

Bundled workspaces: ``r2``, ``a9`` and ``atfr4``.

Compute expressions: ``ext M N i``, ``stablehom A B``, ``cm M``, ``F a``,
``z1lambda S``, ``qhom S S'``, ``t2 S``.  A complex argument may be written
``F(a)`` or ``CR(M)``.
"""
from __future__ import annotations

import argparse
import json
import sys

from .algebra import injective_dimension, is_iwanaga_gorenstein
from .bridge import (
    TStructurePair,
    VerificationReport,
    compare_contexts_report,
    functor_F,
    quotient_hom_dim,
    roundtrip_report,
    sample_closure,
    stable_cm_of_t2,
    standard_seeds,
    verify_stable_tstructure,
    verify_triangle_of_recollements,
    z1_lambda,
)
from .complexes import SplicedComplex, complete_resolution_spliced, stalk
from .errors import InputError, T2Error
from .fixtures import load_algebra
from .frobenius import ext_dim, is_member, make_context
from .modules import Module, is_projective, stable_hom_dim, truncated_projectives
from .morphisms import MorE, MorObject, mor_stable_hom
from .workspace import Workspace, default_seed_modules, load_workspace

SUITES = ("tstructure", "recollement", "roundtrip", "example-atfr4")


class Unresolved(Exception):
    pass


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif not getattr(args, "quiet", False):
        print(text)


# algebra-info -----------------------------------------------------------------

def cmd_algebra_info(args) -> int:
    A = load_algebra(args.path)
    right = injective_dimension(A, "right", args.cap)
    left = injective_dimension(A, "left", args.cap)
    ok, d = is_iwanaga_gorenstein(A, args.cap)

    def fmt(x):
        return str(x) if isinstance(x, int) else ">cap"

    verdict = f"Gorenstein d={d}" if ok else "not Gorenstein within cap"
    text = f"dim {A.dim}, idim {fmt(right)}/{fmt(left)}, {verdict}"
    payload = {"dim": A.dim, "idim_right": right if isinstance(right, int) else None,
               "idim_left": left if isinstance(left, int) else None,
               "gorenstein": ok, "d": d, "vertices": A.n_vertices, "p": A.p}
    _emit(args, payload, text)
    return 0


# compute ------------------------------------------------------------------------

def _resolve(ws: Workspace, token: str):
    if token in ws.objects:
        return ws.objects[token]
    if token in ws.modules:
        return ws.modules[token]
    for prefix in ("F(", "CR("):
        if token.startswith(prefix) and token.endswith(")"):
            inner = token[len(prefix):-1]
            if prefix == "F(":
                a = _resolve(ws, inner)
                if not isinstance(a, MorE):
                    raise Unresolved(f"{inner!r} is not an epi object")
                return functor_F(a)
            M = _resolve(ws, inner)
            if not isinstance(M, Module):
                raise Unresolved(f"{inner!r} is not a module")
            return complete_resolution_spliced(M, ws.ctx)
    raise Unresolved(f"unresolved name {token!r}")


def _module(ws, token) -> Module:
    M = _resolve(ws, token)
    if not isinstance(M, Module):
        raise Unresolved(f"{token!r} is not a module")
    return M


def _complex(ws, token) -> SplicedComplex:
    S = _resolve(ws, token)
    if isinstance(S, MorE):
        S = functor_F(S)
    if isinstance(S, Module):
        S = stalk(ws.ctx, S, 0) if is_projective(S) else None
    if not isinstance(S, SplicedComplex):
        raise Unresolved(f"{token!r} is not a complex")
    return S


def _complex_payload(S: SplicedComplex) -> dict:
    W = S.window
    return {
        "window": [S.m, S.n],
        "dims": {str(i): S.comp(i).dim for i in range(S.m, S.n + 1)},
        "diffs": {str(i): W.diff(i).tolist() for i in range(S.m, S.n)},
        "left": S.left.dim,
        "right": S.right.dim,
        "homology": {str(i): S.homology_dim(i) for i in S.homology_range()},
    }


def evaluate(ws: Workspace, tokens: list):
    """Evaluate a compute expression; returns ``(payload, text)``."""
    if not tokens:
        raise InputError("empty expression")
    op, rest = tokens[0], tokens[1:]

    def need(n):
        if len(rest) != n:
            raise InputError(f"{op} expects {n} arguments")

    if op == "ext":
        need(3)
        try:
            i = int(rest[2])
        except ValueError as exc:
            raise InputError("ext degree must be an integer") from exc
        v = ext_dim(_module(ws, rest[0]), _module(ws, rest[1]), i)
        return {"ext": v}, str(v)
    if op == "stablehom":
        need(2)
        x, y = _resolve(ws, rest[0]), _resolve(ws, rest[1])
        if isinstance(x, MorObject) and isinstance(y, MorObject):
            v = mor_stable_hom(x, y)[0]
        elif isinstance(x, Module) and isinstance(y, Module):
            v = stable_hom_dim(x, y)
        else:
            raise Unresolved("stablehom needs two modules or two objects")
        return {"stablehom": v}, str(v)
    if op == "cm":
        need(1)
        v = is_member(_module(ws, rest[0]), ws.ctx)
        return {"cm": v}, "true" if v else "false"
    if op == "F":
        need(1)
        S = _complex(ws, rest[0]) if rest[0].startswith("F(") else None
        if S is None:
            a = _resolve(ws, rest[0])
            if not isinstance(a, MorE):
                raise Unresolved(f"{rest[0]!r} is not an epi object")
            S = functor_F(a)
        pl = _complex_payload(S)
        text = f"window [{S.m},{S.n}] dims {pl['dims']} left {S.left.dim} right {S.right.dim}"
        return pl, text
    if op == "z1lambda":
        need(1)
        b = z1_lambda(_complex(ws, rest[0]))
        pl = {"x": b.source.dim, "t": b.target.dim, "matrix": b.alpha.tolist()}
        return pl, f"({b.source.dim} -> {b.target.dim}) {pl['matrix']}"
    if op == "qhom":
        need(2)
        v = quotient_hom_dim(_complex(ws, rest[0]), _complex(ws, rest[1]))
        return {"qhom": v}, str(v)
    if op == "t2":
        need(1)
        M = stable_cm_of_t2(_complex(ws, rest[0]))
        proj = is_projective(M)
        return {"dim": M.dim, "projective": proj}, f"dim {M.dim}, projective {str(proj).lower()}"
    raise InputError(f"unknown expression {op!r}")


def cmd_compute(args) -> int:
    ws = load_workspace(args.workspace, cap=args.cap)
    tokens = [t for part in args.expr for t in part.split()]
    try:
        payload, text = evaluate(ws, tokens)
    except Unresolved as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    payload = {"expr": " ".join(tokens), "result": payload}
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)
    return 0


# verify -------------------------------------------------------------------------

def _samples(ws: Workspace, seed=None):
    mor = [o for o in ws.objects.values() if isinstance(o, MorE)]
    seeds = standard_seeds(ws.ctx, default_seed_modules(ws)) + mor
    samples = sample_closure(seeds, cap=50, seed=seed)
    complexes = [functor_F(a) for a in samples]
    return samples, complexes


def run_suite(ws: Workspace, suite: str, swapped: bool = False, seed=None) -> VerificationReport:
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}")
    if suite == "example-atfr4":
        cmp_ref = ws.raw.get("compare", {}).get("algebra", "b4")
        B = load_algebra(cmp_ref, base_dir=ws.base_dir)
        big = make_context(ws.algebra, cap=ws.ctx.cap)
        rep = compare_contexts_report(ws.ctx, big, make_context(B, cap=ws.ctx.cap),
                                      truncated_projectives(ws.algebra), truncated_projectives(B))
        samples, complexes = _samples(ws, seed)
        rep.extend(verify_triangle_of_recollements(ws.ctx, complexes, samples))
        rep.name = "example-atfr4"
        return rep
    samples, complexes = _samples(ws, seed)
    if suite == "tstructure":
        rep = VerificationReport("tstructure")
        for pair in TStructurePair:
            rep.extend(verify_stable_tstructure(ws.ctx, pair, complexes, swapped=swapped))
        return rep
    if suite == "recollement":
        return verify_triangle_of_recollements(ws.ctx, complexes, samples, swapped=swapped)
    extra = [o for o in ws.objects.values() if isinstance(o, SplicedComplex)]
    extra += [stalk(ws.ctx, P, 0) for P in ws.ctx.projectives]
    return roundtrip_report(ws.ctx, samples, extra)


def cmd_verify(args) -> int:
    ws = load_workspace(args.workspace, cap=args.cap)
    rep = run_suite(ws, args.suite, swapped=args.swapped, seed=args.seed)
    if args.json:
        print(json.dumps({"suite": args.suite, "passed": rep.passed, "checks": rep.to_json(),
                          "data": rep.data}, sort_keys=True))
    elif not args.quiet:
        print(rep.table())
        if rep.data.get("table") is not None:
            print("stable table:", rep.data["table"], "objects:", rep.data["small"])
    if not rep.passed:
        print(json.dumps([c.as_dict() for c in rep.failures], sort_keys=True), file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="t2stable", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", action="store_true", help="suppress the human table")
    common.add_argument("--cap", type=int, default=64, help="resolution cap")
    common.add_argument("--seed", type=int, default=None, help="sampling order")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra-info", parents=[common], help="dimension and Gorenstein data")
    p.add_argument("path", help="fixture name (r2, a9, b4, t6) or algebra file")
    p.set_defaults(func=cmd_algebra_info)

    p = sub.add_parser("compute", parents=[common], help="evaluate an expression")
    p.add_argument("--workspace", required=True)
    p.add_argument("expr", nargs="+")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--workspace", required=True)
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--swapped", action="store_true",
                   help="negative control: test Hom-vanishing in the wrong direction")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": f"input error: {exc}"}), file=sys.stderr)
        return 2
    except T2Error as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
