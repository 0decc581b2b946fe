"""Bundled algebras and JSON loading of presentations and workspaces.

``t6`` is never stored: it is rebuilt as ``triangular2(r2)`` on every load.
"""
from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

import numpy as np

from .algebra import Algebra, QuiverPresentation, build_algebra, triangular2
from .errors import InputError, T2Error

FIXTURE_DIR = Path(__file__).with_name("fixtures")
STORED = ("r2", "a9", "b4")
DERIVED = {"t6": ("r2", triangular2)}
WORKSPACES = {"r2": "ws_r2.json", "a9": "ws_a9.json", "atfr4": "ws_atfr4.json"}


def fixture_names() -> list:
    return list(STORED) + list(DERIVED)


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise InputError(f"{where}: field {key!r} has the wrong type")
    return val


def parse_presentation(data: dict, where: str = "algebra") -> QuiverPresentation:
    """Validate the JSON form of a quiver with relations.

    Raises:
        InputError: on any schema violation.
    """
    p = _require(data, "p", int, where)
    vertices = [str(v) for v in _require(data, "vertices", list, where)]
    if not vertices:
        raise InputError(f"{where}: no vertices")
    arrows = []
    for i, a in enumerate(_require(data, "arrows", list, where)):
        w = f"{where}.arrows[{i}]"
        name = str(_require(a, "name", str, w))
        src, tgt = str(_require(a, "src", (str, int), w)), str(_require(a, "tgt", (str, int), w))
        if src not in vertices or tgt not in vertices:
            raise InputError(f"{w}: unknown vertex")
        arrows.append((name, src, tgt))
    names = {a[0] for a in arrows}
    if len(names) != len(arrows):
        raise InputError(f"{where}: duplicate arrow names")
    relations = []
    for i, rel in enumerate(data.get("relations", [])):
        if not isinstance(rel, list):
            raise InputError(f"{where}.relations[{i}]: expected a list of terms")
        terms = []
        for j, t in enumerate(rel):
            w = f"{where}.relations[{i}][{j}]"
            coeff = _require(t, "coeff", int, w)
            path = [str(x) for x in _require(t, "path", list, w)]
            if any(x not in names for x in path):
                raise InputError(f"{w}: unknown arrow in path")
            terms.append((coeff, path))
        relations.append(terms)
    bound = _require(data, "nilpotency_bound", int, where)
    return QuiverPresentation(p, vertices, arrows, relations, bound)


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def algebra_from_json(data: dict, name=None) -> Algebra:
    pres = parse_presentation(data)
    try:
        return build_algebra(pres, name=name or data.get("name"))
    except T2Error:
        raise
    except (ValueError, KeyError) as exc:
        raise InputError(f"invalid presentation: {exc}") from exc


@lru_cache(maxsize=None)
def load_fixture(name: str) -> Algebra:
    """One of ``r2``, ``a9``, ``b4`` or the derived ``t6``."""
    if name in DERIVED:
        base, make = DERIVED[name]
        A = make(load_fixture(base))
        A.name = name
        return A
    if name not in STORED:
        raise InputError(f"unknown fixture {name!r}")
    return algebra_from_json(load_json(FIXTURE_DIR / f"{name}.json"), name=name)


def load_algebra(ref, base_dir=None) -> Algebra:
    """Fixture name, path to a presentation file or an inline presentation."""
    if isinstance(ref, dict):
        return algebra_from_json(ref)
    if not isinstance(ref, str):
        raise InputError("algebra reference must be a name, a path or an object")
    if ref in STORED or ref in DERIVED:
        return load_fixture(ref)
    path = Path(ref)
    if base_dir is not None and not path.is_absolute():
        path = Path(base_dir) / path
    return algebra_from_json(load_json(path), name=path.stem)


def workspace_path(ref: str) -> Path:
    """Resolve a bundled workspace name (``r2``, ``a9``, ``atfr4``) or a path."""
    if ref in WORKSPACES:
        return FIXTURE_DIR / WORKSPACES[ref]
    return Path(ref)


def as_int_matrix(data, rows: int, cols: int, where: str) -> np.ndarray:
    arr = np.asarray(data if data is not None else [], dtype=np.int64)
    if arr.size == 0 and rows * cols == 0:
        return np.zeros((rows, cols), dtype=np.int64)
    if arr.shape != (rows, cols):
        raise InputError(f"{where}: expected a {rows}x{cols} matrix, got shape {arr.shape}")
    return arr
