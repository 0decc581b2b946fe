import json

import pytest

from t2stable.cli import main
from t2stable.errors import InputError
from t2stable.workspace import load_workspace


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name,expected", [
    ("r2", "dim 2, idim 0/0, Gorenstein d=0"),
    ("a9", "dim 9, idim 0/0, Gorenstein d=0"),
    ("b4", "dim 4, idim 0/0, Gorenstein d=0"),
    ("t6", "dim 6, idim 1/1, Gorenstein d=1"),
])
def test_algebra_info(capsys, name, expected):
    code, out, _ = run(capsys, "algebra-info", name)
    assert code == 0 and out.strip() == expected


def test_algebra_info_json(capsys):
    code, out, _ = run(capsys, "algebra-info", "t6", "--json")
    data = json.loads(out)
    assert code == 0 and data["d"] == 1 and data["gorenstein"] is True


def test_algebra_info_file(capsys, tmp_path):
    f = tmp_path / "loop.json"
    f.write_text(json.dumps({"p": 2, "vertices": ["1"], "arrows": [{"name": "x", "src": "1", "tgt": "1"}],
                             "relations": [[{"coeff": 1, "path": ["x", "x", "x"]}]], "nilpotency_bound": 3}))
    code, out, _ = run(capsys, "algebra-info", str(f))
    assert code == 0 and out.startswith("dim 3")


@pytest.mark.parametrize("content", ["{not json", '{"p": 2}', '{"p": 2, "vertices": [], "arrows": []}',
                                     '{"p": 2, "vertices": ["1"], "arrows": [{"name": "x", "src": "1", "tgt": "9"}], '
                                     '"nilpotency_bound": 2}'])
def test_malformed_algebra(capsys, tmp_path, content):
    f = tmp_path / "bad.json"
    f.write_text(content)
    code, _, err = run(capsys, "algebra-info", str(f))
    assert code == 2 and "input error" in err


def test_missing_file(capsys):
    code, _, _ = run(capsys, "algebra-info", "/nonexistent/alg.json")
    assert code == 2


@pytest.mark.parametrize("expr,expected", [
    (["ext", "k", "k", "1"], "1"),
    (["cm", "k"], "true"),
    (["qhom", "F(a)", "F(a)"], "1"),
    (["stablehom", "kk", "kk"], "1"),
    (["stablehom", "k", "R2"], "0"),
    (["t2", "F(a)"], "dim 3, projective false"),
    (["qhom", "CR(k)", "F(kk)"], "1"),
    (["qhom", "P0", "P0"], "0"),
    (["ext k k 1"], "1"),
])
def test_compute(capsys, expr, expected):
    code, out, _ = run(capsys, "compute", "--workspace", "r2", *expr)
    assert code == 0 and out.strip() == expected


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--workspace", "r2", "--json", "z1lambda", "F(a)")
    data = json.loads(out)
    assert code == 0 and data["expr"] == "z1lambda F(a)"
    assert set(data["result"]) == {"x", "t", "matrix"}


def test_compute_F_payload(capsys):
    code, out, _ = run(capsys, "compute", "--workspace", "r2", "--json", "F", "a")
    res = json.loads(out)["result"]
    assert res["window"] == [0, 1] and res["homology"] == {"0": 1, "1": 0, "2": 0}


def test_compute_unresolved(capsys):
    code, _, err = run(capsys, "compute", "--workspace", "r2", "cm", "nosuch")
    assert code == 1 and "unresolved" in err


def test_compute_bad_expr(capsys):
    assert run(capsys, "compute", "--workspace", "r2", "frobnicate", "k")[0] == 2
    assert run(capsys, "compute", "--workspace", "r2", "ext", "k", "k")[0] == 2


def test_argparse_error(capsys):
    assert run(capsys, "verify", "--workspace", "r2", "--suite", "nosuch")[0] == 2
    assert run(capsys)[0] == 2


@pytest.mark.parametrize("ws,suite", [("r2", "recollement"), ("r2", "tstructure"), ("r2", "roundtrip"),
                                      ("a9", "roundtrip"), ("atfr4", "example-atfr4")])
def test_verify_passes(capsys, ws, suite):
    code, out, _ = run(capsys, "verify", "--workspace", ws, "--suite", suite)
    assert code == 0, out
    assert "PASS" in out


def test_verify_atfr4_prints_table(capsys):
    _, out, _ = run(capsys, "verify", "--workspace", "atfr4", "--suite", "example-atfr4")
    assert "stable table: [[1, 0], [0, 1]]" in out


def test_verify_swapped(capsys):
    code, _, err = run(capsys, "verify", "--workspace", "r2", "--suite", "tstructure", "--swapped")
    assert code == 1
    fails = json.loads(err)
    assert fails and "witness" in fails[0]


def test_quiet(capsys):
    code, out, _ = run(capsys, "verify", "--workspace", "r2", "--suite", "roundtrip", "--quiet")
    assert code == 0 and out == ""


def test_deterministic(capsys):
    args = ("verify", "--workspace", "a9", "--suite", "recollement", "--json", "--seed", "1")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second and first[0] == 0


def test_workspace_errors(tmp_path, capsys):
    bad = {
        "ref": {"algebra": "r2", "modules": {"k": {"kind": "simple", "vertex": "1"}},
                "objects": {"a": {"x": "k", "t": "nosuch", "matrix": [[1]]}}},
        "shape": {"algebra": "r2", "modules": {"k": {"kind": "simple", "vertex": "1"}},
                  "objects": {"a": {"x": "k", "t": "k", "matrix": [[1, 0]]}}},
        "notepi": {"algebra": "r2", "modules": {"k": {"kind": "simple", "vertex": "1"},
                                                "R": {"kind": "projective", "vertex": "1"}},
                   "objects": {"a": {"x": "k", "t": "R", "matrix": [[0], [1]]}}},
        "vertex": {"algebra": "r2", "modules": {"k": {"kind": "simple", "vertex": "7"}}},
        "dd": {"algebra": "r2", "modules": {"R": {"kind": "projective", "vertex": "1"}},
               "objects": {"X": {"degrees": {"0": "R", "1": "R", "2": "R"},
                                 "differentials": {"0": [[1, 0], [0, 1]], "1": [[1, 0], [0, 1]]}}}},
    }
    for name, data in bad.items():
        f = tmp_path / f"{name}.json"
        f.write_text(json.dumps(data))
        with pytest.raises(InputError):
            load_workspace(str(f))
        assert run(capsys, "compute", "--workspace", str(f), "cm", "k")[0] == 2


def test_complex_literal(tmp_path):
    ws = load_workspace("r2")
    X = ws.obj("Xs")
    assert X.left.dim == 1 and X.homology_dim(1) == 1
