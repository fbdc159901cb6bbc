import json
import shutil
import subprocess

import pytest

from pathcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def chain_doc(vertices, *terms, space=None):
    doc = {"vertices": vertices, "terms": [{"path": list(p), "coeff": c} for p, c in terms]}
    if space:
        doc["space"] = space
    return doc


# -- dims

@pytest.mark.parametrize(
    "vertices, top, lam, reg",
    [("a,b,c", 2, [3, 9, 27], [3, 6, 12]), ("a", 2, [1, 1, 1], [1, 0, 0]), ("a,b", 3, [2, 4, 8, 16], [2, 2, 2, 2])],
)
def test_dims(capsys, vertices, top, lam, reg):
    code, out, _ = run(capsys, "dims", "--vertices", vertices, "--max-degree", str(top))
    assert code == 0
    doc = json.loads(out)
    assert doc["lambda"] == lam and doc["regular"] == reg


def test_dims_human(capsys):
    code, out, _ = run(capsys, "dims", "--vertices", "a,b", "--max-degree", "1", "--format", "human")
    assert code == 0 and out.splitlines()[1].split() == ["lambda", "2", "4"]


def test_dims_over_cap(capsys):
    code, _, err = run(capsys, "dims", "--vertices", "a,b,c", "--max-degree", "4", "--basis-cap", "100")
    assert code == 4 and err.startswith("pathcalc: cap:") and err.count("\n") == 1


# -- apply

def test_apply_boundary(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "boundary", "weighting": {"a": "1", "b": "2"}})
    ch = write(tmp_path, "ch.json", chain_doc(["a", "b"], ("ab", "1")))
    code, out, _ = run(capsys, "apply", "--op", op, "--chain", ch)
    assert code == 0
    assert json.loads(out)["terms"] == [{"path": ["a"], "coeff": "-2"}, {"path": ["b"], "coeff": "1"}]


def test_apply_degeneracy(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "degeneracy", "index": 0})
    ch = write(tmp_path, "ch.json", chain_doc(["a", "b"], ("ab", "1")))
    code, out, _ = run(capsys, "apply", "--op", op, "--chain", ch)
    assert code == 0 and json.loads(out)["terms"] == [{"path": ["a", "a", "b"], "coeff": "1"}]


def test_apply_regular_face_gives_zero(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "regular_face", "index": 1, "weighting": {"a": "1", "b": "2", "c": "3"}})
    ch = write(tmp_path, "ch.json", chain_doc(["a", "b", "c"], ("aba", "1"), space="regular"))
    code, out, _ = run(capsys, "apply", "--op", op, "--chain", ch)
    assert code == 0
    assert json.loads(out) == {"vertices": ["a", "b", "c"], "terms": [], "space": "regular"}


def test_apply_irregular_chain_to_regular_operator(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "reduced_partial", "vertex": "a"})
    ch = write(tmp_path, "ch.json", chain_doc(["a", "b"], ("aab", "1")))
    code, _, err = run(capsys, "apply", "--op", op, "--chain", ch)
    assert code == 3 and err.startswith("pathcalc: domain:")


def test_apply_parse_error(capsys, tmp_path):
    op = tmp_path / "op.json"
    op.write_text("{broken")
    ch = write(tmp_path, "ch.json", chain_doc(["a", "b"], ("ab", "1")))
    code, _, err = run(capsys, "apply", "--op", str(op), "--chain", ch)
    assert code == 2 and err.startswith("pathcalc: parse:")


def test_apply_vertex_conflict(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "degeneracy", "index": 0})
    ch = write(tmp_path, "ch.json", chain_doc(["a", "b"], ("ab", "1")))
    code, _, err = run(capsys, "apply", "--op", op, "--chain", ch, "--vertices", "a,b,c")
    assert code == 2 and "conflict" in err


def test_apply_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "apply", "--op", str(tmp_path / "nope.json"), "--chain", str(tmp_path / "x.json"))
    assert code == 2 and err.startswith("pathcalc: usage:")


# -- matrix

def test_matrix_characteristic_boundary(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "boundary", "weighting": {"a": "1", "b": "0"}})
    code, out, _ = run(capsys, "matrix", "--op", op, "--degree", "1", "--vertices", "a,b")
    doc = json.loads(out)
    assert code == 0 and (doc["rows"], doc["cols"]) == (2, 4)
    assert doc["entries"] == [[1, 1, "1"], [1, 2, "-1"]]


def test_matrix_zero_weighting(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "boundary", "weighting": {"a": "0", "b": "0"}})
    for n in ("0", "2"):
        code, out, _ = run(capsys, "matrix", "--op", op, "--degree", n, "--vertices", "a,b")
        assert code == 0 and json.loads(out)["entries"] == []


def test_matrix_transpose_pair(capsys, tmp_path):
    f = {"a": "1", "b": "2"}
    d = write(tmp_path, "d.json", {"kind": "coboundary", "weighting": f, "vertices": ["a", "b"]})
    b = write(tmp_path, "b.json", {"kind": "boundary", "weighting": f, "vertices": ["a", "b"]})
    _, out_d, _ = run(capsys, "matrix", "--op", d, "--degree", "0")
    _, out_b, _ = run(capsys, "matrix", "--op", b, "--degree", "1")
    md, mb = json.loads(out_d), json.loads(out_b)
    assert (md["rows"], md["cols"]) == (mb["cols"], mb["rows"])
    assert sorted([c, r, v] for r, c, v in mb["entries"]) == md["entries"]


def test_matrix_csv_and_regular_space(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "coboundary", "weighting": {"a": "1", "b": "1", "c": "1"}})
    code, out, _ = run(capsys, "matrix", "--op", op, "--degree", "1", "--space", "regular", "--format", "csv", "--vertices", "a,b,c")
    assert code == 0 and out.startswith("row,col,value\n")
    reg = write(tmp_path, "reg.json", {"kind": "regular_coboundary", "weighting": {"a": "1", "b": "1", "c": "1"}})
    _, out2, _ = run(capsys, "matrix", "--op", reg, "--degree", "1", "--format", "csv", "--vertices", "a,b,c")
    assert out == out2


def test_matrix_regular_operator_on_full_space(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "reduced_diff", "vertex": "a"})
    code, _, err = run(capsys, "matrix", "--op", op, "--degree", "1", "--space", "full", "--vertices", "a,b")
    assert code == 3


def test_matrix_needs_vertices(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "degeneracy", "index": 0})
    code, _, err = run(capsys, "matrix", "--op", op, "--degree", "1")
    assert code == 2


def test_matrix_workers_byte_identical(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"kind": "coboundary", "weighting": {"a": "1", "b": "-1/2", "c": "3"}})
    outs = {run(capsys, "matrix", "--op", op, "--degree", "2", "--vertices", "a,b,c", "--workers", w)[1] for w in ("1", "3")}
    assert len(outs) == 1


# -- verify

def test_verify_small_scope(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "main1", "--vertices", "a,b", "--max-degree", "2", "--trials", "2")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["fail"] == 0


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "anticomm", "--vertices", "a,b", "--max-degree", "1", "--trials", "0")
    assert code == 1 and json.loads(out)["summary"]["fail"] > 0


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "main3")
    assert code == 2 and err.startswith("pathcalc: usage:")


def test_verify_conflicting_scope_flags(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "usual", "--vertices", "a,b", "--sizes", "2")
    assert code == 2


# -- counterexample

def test_counterexample_found(capsys):
    code, out, _ = run(capsys, "counterexample", "--identity", "reg-face-swap-adjacent", "--vertices", "a,b")
    doc = json.loads(out)
    assert code == 0 and doc["found"] and doc["witness"]["path"] == ["a", "b", "a"]


def test_counterexample_three_vertices(capsys):
    code, out, _ = run(capsys, "counterexample", "--identity", "reg-coface-equal", "--vertices", "a,b,c")
    assert code == 0 and json.loads(out)["found"]


def test_counterexample_not_found(capsys):
    code, out, _ = run(capsys, "counterexample", "--identity", "reg-face-swap-adjacent", "--vertices", "a")
    doc = json.loads(out)
    assert code == 1 and doc["found"] is False and "witness" not in doc


# -- misc

def test_bad_environment_cap(capsys, monkeypatch):
    monkeypatch.setenv("PATHCALC_BASIS_CAP", "lots")
    code, _, err = run(capsys, "dims", "--vertices", "a")
    assert code == 2 and err.startswith("pathcalc: usage:")


def test_no_command(capsys):
    assert run(capsys)[0] == 2


@pytest.mark.skipif(shutil.which("pathcalc") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["pathcalc", "dims", "--vertices", "a,b", "--max-degree", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["lambda"] == [2, 4]
