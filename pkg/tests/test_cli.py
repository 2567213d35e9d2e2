import json
import shutil
import subprocess

import pytest

from facetlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def octahedron(tmp_path, capsys):
    path = tmp_path / "oct.json"
    assert run(capsys, "gen", "cross-polytope", "--d", "2", "-o", str(path))[0] == 0
    return path


def test_gen_then_graph(capsys, octahedron):
    code, out, _ = run(capsys, "graph", str(octahedron), "--connectivity")
    assert code == 0
    assert json.loads(out) == {"kappa": 3, "components": 1, "order": 8, "size": 12}


def test_graph_with_removals(capsys, octahedron):
    code, out, _ = run(capsys, "graph", str(octahedron), "--remove", "1-3-5,1-3-6")
    assert code == 0 and json.loads(out)["order"] == 6
    code, out, _ = run(capsys, "graph", str(octahedron), "--remove", "1-2-3")
    assert code == 1


def test_betti_torus(capsys, tmp_path):
    path = tmp_path / "torus.json"
    run(capsys, "gen", "torus", "--k", "4", "-o", str(path))
    code, out, _ = run(capsys, "betti", str(path), "--dim", "1")
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "betti", str(path), "--p", "3")
    assert json.loads(out) == {"-1": 0, "0": 0, "1": 2, "2": 1}


def test_rank(capsys, octahedron):
    # [DERIVED] boundary of the octahedron: rank of d2 is F - 1 = 7
    code, out, _ = run(capsys, "rank", str(octahedron), "--dim", "2", "--p", "3")
    assert code == 0 and out.strip() == "7"


def test_dual_roundtrip_shape(capsys, tmp_path):
    path = tmp_path / "z.json"
    code, out, _ = run(capsys, "gen", "simplex-boundary", "--d", "1", "--p", "3")
    path.write_text(out)
    code, out, _ = run(capsys, "dual", str(path), "--n", "5")
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 5 - 1 - 2 and doc["n"] == 5


def test_collapse(capsys, tmp_path):
    path = tmp_path / "k.json"
    path.write_text(json.dumps({"n": 5, "p": 2, "facets": [[1, 2, 3], [2, 3, 4]]}))
    code, out, _ = run(capsys, "collapse", str(path), "--d", "2")
    doc = json.loads(out)
    assert code == 0 and doc["steps"] and all(len(f) <= 1 for f in doc["residual"])
    path.write_text(json.dumps({"n": 5, "p": 2, "facets": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]}))
    assert run(capsys, "collapse", str(path), "--d", "2")[0] == 1


def test_circuits_and_hypertree(capsys, tmp_path):
    code, out, _ = run(capsys, "hypertree", "--n", "5", "--d", "1")
    doc = json.loads(out)
    assert code == 0 and len(doc["facets"]) == 4
    path = tmp_path / "k4.json"
    code, out, _ = run(capsys, "gen", "complete", "--n", "4", "--d", "1")
    path.write_text(out)
    code, out, _ = run(capsys, "circuits", str(path), "--p", "2")
    # [DERIVED] K4 has 7 cycles
    assert code == 0 and len(json.loads(out)["circuits"]) == 7


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "hypersimplex-connectivity", "--n", "6", "--d", "2", "--exhaustive")
    assert code == 0 and out.startswith("PASS hypersimplex-connectivity")
    code, out, _ = run(capsys, "verify", "two-cocycle", "--n", "4", "--p", "2", "--seeds", "5")
    assert code == 3 and out.startswith("FAIL")
    code, _, err = run(capsys, "verify", "made-up")
    assert code == 2 and "unknown theorem" in err
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and len(out.splitlines()) == 21
    code, out, _ = run(capsys, "verify", "pentagon", "--json")
    assert code == 0 and json.loads(out)["theorem_id"] == "pentagon"


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 4, "p": 3, "dim": 1, "terms": [{"s": [2, 1], "c": 1}]}))
    code, _, err = run(capsys, "graph", str(bad))
    assert code == 1 and "chain.terms[0].s" in err
    assert run(capsys, "betti", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "graph")[0] == 2
    assert run(capsys, "gen", "torus", "--k", "5")[0] == 1


def test_console_script_is_installed():
    exe = shutil.which("facetlab")
    if exe is None:
        pytest.skip("console script not on PATH")
    res = subprocess.run([exe, "verify", "--list"], capture_output=True, text=True)
    assert res.returncode == 0 and "pentagon" in res.stdout
