import json
import subprocess
import sys

import pytest

from e7orbits.cli import (EXIT_AMBIGUOUS, EXIT_NO_CONVERGENCE, EXIT_OK, EXIT_PARSE,
                          EXIT_VERIFY, main)


def write(tmp_path, obj, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("diag, name", [([1, 0, 0, 1], "SPIN11"), ([0, 0, 0, 0], "E7"),
                                        ([1, 2, 3, 5], "SPIN8"), ([1, 1, 1, 0], "F4")])
def test_classify_diag(tmp_path, capsys, diag, name):
    code, obj = run_json(capsys, ["classify", write(tmp_path, {"diag": diag})])
    assert code == EXIT_OK
    assert obj["type"] == name and obj["method_agreement"]


def test_classify_text_output(tmp_path, capsys):
    assert main(["classify", write(tmp_path, {"diag": [1, 1, 2, 3]})]) == EXIT_OK
    out = capsys.readouterr().out
    assert "SPIN9 (E7/Spin(9))" in out and "stab_dim:   36" in out


def test_classify_ambiguous(tmp_path, capsys):
    path = write(tmp_path, {"diag": [1, 1.00001, 2, 3]})
    code, obj = run_json(capsys, ["classify", path])
    assert code == EXIT_AMBIGUOUS
    assert obj["type"] is None and set(obj["candidates"]) == {"SPIN8", "SPIN9"}
    # a looser tolerance settles it
    assert main(["classify", path, "--eps", "1e-3"]) == EXIT_OK


def test_sample_then_classify(tmp_path, capsys):
    out = tmp_path / "samples"
    assert main(["sample", "(1,1,r;s)", "-n", "2", "--seed", "4", "--out", str(out)]) == EXIT_OK
    paths = capsys.readouterr().out.split()
    assert len(paths) == 2
    for p in paths:
        code, obj = run_json(capsys, ["classify", p])
        assert code == EXIT_OK and obj["type"] == "SPIN9"


def test_sample_to_stdout(capsys):
    assert main(["sample", "(0,0,0;1)"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["mode"] == "float" and "element" in doc


def test_invariants(tmp_path, capsys):
    code, obj = run_json(capsys, ["invariants", write(tmp_path, {"diag": [1, 2, 3, 5]})])
    assert code == EXIT_OK
    assert obj["I1"] == ["39", "0"] and obj["multiset"] == ["5", "3", "2", "1"]
    assert obj["I4"] in (["180", "0"], ["-180", "0"])


def test_diagonalize(tmp_path, capsys):
    main(["sample", "(1,1,r;s)", "--seed", "2", "--out", str(tmp_path)])
    path = capsys.readouterr().out.split()[0]
    code, obj = run_json(capsys, ["diagonalize", path, "--check"])
    assert code == EXIT_OK
    assert obj["converged"] and obj["verification"]["ok"]
    assert obj["diagonal"] == pytest.approx([3, 2, 1, 1], abs=1e-6)


def test_diagonalize_budget(tmp_path, capsys):
    main(["sample", "(1,r,s;t)", "--seed", "1", "--out", str(tmp_path)])
    path = capsys.readouterr().out.split()[0]
    code = main(["diagonalize", path, "--max-sweeps", "1", "--restarts", "0"])
    assert code == EXIT_NO_CONVERGENCE


def test_verify(capsys):
    assert main(["verify"]) == EXIT_OK
    assert "checks passed" in capsys.readouterr().out
    assert main(["verify", "--quick"]) == EXIT_OK


def test_verify_with_fault(capsys):
    assert main(["verify", "--fault-inject", "jordan_cross"]) == EXIT_VERIFY
    assert "first failure" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [["classify", "{missing}"], ["sample", "(1,2)"],
                                  ["classify", "{bad}"], ["classify", "{float}", "--mode", "exact"]])
def test_parse_errors(tmp_path, capsys, argv):
    files = {"missing": str(tmp_path / "nope.json"),
             "bad": write(tmp_path, {"diag": [1]}, "bad.json"),
             "float": write(tmp_path, {"diag": [1.5, 0, 0, 0]}, "f.json")}
    argv = [a.format(**files) for a in argv]
    assert main(argv) == EXIT_PARSE
    assert "error:" in capsys.readouterr().err


def test_table(capsys):
    code, rows = run_json(capsys, ["table"])
    assert code == EXIT_OK and len(rows) == 7
    by = {r["type"]: r for r in rows}
    assert "(1, 1, 2; 2)" in by["SPIN10"]["representatives"]
    assert sum(len(r["representatives"]) for r in rows) == 12


def test_table_compute(capsys):
    code, rows = run_json(capsys, ["table", "--compute"])
    assert code == EXIT_OK
    for r in rows:
        assert all(d == r["stab_dim"] for d in r["measured"])


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "e7orbits", "verify", "--quick"],
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert "8/8 checks passed" in out.stdout
