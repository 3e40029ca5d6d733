from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gprime.cli import OUTPUT_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_roots(capsys):
    code, doc, _ = run(capsys, "roots", "G2")
    assert code == 0
    assert doc["schemaVersion"] == 1 and doc["passed"]
    assert doc["numPositiveRoots"] == 6
    assert doc["invariantDegrees"] == [2, 6]
    assert doc["selfDual"] is True
    assert doc["cartanMatrix"] == [[2, -1], [-3, 2]]


def test_algebra(capsys):
    code, doc, _ = run(capsys, "algebra", "B2", "--structure-constants")
    assert code == 0 and doc["dimension"] == 10 and doc["audit"]["passed"]
    assert doc["algebra"]["type"] == "B2"


def test_psi(capsys):
    code, doc, _ = run(capsys, "psi", "A2")
    assert code == 0
    v = doc["verification"]
    assert v["psiIsAutomorphism"] and not v["minusPsiIsAutomorphism"] and v["minusPsiFixesGenerators"]
    assert set(doc["signs"].values()) == {-1}


def test_gprime_builtin_maps(capsys, tmp_path):
    for name, member in [("minus-psi", True), ("transpose", True), ("minus-identity", False), ("scalar:1", True)]:
        f = tmp_path / f"{name}.json"
        f.write_text(json.dumps({"builtin": name}))
        code, doc, _ = run(capsys, "gprime", "A2", "--map", str(f))
        assert doc["member"] is member, name
        assert code == (0 if member else 1)


def test_gprime_explicit_map(capsys, tmp_path):
    f = tmp_path / "map.json"
    f.write_text(json.dumps({"dim": 4, "label": "i Id", "entries": [
        ["i" if r == c else "0" for c in range(4)] for r in range(4)]}))
    code, doc, _ = run(capsys, "gprime", "R3", "--map", str(f))
    assert code == 0 and doc["member"]
    f.write_text(json.dumps({"dim": 4, "entries": [["2" if r == c else "0" for c in range(4)] for r in range(4)]}))
    code, doc, _ = run(capsys, "gprime", "R3", "--map", str(f))
    assert code == 1 and not doc["member"] and doc["failingGenerators"] == ["disc(f)"]


def test_gprime_singular_map_is_not_member(capsys, tmp_path):
    f = tmp_path / "zero.json"
    f.write_text(json.dumps({"dim": 3, "entries": [["0"] * 3] * 3}))
    code, doc, _ = run(capsys, "gprime", "R2", "--map", str(f))
    assert code == 1 and doc["invertible"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["roots", "H3"],
        ["algebra", "D2"],
        ["sl2", "7"],
        ["sl2", "R5"],
        ["verify-all", "--only", "x"],
        ["verify-all", "--only", "12"],
        ["stabilizer", "E8"],
    ],
)
def test_usage_errors(capsys, argv):
    code, doc, err = run(capsys, *argv)
    assert code == 2 and doc is None and "error" in err


def test_map_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "gprime", "A1", "--map", str(bad))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"dim": 2, "entries": [["1", "0"], ["0", "1"]]}))
    assert run(capsys, "gprime", "A1", "--map", str(wrong))[0] == 2
    t = tmp_path / "t.json"
    t.write_text(json.dumps({"builtin": "transpose"}))
    assert run(capsys, "gprime", "R2", "--map", str(t))[0] == 2
    assert run(capsys, "gprime", "G2", "--map", str(t))[0] == 2
    assert run(capsys, "gprime", "A1", "--map", str(tmp_path / "missing.json"))[0] == 2


def test_sl2_case_and_module(capsys):
    code, doc, _ = run(capsys, "sl2", "4")
    assert code == 0 and doc["passed"]
    (m,) = doc["modules"]
    assert m["module"] == "R3" and m["genericStabilizerDimension"] == 0
    code, doc, _ = run(capsys, "sl2", "R2+R1")
    assert code == 0 and doc["lieStabilizerDimension"] == 3


def test_stabilizer(capsys):
    code, doc, _ = run(capsys, "stabilizer", "R4", "--no-basis")
    assert code == 0
    assert doc["lieStabilizerDimension"] == 3 and doc["lieStabilizerBasis"] is None
    assert doc["membership"][0]["member"] is False
    code, doc, _ = run(capsys, "stabilizer", "A2")
    assert doc["lieStabilizerDimension"] == 8
    assert [v["member"] for v in doc["membership"]] == [False, True]


def test_verify_all_subset(capsys):
    code, doc, err = run(capsys, "verify-all", "--max-rank", "3", "--only", "3,5")
    assert code == 0 and doc["passed"]
    assert [c["criterion"] for c in doc["criteria"]] == [3, 5]
    assert "[PASS] criterion 3" in err and "[PASS] criterion 5" in err


def test_output_file_and_env(capsys, tmp_path, monkeypatch):
    out = tmp_path / "roots.json"
    assert main(["roots", "A3", "-o", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["type"] == "A3"
    monkeypatch.setenv(OUTPUT_ENV, str(tmp_path / "env"))
    assert main(["roots", "B3"]) == 0
    printed = capsys.readouterr().out
    assert (tmp_path / "env" / "roots-B3.json").read_text() == printed


def test_output_is_deterministic(tmp_path):
    texts = []
    for k in range(2):
        f = tmp_path / f"run{k}.json"
        subprocess.run([sys.executable, "-m", "gprime.cli", "sl2", "3", "--seed", "5", "-o", str(f)], check=True)
        texts.append(f.read_bytes())
    assert texts[0] == texts[1]


def test_version(capsys):
    assert main(["--version"]) == 0
    assert "gprime" in capsys.readouterr().out
