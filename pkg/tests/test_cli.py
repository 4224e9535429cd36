from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from lcpnash.cli import main

ROOT = Path(__file__).resolve().parent.parent
INSTANCES = ROOT / "instances"
SHIPPED = sorted(INSTANCES.glob("*.json"))


def write(tmp_path, text, name="inst.json"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_lemke_solved(capsys):
    code, out, _ = run(capsys, "lemke", INSTANCES / "identity2.json")
    assert code == 0
    assert out.strip() == "SOLVED z = [1, 1]"


def test_lemke_ray(capsys):
    code, out, _ = run(capsys, "lemke", INSTANCES / "negative1.json")
    assert code == 2
    assert out.strip() == "RAY vertex=(2,[0]) direction=(1,[1])"


def test_lemke_trivial(capsys):
    code, out, _ = run(capsys, "lemke", INSTANCES / "trivial.json")
    assert code == 0 and out.strip() == "TRIVIAL z = [0, 0]"


def test_lemke_trace(capsys):
    code, out, _ = run(capsys, "lemke", INSTANCES / "identity2.json", "--trace")
    assert code == 0
    assert out.splitlines()[0].startswith("pivot 1: z0 in, w2 out")


def test_bad_rational_is_a_parse_error(capsys):
    code, _, err = run(capsys, "lemke", INSTANCES / "negative" / "bad_rational.json")
    assert code == 1
    assert "line 4, column 9" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["lemke"])
    assert info.value.code == 1
    code, _, err = run(capsys, "lemke", "/nonexistent.json")
    assert code == 1


def test_pipeline_identity(capsys):
    code, out, _ = run(capsys, "pipeline", INSTANCES / "identity2.json")
    assert code == 0
    assert "1 symmetric equilibria" in out
    assert "OriginalSolution z = [1, 1]  [verified]" in out


def test_pipeline_negative_one(capsys):
    code, out, _ = run(capsys, "pipeline", INSTANCES / "negative1.json")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("x =")]
    assert lines
    for line in lines:
        assert "Type1Direction (1,[1])" in line
        assert "resolved: RAY vertex=(2,[0]) direction=(1,[1])" in line


def test_pipeline_trivial(capsys):
    code, out, _ = run(capsys, "pipeline", INSTANCES / "trivial.json")
    assert code == 0 and out.startswith("TRIVIAL z = [0, 0]")


def test_pipeline_reports_perturbation(capsys, tmp_path):
    f = write(tmp_path, '{"M": [["-1", "0"], ["-1", "0"]], "q": ["-1", "-1"]}')
    code, out, _ = run(capsys, "pipeline", f)
    assert code == 0
    assert "eps = 1/2" in out


def test_pipeline_beta_override_and_d_file(capsys, tmp_path):
    d = write(tmp_path, '{"d": ["1/2", "3"]}', "d.json")
    code, out, _ = run(capsys, "pipeline", INSTANCES / "identity2.json", "--d-file", d, "--beta", "100")
    assert code == 0
    assert "beta = 100" in out


def test_reduce_prints_the_documented_matrices(capsys):
    code, out, _ = run(capsys, "reduce", INSTANCES / "zero1.json")
    assert code == 0
    assert "augmented M = [[1, -1], [1, 0]]" in out
    assert "augmented q = [1, -1]" in out
    assert "full game C = [[1, -1, 2], [1, 0, 0], [0, 0, 1]]" in out


def test_solve_game(capsys):
    code, out, _ = run(capsys, "solve-game", INSTANCES / "games" / "coordination.json")
    assert code == 0 and "x = [1/3, 2/3]  cost = 2/3" in out


def test_classify_profile(capsys):
    code, out, _ = run(capsys, "classify", INSTANCES / "negative1.json", "--profile", "1/2,1/2,0")
    assert code == 0 and "Type1Direction (1,[1])" in out
    code, _, err = run(capsys, "classify", INSTANCES / "zero1.json", "--profile", "0,0,1")
    assert code == 1 and "not a symmetric equilibrium" in err


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", INSTANCES / "negative1.json")
    assert code == 0
    assert "type-1 directions: (1,[1])" in out
    assert "secondary ray vertex=(2,[0]) direction=(1,[1])" in out


@pytest.mark.parametrize("path", SHIPPED, ids=[p.stem for p in SHIPPED])
def test_audit_shipped_corpus(capsys, path):
    code, out, _ = run(capsys, "audit", path)
    assert code == 0, out
    assert out.strip().endswith("audit: ok")


def test_audit_corrupted_beta(capsys):
    code, _, err = run(capsys, "audit", INSTANCES / "negative" / "corrupted_beta.json")
    assert code == 3 and "degeneracy" in err


def test_audit_oversized(capsys):
    code, _, err = run(capsys, "audit", INSTANCES / "negative" / "oversized9.json")
    assert code == 1 and "size error" in err


def test_json_mode(capsys):
    code, out, _ = run(capsys, "lemke", INSTANCES / "negative1.json", "--json")
    data = json.loads(out)
    assert code == 2
    assert data["outcome"] == "RAY"
    assert data["ray"] == {"vertex": {"z0": "2", "z": ["0"]}, "direction": {"u0": 1, "u": ["1"]}}
    code, out, _ = run(capsys, "pipeline", INSTANCES / "identity2.json", "--json")
    data = json.loads(out)
    assert data["equilibria"][0]["payload"] == {"z": ["1", "1"]}
    code, out, _ = run(capsys, "audit", INSTANCES / "negative" / "corrupted_beta.json", "--json")
    assert json.loads(out)["exit_code"] == 3


def test_decimal_approximations(capsys):
    code, out, _ = run(capsys, "pipeline", INSTANCES / "zero1.json", "--decimal", "3")
    assert "(approx [0.250, 0.500, 0.250])" in out


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "lcpnash", "lemke", str(INSTANCES / "negative1.json")],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 2
    assert res.stdout.strip() == "RAY vertex=(2,[0]) direction=(1,[1])"


def test_solve_game_parse_error_position(capsys, tmp_path):
    f = write(tmp_path, '{"C": [["1",\n ]]}')
    code, _, err = run(capsys, "solve-game", f)
    assert code == 1 and "line 2" in err
