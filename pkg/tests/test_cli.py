from __future__ import annotations

import json
import subprocess
import sys

import pytest

from invdiff.cli import EXIT_FAIL, EXIT_LIMIT, EXIT_OK, EXIT_USAGE, main
from invdiff.octonion import fano_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_audit_f4(capsys):
    code, out, _ = run(capsys, "audit", "--space", "f4")
    assert code == EXIT_OK
    assert out.startswith("f4: dim 52, q1=8, q2=7: pass")


def test_audit_sphere_json(capsys):
    code, out, _ = run(capsys, "audit", "--space", "sphere", "--n", "3", "--format", "json")
    d = json.loads(out)
    assert code == EXIT_OK and d["passed"] and d["dim"] == 6 and d["schema_version"] == 1


def test_audit_corrupted_table(capsys, tmp_path):
    rows = fano_table().dumps().splitlines()
    parts = rows[1].split()
    parts[2] = ("-" if parts[2][0] == "+" else "+") + parts[2][1:]
    rows[1] = " ".join(parts)
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(rows) + "\n")
    code, out, _ = run(capsys, "audit", "--space", "f4", "--table", str(bad))
    assert code == EXIT_FAIL and "FAIL" in out
    code, _, err = run(capsys, "verify", "--space", "f4", "--table", str(bad))
    assert code == EXIT_USAGE and err.startswith("error:")


def test_audit_with_good_table(capsys, tmp_path):
    good = tmp_path / "fano.txt"
    good.write_text(fano_table().dumps())
    code, out, _ = run(capsys, "audit", "--space", "f4", "--table", str(good))
    assert code == EXIT_OK and "octonion table" in out


def test_verify_text_and_json(capsys):
    code, out, _ = run(capsys, "verify", "--space", "complex-hyp", "--n", "3")
    assert code == EXIT_OK and out.rstrip().endswith("complex-hyp n=3: 42/42 verified")
    code, out, _ = run(capsys, "verify", "--space", "sphere", "--n", "3,4", "--format", "json", "--jobs", "2")
    d = json.loads(out)
    assert d["summary"] == {"total": 18, "verified": 18, "failed": 0}


def test_discover(capsys):
    code, out, _ = run(capsys, "discover", "--space", "quat", "--n", "3", "--deg", "3", "--lhs", "[D1,D4]")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "[D1,D4] = 2*D7" and "(agrees)" in out
    code, out, _ = run(capsys, "discover", "--space", "quat", "--n", "3", "--deg", "4", "--lhs", "[D3,D8]",
                       "--format", "json")
    d = json.loads(out)
    assert d["consistent"] and d["shipped"]["coset_equal"]


def test_discover_inconsistent_exit_1(capsys):
    code, out, _ = run(capsys, "discover", "--space", "quat", "--n", "3", "--deg", "2", "--lhs", "D1*D1*D1")
    assert code == EXIT_FAIL and "<no representation" in out


def test_interpolate(capsys):
    code, out, _ = run(capsys, "interpolate", "--space", "complex", "--lhs", "[D1,D3]")
    assert code == EXIT_OK
    assert "1/4*n^2 - 1/2*n + 1/4" in out


def test_properties(capsys):
    code, out, _ = run(capsys, "properties", "--space", "sphere", "--n", "3", "--seed", "5", "--format", "json")
    d = json.loads(out)
    assert code == EXIT_OK and d["passed"]
    assert [c["checked"] for c in d["checks"]] == [200, 200, 100, 100]


@pytest.mark.parametrize("argv", [
    ["audit", "--space", "nowhere"],
    ["audit"],
    ["frobnicate", "--space", "quat"],
    ["verify", "--space", "quat", "--n", "x"],
    ["verify", "--space", "quat", "--n", "1"],
    ["verify", "--space", "f4", "--n", "3"],
    ["discover", "--space", "quat"],
    ["verify", "--space", "quat", "--table", "t.txt"],
    ["verify", "--space", "quat", "--jobs", "0"],
    ["discover", "--space", "quat", "--lhs", "[D1,"],
    ["discover", "--space", "quat", "--lhs", "[D1,D99]"],
    ["interpolate", "--space", "quat", "--lhs", "[D9,D9]"],
    ["verify", "--space", "quat", "--bogus"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_degree_cap_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("ENGINE_DEGREE_CAP", "3")
    code, _, err = run(capsys, "discover", "--space", "quat", "--n", "3", "--deg", "4", "--lhs", "[D1,D4]")
    assert code == EXIT_LIMIT and "degree cap" in err
    monkeypatch.setenv("ENGINE_DEGREE_CAP", "abc")
    assert run(capsys, "audit", "--space", "sphere")[0] == EXIT_USAGE


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "invdiff", "audit", "--space", "sphere", "--n", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "so(3)" in p.stdout
