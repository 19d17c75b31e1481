import json
import os
import subprocess
import sys

import pytest

from simuniv.cli import main

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "simuniv", "data")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def path(name):
    return os.path.join(DATA, name)


def test_universality_exit_codes(capsys):
    code, out, _ = run(capsys, "check-universality", path("finfun.inst"), "trivial")
    assert code == 0 and "universal: True" in out
    code, out, _ = run(capsys, "--json", "check-universality", path("finfun.inst"), "singleton")
    report = json.loads(out)
    assert code == 0 and len(report["witness"]) == 4 and report["verified"]
    code, out, _ = run(capsys, "check-universality", path("finfun.inst"), "truncated", "--json")
    assert code == 1 and json.loads(out)["counterexample"] == "(1, 1)"


def test_parsimony(capsys):
    code, out, _ = run(capsys, "compare-parsimony", path("finfun.inst"), "trivial", "singleton")
    assert code == 0 and "relation: strict: B > A" in out
    assert "full_space: 256" in out
    code, out, _ = run(capsys, "--json", "compare-parsimony", path("finfun.inst"), "singleton", "singleton")
    assert json.loads(out)["relation"] == "equivalent"
    code, _, err = run(capsys, "compare-parsimony", path("finfun.inst"), "trivial", "truncated")
    assert code == 2 and "truncated" in err


def test_nogo(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "check-nogo", path("spin.inst"), "couplings")
    report = json.loads(out)
    assert code == 0 and report["max_over_image"] == 2 and report["beating_value"] == 4
    code, out, _ = run(capsys, "check-nogo", path("spin.inst"), "trivial")
    assert code == 3 and "certificate: False" in out
    bad = tmp_path / "bad.inst"
    bad.write_text(open(path("spin.inst")).read() + "\n[witness w]\ninstance = S\nJ=+1 -> 9\nJ=-1 -> 2\nfield -> 4\n")
    code, _, err = run(capsys, "check-nogo", str(bad), "couplings", "--witness", "w")
    assert code == 2 and "J=-1" in err


def test_unreachability(capsys):
    code, out, _ = run(capsys, "check-unreachability", path("and.inst"), "--endo", "not")
    assert code == 0 and "verified: True" in out
    code, _, err = run(capsys, "check-unreachability", path("and.inst"), "--endo", "and")
    assert code == 2
    code, out, _ = run(capsys, "check-unreachability", path("indicators.inst"), "--via", "universal")
    assert code == 0
    code, out, _ = run(capsys, "check-unreachability", path("finfun.inst"), "--via", "cantor")
    assert code == 0 and "256 simulators enumerated" in out


def test_identity_endo_rejected(capsys, tmp_path):
    f = tmp_path / "id.inst"
    f.write_text(open(path("and.inst")).read() + "\n[morphism id: B -> B]\n0 -> 0\n1 -> 1\n")
    code, _, err = run(capsys, "check-unreachability", str(f), "--endo", "id")
    assert code == 2 and "fixed point" in err


def test_parse_errors_go_to_stderr_with_line(capsys, tmp_path):
    f = tmp_path / "broken.inst"
    f.write_text("[set A]\n1\n[morphism f: A -> Z]\n")
    code, out, err = run(capsys, "show", str(f))
    assert code == 2 and out == "" and "line 3" in err


def test_show_is_canonical(capsys):
    code, out, _ = run(capsys, "show", path("and.inst"))
    assert code == 0
    code, out2, _ = run(capsys, "show", path("and.inst"))
    assert out == out2 and out.startswith("# simuniv instance file")


@pytest.mark.parametrize("name", ["spin", "parsimony", "diagonal", "cantor"])
def test_demos(capsys, name):
    code, out, _ = run(capsys, "demo", name)
    assert code == 0 and out


def test_turing_demo(capsys):
    code, out, _ = run(capsys, "--json", "demo", "turing")
    report = json.loads(out)
    assert code == 0 and report["universal"] and report["corpus_sweep"]["mismatches"] == 0


def test_environment_limit(capsys, monkeypatch):
    monkeypatch.setenv("SIMUNIV_SEARCH_LIMIT", "10")
    code, _, err = run(capsys, "check-unreachability", path("finfun.inst"), "--via", "cantor")
    assert code == 2 and "limit" in err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "simuniv.cli", "demo", "spin", "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["certificate"]
