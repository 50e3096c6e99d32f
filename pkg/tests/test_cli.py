import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from signed_inertia import membership, parse, pin
from signed_inertia.cli import run
from signed_inertia.exact_matrix import parse_matrix

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    buf = io.StringIO()
    code = run([str(a) for a in argv], out=buf)
    return code, buf.getvalue()


def test_inertia_formula_prints_pair():
    code, out = call("inertia", GOLDEN / "path2_odd.sg", "--method", "formula")
    assert (code, out) == (0, "(1,1)\n")


def test_verify_isolated_vertices():
    code, out = call("verify", GOLDEN / "isolated3.sg", "--budget", 200, "--seed", 7)
    assert code == 0
    assert json.loads(out)["cong"] is True


def test_missing_file_is_usage_error(capsys):
    code, out = call("inertia", "nosuch.sg")
    assert code == 2 and out == ""
    assert "nosuch.sg" in capsys.readouterr().err


def test_malformed_file_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.sg"
    bad.write_text("n 2\ne 1 5 o\n")
    assert call("inertia", bad)[0] == 2
    assert "line 2" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["inertia", "x.sg", "--bogus"],
    ["inertia", "x.sg", "--method", "magic"],
    ["witness", "x.sg", "-p", "1"],
    ["check-lemmas", "--trials", "0"],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_both_methods_and_grid():
    code, out = call("inertia", GOLDEN / "path2_odd.sg", "--method", "both")
    assert code == 0 and out == "formula: (1,1)\noracle: (1,1)\n"
    code, out = call("inertia", GOLDEN / "path2_odd.sg", "--format", "grid")
    assert " 1 | . * . ." in out.splitlines()


def test_oracle_subcommand():
    code, out = call("oracle", GOLDEN / "isolated3.sg", "--format", "json", "--budget", 10)
    doc = json.loads(out)
    assert code == 0 and doc["oracle"]["frontier"] == [[0, 0]] and "frontier" not in doc


def test_witness_refeeds(tmp_path):
    G = parse((GOLDEN / "path2_odd_loops.sg").read_text())
    code, out = call("witness", GOLDEN / "path2_odd_loops.sg", "-p", 3, "-q", 0)
    assert code == 0
    W = parse_matrix(out)
    assert membership(W, G) and pin(W).leq((3, 0))


def test_witness_below_frontier_fails():
    assert call("witness", GOLDEN / "path2_odd.sg", "-p", 0, "-q", 2)[0] == 1


def test_check_lemmas_command():
    code, out = call("check-lemmas", "--trials", 10, "--seed", 2, "--size-max", 4)
    assert code == 0
    assert len(out.splitlines()) == 6 and all(line.endswith("10/10") for line in out.splitlines())


@pytest.mark.parametrize("argv, golden", [
    (["decompose", "path2_odd_loops.sg"], "decompose_path2_odd_loops.txt"),
    (["inertia", "path2_odd_loops.sg", "--method", "both", "--format", "json"], "inertia_path2_odd_loops.json"),
    (["witness", "path2_odd_loops.sg", "-p", "2", "-q", "0"], "witness_path2_odd_loops.txt"),
])
def test_golden_outputs(argv, golden):
    code, out = call(*[GOLDEN / a if a.endswith(".sg") else a for a in argv])
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_subprocess_output_is_byte_stable():
    cmd = [sys.executable, "-m", "signed_inertia", "verify", "path2_odd_loops.sg", "--seed", "3"]
    first = subprocess.run(cmd, cwd=GOLDEN, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, cwd=GOLDEN, capture_output=True, check=True).stdout
    assert first == second and first.startswith(b"{")
