import json
import subprocess
import sys

import pytest

from gdcst import parse_instance, solve
from gdcst.cli import main

import make_golden
from helpers import FIXTURES

STEPS = make_golden.scenario()


@pytest.mark.parametrize("step", STEPS, ids=lambda s: " ".join(s["args"][:2]) or "<none>")
def test_golden_scenario(step):
    code, out, err = make_golden.run(step["args"])
    assert code == step["exit"], err
    if "stdout" in step:
        assert out == (make_golden.GOLDEN / step["stdout"]).read_text()
    if code in (1, 64, 74):
        assert err.strip()


def test_generate_then_solve(tmp_path, capsys):
    out = tmp_path / "unsat.gdcst"
    assert main(["generate", "outstars", str(FIXTURES / "unsat2.cnf"), "-o", str(out)]) == 0
    assert main(["solve", str(out)]) == 2
    assert main(["oracle", str(out), "--mode", "pruned", "--cap", "0"]) == 2
    capsys.readouterr()


def test_reduce_writes_solvable_instance(tmp_path, capsys):
    out = tmp_path / "fmdst.gdcst"
    assert main(["reduce", "fmdst", str(FIXTURES / "fmdst.src"), "-o", str(out)]) == 0
    inst = parse_instance(out.read_text())
    assert main(["solve", str(out), "--json"]) == (0 if solve(inst).feasible else 2)
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] in ("Feasible", "Infeasible")


def test_reduce_ccst_seed_and_c(tmp_path, capsys):
    out = tmp_path / "c.gdcst"
    assert main(["reduce", "ccst", str(FIXTURES / "ccst.src"), "--c", "1", "--seed", "4", "-o", str(out)]) == 0
    src_m = int((FIXTURES / "ccst.src").read_text().split("\n")[0].split()[3])
    assert parse_instance(out.read_text()).m == src_m + 1 + src_m


def test_validate_rejects_non_tree(capsys):
    assert main(["validate", str(FIXTURES / "tri1.gdcst"), "--tree", "1,2,3"]) == 2
    assert "spanning tree: no" in capsys.readouterr().out


def test_unwritable_output(capsys):
    code = main(["generate", "random", "--n", "3", "--m", "2", "-o", "/nonexistent/dir/x.gdcst"])
    assert code == 74


def test_console_script():
    res = subprocess.run(
        [sys.executable, "-m", "gdcst.cli", "stats", str(FIXTURES / "tri1.gdcst")], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert res.stdout.startswith("n=3 m=3 |A|=1")
