import json
import shutil
import subprocess
import sys

import pytest

from stvb.cli import main, run
from stvb.corpus import data_dir


def out_json(argv):
    code, out = run(argv + ["--json"])
    return code, json.loads(out)


def test_equiv_success():
    code, out = run(["equiv", "2; v1 v1", "2;", "--rules", "standard", "--max-len", "6", "--max-states", "100000"])
    assert code == 0
    assert out.splitlines() == ["Equivalent (1 steps)", "  Std3 0 LR 1"]


def test_equiv_distinct_and_not_proved():
    code, out = run(["equiv", "2; g1", "2; g2"])
    assert code == 1 and out.strip() == "DistinctByInvariant(bars)"
    code, out = run(["equiv", "3; s1 s2 s1 s2 s1 s2", "3; s2 s1 s2 s1 s2 s1", "--max-states", "3"])
    assert code == 1 and out.startswith("NotProvedWithinBounds")


def test_equiv_json():
    code, data = out_json(["equiv", "2; v1 v1", "2;"])
    assert code == 0 and data["outcome"] == "Equivalent" and len(data["trace"]) == 1


def test_verify():
    code, out = run(["verify", "--presentation", "standard", "--degree", "5"])
    assert code == 0 and out.strip() == "all 198 instances pass"
    code, data = out_json(["verify", "--presentation", "reduced", "--degree", "4"])
    assert code == 0 and data["failures"] == [] and data["instances"] > 0


def test_verify_with_markov_samples():
    code, out = run(["verify", "--degree", "3", "--samples", "20", "--seed", "4"])
    assert code == 0
    assert out.splitlines()[1].endswith("0 change closure invariants")


def test_inv():
    code, out = run(["inv", "2; g1"])
    assert code == 0
    assert json.loads(out)["bars"] == [1, 0]


def test_parse_and_format():
    assert run(["parse", "3 ;  v1   s2 g3"]) == (0, "3; v1 s2 g3\n")
    code, data = out_json(["parse", "2; S1"])
    assert data == {"degree": 2, "letters": ["S1"]}


@pytest.mark.parametrize(
    "argv",
    [
        ["parse", "2; t2"],
        ["parse", "2; q1"],
        ["parse", "nonsense"],
        ["equiv", "2; s1", "3; s1"],
        ["equiv", "2; s1", "2; s1", "--max-len", "0"],
        ["equiv", "2; s1", "2; s1", "--bogus"],
        ["markov", "2; s1", "2; s1", "--moves", "tiny"],
        ["expand", "s2"],
        ["expand", "x2", "--degree", "3"],
        ["expand", "s3", "--degree", "3"],
        ["verify", "--degree", "-1"],
        ["check", "/nonexistent/file.drv"],
        ["braid", "/nonexistent/file.morse"],
        [],
    ],
)
def test_usage_errors_exit_two(argv):
    assert run(argv)[0] == 2


def test_expand_and_reduce():
    assert run(["expand", "s2", "--degree", "3"]) == (0, "3; v1 v2 s1 v2 v1\n")
    assert run(["expand", "g2", "--degree", "3"]) == (0, "3; v1 g1 v1\n")
    assert run(["reduce", "3; g3"]) == (0, "3; v2 v1 g1 v1 v2\n")
    assert out_json(["reduce", "3; s2"]) == (0, {"word": "3; v1 v2 s1 v2 v1"})


def test_markov():
    code, out = run(["markov", "1;", "2; s1"])
    assert code == 0 and out.startswith("Equivalent")
    code, out = run(["markov", "2; s1", "2; t1"])
    assert code == 1 and out.startswith("DistinctByInvariant")
    code, data = out_json(["markov", "2; g1 s1", "2; s1 g1", "--moves", "reduced", "--max-degree", "3"])
    assert code == 0 and data["trace"]


def test_close():
    code, out = run(["close", "2; g1 g2"])
    assert code == 0
    assert out.splitlines()[:2] == ["component 1: Bar", "component 2: Bar"]
    code, data = out_json(["close", "2; s1"])
    assert data["invariants"]["components"] == 1
    assert data["components"][0][0] == {"type": "over", "crossing": 1, "sign": 1}


def test_braid_fixture():
    path = str(data_dir() / "morse" / "hopf_link.morse")
    code, data = out_json(["braid", path])
    assert code == 0 and data["agree"] is True
    assert data["invariants"]["components"] == 2


def test_check_fixture():
    path = str(data_dir() / "derivations" / "twisted_tau_i1_n3.drv")
    code, out = run(["check", path, "--expect", "3; v1 t1 v1"])
    assert code == 0 and out.startswith("valid;")
    code, _ = run(["check", path, "--expect", "3; t1"])
    assert code == 1


def test_check_invalid(tmp_path):
    p = tmp_path / "bad.drv"
    p.write_text("2; s1\nStd13 0 LR 1\n")
    code, data = out_json(["check", str(p)])
    assert code == 1 and data["valid"] is False and data["failingStep"] == 0


def test_output_is_deterministic():
    argv = ["markov", "2; s1 t1", "2; t1 s1", "--json"]
    assert run(argv) == run(argv)


def test_help_exits_zero():
    code, out = run(["--help"])
    assert code == 0 and "equiv" in out


def test_main_writes_stdout(capsys):
    assert main(["parse", "2; s1"]) == 0
    assert capsys.readouterr().out == "2; s1\n"


def test_console_script():
    exe = shutil.which("stvb")
    cmd = [exe] if exe else [sys.executable, "-m", "stvb.cli"]
    res = subprocess.run(cmd + ["inv", "2; g1"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["bars"] == [1, 0]
    res = subprocess.run(cmd + ["parse", "2; t2"], capture_output=True, text=True)
    assert res.returncode == 2 and "error" in res.stderr
