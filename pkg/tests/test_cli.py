import io
import json
import subprocess
import sys

import pytest

from cayley.cli import run
from cayley.normalizer import CanonicalElement


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_normalize_square():
    code, out, _ = call("normalize", "(t1*t2)*(t1*t2)")
    assert (code, out) == (0, "-1*z1*z2\n")


def test_normalize_torus_inverse():
    code, out, _ = call("normalize", "--mode", "torus", "t1^-1*t1")
    assert (code, out) == (0, "1\n")


def test_global_flags_before_command():
    code, out, _ = call("--mode", "torus", "normalize", "t1^-1")
    assert (code, out) == (0, "1*z1^-1*t1\n")


def test_check_sedenions_exits_one_with_witness():
    code, out, _ = call("check", "alternative-left", "--k", "4")
    assert code == 1
    assert "witness: e{1} + e{2,4}, e{3}" in out


def test_check_octonions_passes():
    code, out, _ = call("check", "moufang-middle", "--samples", "5", "--mus", "2,3,5")
    assert code == 0 and "passed" in out


@pytest.mark.parametrize("expr", ["2*t1 - (t2*t3) + (t1*t1)*t2", "(t1*t2)*(t3*t1)", "3", "t1*t1 + t1"])
def test_text_and_json_denote_the_same_value(expr):
    _, text, _ = call("normalize", expr)
    _, js, _ = call("normalize", "--output", "json", expr)
    assert CanonicalElement.from_json(json.loads(js)).to_text() + "\n" == text


def test_torus_json_round_trip():
    _, js, _ = call("normalize", "--mode", "torus", "--nvars", "5", "--output", "json", "(t4^-1*t1)*(t5*t2)")
    c = CanonicalElement.from_json(json.loads(js))
    assert c.mode == "torus" and c.nvars == 5 and c.to_text() == "1*z4^-1*z5*t1t2"


def test_mul():
    assert call("mul", "t1 + t2", "t1 - t2")[1] == "-1*z2 + 1*z1 - 2*t1t2\n"


def test_trace():
    code, out, _ = call("trace", "t3*(t1*t2)")
    assert code == 0
    assert out.splitlines() == ["  1. ac3: t3*(t1*t2)  ->  -(t1*t2)*t3", "result: -1*(t1t2)t3"]
    _, js, _ = call("trace", "--output", "json", "(t1*t2)*(t3*t1)")
    data = json.loads(js)
    assert "Moufang-middle" in [s["rule"] for s in data["steps"]]


def test_table_with_negative_mus():
    code, out, _ = call("table", "--mus", "-1,-1,-1")
    assert code == 0
    assert out.splitlines()[0] == "tower (Q, -1, -1, -1)"
    _, js, _ = call("table", "--mus=-1,-1", "--output", "json")
    data = json.loads(js)
    assert data["table"][2][1] == {"coef": "-1", "basis": "v1v2"}
    assert data["table"][1][1] == {"coef": "-1", "basis": "1"}


def test_presentations():
    code, out, _ = call("presentation", "quaternion", "--mus", "-1,-1")
    assert code == 0 and "associative: True" in out and "commutative: False" in out
    code, out, _ = call("presentation", "octonion", "--mode", "torus", "--nvars", "4")
    assert code == 0 and "relations hold: True" in out


@pytest.mark.parametrize("name", ["sedenion", "example43", "closure"])
def test_demos(name):
    code, out, _ = call("demo", name)
    assert code == 0 and out.rstrip().endswith("passed: True")


def test_output_is_deterministic():
    a = call("check", "flexible", "--samples", "3", "--seed", "9", "--output", "json")
    b = call("check", "flexible", "--samples", "3", "--seed", "9", "--output", "json")
    assert a == b


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("CAYLEY_SEED", "11")
    _, out, _ = call("check", "flexible", "--samples", "1", "--output", "json")
    assert json.loads(out)["seed"] == 11
    _, out, _ = call("check", "flexible", "--samples", "1", "--seed", "4", "--output", "json")
    assert json.loads(out)["seed"] == 4
    monkeypatch.setenv("CAYLEY_SEED", "abc")
    assert call("check", "flexible")[0] == 2


@pytest.mark.parametrize("argv", [
    ["normalize", "t1*t2*t3"],
    ["normalize", "t1^-1"],
    ["normalize", "t4"],
    ["normalize", "(t1"],
    ["check", "jordan"],
    ["check", "flexible", "--k", "5"],
    ["check", "flexible", "--k", "2", "--mus", "1,1,1"],
    ["table", "--mus", "1,0,1"],
    ["table", "--mus", "a,b"],
    ["trace", "t1*t4", "--nvars", "4"],
    ["normalize", "--nvars", "2", "t1"],
    [],
])
def test_usage_errors_exit_two(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err


def test_left_mode_warns_on_stderr():
    code, out, err = call("normalize", "--assoc", "left", "t1*t2*t3")
    assert code == 0 and out == "1*(t1t2)t3\n" and err.startswith("warning:")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cayley", "normalize", "(t1*t2)*(t1*t2)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "-1*z1*z2\n"
