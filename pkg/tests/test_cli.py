from __future__ import annotations

import csv
import io as _io
import json
import subprocess
import sys

import pytest

from adestab.cli import main

A1 = '{"ade": "A1", "h_square": 2}'
A2 = '{"ade": "A2", "h_square": 2}'
P1 = '{"beta": ["-1/4"], "z": 1}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ade_info(capsys):
    code, out, _ = run(capsys, "ade", "info", "D4")
    d = json.loads(out)
    assert code == 0 and d["fund_cycle"] == [2, 1, 1, 1] and d["gram"][0][0] == -2
    assert d["inverse_all_negative"] is True


def test_certify_support_success(capsys):
    code, out, _ = run(capsys, "certify", "support", A1, P1, "--A", "0", "--B", "8")
    d = json.loads(out)
    assert code == 0 and d["ok"]
    assert d["resolution"]["inertia"] == [0, 2, 0]
    assert d["simple_classes_q"] == {"opi": "0", "s_1": "0"}


def test_certify_support_failure_exit_1(capsys):
    code, out, _ = run(capsys, "certify", "support", A1, P1, "--B", "7")
    assert code == 1 and json.loads(out)["simple_classes_nonnegative"] is False
    code, out, _ = run(capsys, "certify", "support", A1, '{"beta": ["-1/4"], "z": 0}')
    d = json.loads(out)
    assert code == 1 and d["resolution"]["negative_definite"] is False and "witness" in d["resolution"]


def test_filtration_with_phases(capsys):
    code, out, _ = run(capsys, "filtration", A2, "--target", "2", "--check-phases", "--eps", "1/2", "--eta", "1/100")
    d = json.loads(out)
    assert code == 0 and d["phase_chain"]["ok"] and d["telescoping_ok"]
    code, out, _ = run(capsys, "filtration", A2, "--target", "2", "--check-phases", "--eta", "0")
    assert code == 1 and json.loads(out)["phase_chain"]["ok"] is False


def test_filtration_text(capsys):
    code, out, _ = run(capsys, "--format", "text", "filtration", '{"ade": "D4", "h_square": 2}', "--target", "2")
    assert code == 0 and out.startswith("0 -> O_{2C1+C2+C3+C4}") and "O_x" in out


def test_beta_and_charge(capsys):
    code, out, _ = run(capsys, "beta", "find", A2, "--t", "1/3")
    d = json.loads(out)
    assert code == 0 and d["beta"] == ["-1/3", "-1/3"] and d["beta_dot_fund"] == "2/3"
    code, out, _ = run(capsys, "charge", "eval", A1, P1, '{"ch1": {"e": [1]}}')
    assert json.loads(out)["re"] == "1/2"


def test_lift_and_decompose(capsys):
    code, out, _ = run(capsys, "lift", A2, '{"ch0": 2, "ch1": {"H": 1}, "ch2": 3}', "--offset", "1/2,0")
    d = json.loads(out)
    assert code == 0 and d["kernel_coefficients"] == ["1/2", "0"]
    code, out, _ = run(capsys, "decompose", A1, '{"ch1": {"e": [3]}, "ch2": 2}')
    assert json.loads(out) == {"decomposable": False}


def test_walls_csv(capsys, tmp_path):
    target = tmp_path / "walls.csv"
    code, out, _ = run(capsys, "--format", "csv", "-o", str(target), "walls", A1, P1,
                       "--class", '{"ch0": 1, "ch1": {"h": 1}}', "--param", "s",
                       "--box", "ch0=-1:1,e=-2:2,ch2=-2:2")
    assert code == 0 and out == ""
    rows = list(csv.DictReader(_io.StringIO(target.read_text())))
    assert rows and set(rows[0]) == {"parameter_value", "witness_class", "phase_num", "phase_den"}


def test_walls_segments_json(capsys):
    code, out, _ = run(capsys, "walls", A1, P1, "--class", '{"ch2": 1}', "--param", "epsilon")
    d = json.loads(out)
    assert code == 0 and d["walls"] == [] and len(d["segments"]) == 2


@pytest.mark.parametrize("argv", [
    ["ade", "info", "F4"],
    ["certify", "support", '{"ade": "A1", "h_square": 0}', P1],
    ["beta", "find", A1, "--t", "1"],
    ["charge", "eval", A1, P1, "not-a-file.json"],
    ["filtration", A2, "--target", "5"],
    ["walls", A1, P1, "--class", "{}", "--param", "epsilon", "--range", "1", "0"],
])
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    diag = json.loads(err.strip().splitlines()[-1])
    assert set(diag) == {"error", "message"}


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "adestab", "ade", "info", "A2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["fund_cycle"] == [1, 1]


def test_output_is_byte_stable(capsys, monkeypatch):
    argv = ["--format", "csv", "walls", A2, '{"beta": ["-1/3", "-1/3"], "z": 1}',
            "--class", '{"ch0": 1, "ch1": {"h": 1}}', "--param", "s", "--range", "1", "10",
            "--box", "ch0=-1:1,e=-2:2,ch2=-2:2", "--B", "18"]
    _, first, _ = run(capsys, *argv)
    monkeypatch.setenv("ADESTAB_THREADS", "3")
    _, second, _ = run(capsys, *argv)
    assert first == second and first.count("\n") > 5
