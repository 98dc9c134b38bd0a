import json
import subprocess
import sys

import pytest

from weiljet.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), (json.loads(err) if err.strip() else None)


def test_divdiff(capsys):
    code, out, _ = run(capsys, "divdiff", "--map", "f(x)=x^2", "--order", "2", "--v", "2;1;0",
                       "--s", "0,1,3", "--ring", "rational")
    assert code == 0
    assert out["divdiff"] == ["1"] and out["sj"] == [["4"], ["5"], ["1"]]
    assert out["points"] == [["2"], ["3"], ["5"]]


def test_jet_in_characteristic_two(capsys):
    code, out, _ = run(capsys, "jet", "--map", "f(x)=x^3", "--order", "2", "--s", "0,0,0",
                       "--v", "1;1;1", "--ring", "zmod:2")
    assert code == 0 and out == {"jet": [["1"], ["1"], ["0"]]}


def test_embed(capsys):
    code, out, _ = run(capsys, "embed", "--s", "0,1,3", "--ring", "rational")
    assert code == 0
    assert out["t"] == {"1": "2", "2": "1", "1,2": "1"}
    assert out["minpoly"] == ["0", "3", "-4", "1"] and out["match"] is True


def test_taylor_and_multivariate_points(capsys):
    code, out, _ = run(capsys, "taylor", "--map", "f(x)=x^3", "--at", "2", "--dir", "1", "--order", "3")
    assert out == {"coeffs": [["8"], ["12"], ["6"], ["1"]]}
    code, out, _ = run(capsys, "jet", "--map", "f(x, y) = x*y, x - y", "--s", "0,1/2",
                       "--v", "1,2;3,-1/2")
    assert code == 0 and out["jet"][0] == ["2", "-1"]


def test_cubic_engines(capsys):
    base = ["cubic", "--map", "f(x)=x^2", "--x", "2;1;0;0"]
    code, out, _ = run(capsys, *base, "--t", "t1=1,t2=2,t12=1")
    assert out == {"engine": "difference", "T": {"": ["4"], "1": ["5"], "2": ["0"], "1,2": ["1"]}}
    code, out, _ = run(capsys, *base, "--t", "t1=1,t2=2,t12=1", "--engine", "ring")
    assert out["T"] == {"": ["4"], "1": ["5"], "2": ["0"], "1,2": ["1"]}
    code, out, _ = run(capsys, *base, "--t", "t1=0,t2=0,t12=1")
    assert code == 0 and out["engine"] == "ring"
    code, _, err = run(capsys, *base, "--t", "t1=0", "--engine", "difference")
    assert code == 2 and err["error"]["kind"] == "NonsingularRequired"


def test_ring_table(capsys):
    code, out, _ = run(capsys, "ring-table", "--k", "2", "--t", "t1=2,t2=1,t12=1")
    assert code == 0 and out["type"] == "cubic" and out["t"] == {"1": "2", "2": "1", "1,2": "1"}
    assert {"J": "2", "K": "1,2", "L": "1,2", "value": "3"} in out["gamma"]
    code, out, _ = run(capsys, "ring-table", "--k", "2", "--t", "t1=2,t2=1,t12=3", "--ring", "zmod:7")
    entries = {(e["J"], e["K"], e["L"]) for e in out["gamma"]}
    assert ("2", "1,2", "1,2") not in entries  # t2 + t1*t12 = 7 = 0, zero entries are omitted
    code, out, _ = run(capsys, "ring-table", "--type", "bpoly", "--s", "0,1")
    assert out["s"] == ["0", "1"]
    assert {"i": 1, "j": 1, "l": 1, "value": "1"} in out["gamma"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "chain-rule", "--ring", "zmod:7", "--trials", "40",
                       "--seed", "42", "--max-order", "3")
    assert code == 0 and out["ok"] and out["failed"] == 0
    code, out, _ = run(capsys, "verify", "--suite", "sign-determination", "--ring", "rational", "--trials", "20")
    assert code == 0 and out["sigma"] == {"1": "+1", "2": "+1", "3": "+1"}


@pytest.mark.parametrize("argv, code, kind", [
    (["verify", "--suite", "unknown"], 3, "UnknownSuite"),
    (["divdiff", "--map", "f(x) = x +", "--v", "1;1", "--s", "0,1"], 1, "ParseError"),
    (["divdiff", "--map", "f(x) = 1/x", "--v", "1;-1", "--s", "0,1"], 2, "DomainError"),
    (["divdiff", "--map", "f(x) = x", "--v", "1;1", "--s", "0,0"], 2, "NonsingularRequired"),
    (["divdiff", "--map", "f(x) = x", "--v", "1;1", "--s", "0,1", "--order", "3"], 3, "UsageError"),
    (["divdiff", "--map", "f(x) = x", "--v", "1;1"], 3, "UsageError"),
    (["jet", "--map", "f(x) = x", "--v", "1,2;1,2", "--s", "0,0"], 3, "ArityMismatch"),
    (["jet", "--map", "f(x) = x", "--v", "1;1", "--s", "0,0", "--ring", "zmod:1"], 3, "ValueError"),
    (["jet", "--map", "f(x) = x", "--v", "1;abc", "--s", "0,0"], 1, "ParseError"),
    (["embed", "--s", "0,1", "--ring", "real:1e-9"], 3, "ExactRingRequired"),
    (["nonsense"], 3, "UsageError"),
])
def test_error_exit_codes(capsys, argv, code, kind):
    got, out, err = run(capsys, *argv)
    assert got == code and out is None
    assert err["error"]["kind"] == kind and err["error"]["detail"]


def test_parse_error_offset_reported(capsys):
    _, _, err = run(capsys, "jet", "--map", "f(x) = x +", "--v", "1;1", "--s", "0,0")
    assert err["error"]["offset"] == 10


def test_map_from_file(tmp_path, capsys):
    path = tmp_path / "map.txt"
    path.write_text("g(x) = x^3\n")
    code, out, _ = run(capsys, "taylor", "--map", str(path), "--at", "1", "--dir", "1", "--order", "2")
    assert out == {"coeffs": [["1"], ["3"], ["3"]]}


def test_console_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "weiljet", "verify", "--suite", "recursion", "--trials", "30", "--seed", "3"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv + ["--workers", "3"], capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["ok"]
