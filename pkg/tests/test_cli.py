import json
import subprocess
import sys

import pytest

from conftest import DATA
from poisson3lie.cli import main
from poisson3lie.io import load


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


EXIT_CODES = [
    (("check", "qc2_regular"), 0),
    (("check", "qc2_trivial"), 0),
    (("check", "qc2_hopf_module"), 0),
    (("check", "f3c3_regular"), 0),
    (("check", "nambu27"), 0),
    (("check", "qc2_bad_antipode"), 1),
    (("check", "malformed_zero_denominator"), 2),
    (("check", "malformed_unknown_key"), 2),
    (("check", "malformed_bad_prime"), 2),
    (("fundamental", "qc2_regular"), 0),
    (("fundamental", "qc2_hopf_module"), 0),
    (("fundamental", "qc2_trivial"), 2),
    (("simple", "qc2_trivial"), 0),
    (("simple", "qc2_regular"), 0),
    (("adjunction", "qc2_hopf_module"), 0),
    (("invariants", "nambu27", "--which", "coH"), 0),
]


@pytest.mark.parametrize("argv,code", EXIT_CODES, ids=["-".join(a) for a, _ in EXIT_CODES])
def test_exit_codes(capsys, argv, code):
    cmd, name, *rest = argv
    got, out, err = run(capsys, cmd, DATA / f"{name}.json", *rest)
    assert got == code, out + err
    if code == 2:
        assert err.startswith("error: ")


def test_fundamental_summary(capsys):
    code, out, _ = run(capsys, "fundamental", DATA / "qc2_regular.json")
    assert code == 0
    assert "iso verified, dim M = 2, rank = 1" in out


def test_bad_antipode_witness(capsys):
    code, out, _ = run(capsys, "check", DATA / "qc2_bad_antipode.json", "--json")
    assert code == 1
    rep = json.loads(out)
    res = {r["name"]: r for r in rep["results"]}
    w = res["hopf.antipode_left"]["witnesses"][0]
    assert w == {"inputs": ["1"], "index": [0], "lhs": {}, "rhs": {"1": "1"}}


def test_bad_antipode_all_witnesses(capsys):
    _, out, _ = run(capsys, "check", DATA / "qc2_bad_antipode.json", "--json", "--all-witnesses")
    res = {r["name"]: r for r in json.loads(out)["results"]}
    assert [w["inputs"] for w in res["hopf.antipode_left"]["witnesses"]] == [["1"], ["g"]]


def test_simple_trivial_reports_ideal(capsys):
    code, out, _ = run(capsys, "simple", DATA / "qc2_trivial.json")
    assert code == 0
    assert "not simple" in out and "span{1 + g}" in out
    assert "(1 + g)(1 - g) = 0" in out


def test_parse_error_diagnostic(capsys):
    code, _, err = run(capsys, "check", DATA / "malformed_zero_denominator.json")
    assert code == 2
    assert "malformed_zero_denominator.json:15: /hopf/mul/3/1: zero denominator" in err


@pytest.mark.parametrize("argv", [
    ("gen", "nambu", "--p", "4"),
    ("gen", "group-algebra", "--n", "2", "--p", "6"),
    ("check", "/nonexistent.json"),
    ("fundamental",),
    ("invariants", str(DATA / "qc2_regular.json"), "--which", "X"),
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(list(argv))
        raise SystemExit(code)
    assert exc.value.code == 2


@pytest.mark.parametrize("which,dim", [("coH", 9), ("A", 1), ("AcoH", 1)])
def test_invariants(capsys, which, dim):
    code, out, _ = run(capsys, "invariants", DATA / "nambu27.json", "--which", which, "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["info"]["dim"] == dim


@pytest.mark.parametrize("kind", ["tensor-h", "tensor-over-b"])
def test_construct_writes_checkable_file(capsys, tmp_path, kind):
    out_file = tmp_path / "m.json"
    code, _, _ = run(capsys, "construct", kind, DATA / "qc2_regular.json", "--out", out_file)
    assert code == 0
    b = load(out_file)
    assert b.module.dim == (4 if kind == "tensor-h" else 2)
    assert run(capsys, "check", out_file)[0] == 0
    assert run(capsys, "fundamental", out_file)[0] == 0


def test_gen_stdout_matches_corpus(capsys):
    code, out, _ = run(capsys, "gen", "group-algebra", "--n", "2")
    assert code == 0
    assert out == (DATA / "qc2_regular.json").read_text("utf-8")


@pytest.mark.parametrize("argv", [
    ("simple", "nambu27", "--json"),
    ("fundamental", "qc2_hopf_module", "--json"),
    ("check", "qc2_bad_antipode"),
])
def test_reports_are_byte_reproducible(argv):
    cmd, name, *rest = argv
    full = [sys.executable, "-m", "poisson3lie", cmd, str(DATA / f"{name}.json"), *rest]
    first = subprocess.run(full, capture_output=True, check=False)
    second = subprocess.run(full, capture_output=True, check=False)
    assert first.returncode == second.returncode
    assert first.stdout == second.stdout and first.stdout
