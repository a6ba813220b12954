import csv
import io
import json
import subprocess
import sys

import pytest

from ggl.cli import main


def run_cli(capsys, *args):
    status = main(list(args))
    out = capsys.readouterr()
    return status, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parity_suite(capsys):
    status, out, _ = run_cli(capsys, "parity")
    assert status == 0
    assert {r["check_name"] for r in rows(out)} == {
        "thue_morse_recurrence",
        "splitting_multiplicativity",
        "balance",
        "truncation_agrees",
    }


def test_spectrum_parseval(capsys):
    status, out, _ = run_cli(capsys, "spectrum", "--k", "10", "--check", "parseval")
    assert status == 0
    parseval = [r for r in rows(out) if r["check_name"] == "parseval"][0]
    assert float(parseval["lhs"]) <= 1e-10


def test_spectrum_export(capsys):
    status, out, _ = run_cli(capsys, "spectrum", "--k", "3", "--check", "export")
    assert status == 0
    assert out.splitlines()[0] == "r,re,im,abs"
    assert len(out.splitlines()) == 9


def test_bounds_lemma2_zero_violations(capsys):
    status, out, _ = run_cli(capsys, "bounds", "--suite", "lemma2", "--alpha-grid", "10000", "--seed", "42")
    assert status == 0
    table = rows(out)
    assert len(table) == 12 and all(r["passed"] == "true" for r in table)
    assert list(table[0]) == ["suite", "check_name", "parameters", "lhs", "rhs", "margin", "grid_points", "passed"]


def test_goldbach_report(capsys):
    status, out, _ = run_cli(capsys, "goldbach", "--limit", "10001", "--checkpoints", "1001,10001")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "N,J,J0,ratio,lower_bound_proxy"
    assert lines[1].startswith("1001,6468,423,")


def test_goldbach_json_mirrors_csv(capsys):
    _, csv_out, _ = run_cli(capsys, "goldbach", "--limit", "2001", "--checkpoints", "1001")
    _, json_out, _ = run_cli(capsys, "goldbach", "--limit", "2001", "--checkpoints", "1001", "--format", "json")
    data = json.loads(json_out)
    assert isinstance(data, list) and all(not isinstance(v, (dict, list)) for v in data[0].values())
    assert {k: str(v) for k, v in data[0].items()} == rows(csv_out)[0]


@pytest.mark.parametrize("suite", ["circle", "fast"])
def test_goldbach_suites(capsys, suite):
    status, out, _ = run_cli(capsys, "goldbach", "--limit", "5000", "--suite", suite)
    assert status == 0 and rows(out)


def test_tightened_tolerance_fails(capsys):
    status, _, _ = run_cli(capsys, "spectrum", "--k", "10", "--check", "parseval", "--tolerance", "parseval=0")
    assert status == 1


@pytest.mark.parametrize(
    "args",
    [
        ["nosuch"],
        ["spectrum", "--k", "25"],
        ["bounds", "--suite", "lemma9"],
        ["goldbach", "--checkpoints", "1000"],
        ["bounds", "--tolerance", "bogus=1"],
        ["spectrum", "--check", "product", "--k", "14"],
    ],
)
def test_usage_errors(capsys, args):
    try:
        status = main(args)
    except SystemExit as exc:
        status = exc.code
    assert status == 2


def test_out_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["bounds", "--suite", "lemma1", "--seed", "7", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["bounds", "--suite", "lemma1", "--seed", "8", "--out", str(b)]) == 0
    assert a.read_bytes() != b.read_bytes()


def test_sieve_uses_cache(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("GGL_CACHE_DIR", str(tmp_path))
    status, out, _ = run_cli(capsys, "sieve", "--limit", "20000")
    assert status == 0
    assert (tmp_path / "primes_20000.ggl").exists()
    assert "pi=2262;" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ggl", "spectrum", "--k", "4", "--check", "corollary3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "corollary3" in proc.stdout
