import json
import subprocess
import sys

import numpy as np
import pytest

from biquad import fixtures
from biquad.cli_io import (
    ParseError,
    read_samples_csv,
    read_tensor,
    tensor_from_json,
    tensor_to_json,
    write_samples_csv,
    write_tensor,
)
from biquad.stats import simulate_uniform


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "biquad.cli_io", *args], capture_output=True, text=True
    )


# --- tensor JSON ---

def test_tensor_json_round_trip_both_formats():
    A = fixtures.elasticity_tensor_symmetric()
    for fmt in ("dense", "coo"):
        B = tensor_from_json(tensor_to_json(A, fmt=fmt))
        assert np.array_equal(A.entries, B.entries)


def test_coo_omits_zeros_and_uses_one_based_indices():
    A = fixtures.diagonal_2x2(0.0, 2.0, 3.0)
    doc = tensor_to_json(A, fmt="coo")
    recs = doc["entries"]
    assert all(min(r["i1"], r["j1"], r["i2"], r["j2"]) >= 1 for r in recs)
    assert len(recs) == 3  # the alpha=0 diagonal entry is omitted


def test_tensor_file_round_trip(tmp_path):
    A = fixtures.elasticity_tensor()
    p = tmp_path / "t.json"
    write_tensor(p, A)
    assert np.array_equal(read_tensor(p).entries, A.entries)


def test_read_tensor_parse_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError, match="line"):
        read_tensor(p)
    with pytest.raises(ParseError):
        read_tensor(tmp_path / "missing.json")
    p.write_text(json.dumps({"m": 2, "n": 2, "format": "dense", "entries": [1, 2]}))
    with pytest.raises(ParseError):
        read_tensor(p)


# --- sample CSV ---

def test_samples_csv_round_trip(tmp_path):
    batch = simulate_uniform(7, 2, 3, seed=5)
    p = tmp_path / "s.csv"
    write_samples_csv(p, batch)
    got = read_samples_csv(p)
    assert np.array_equal(got.samples, batch.samples)


def test_samples_csv_errors(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("2,x\n1,2,3,4\n")
    with pytest.raises(ParseError, match="line 1"):
        read_samples_csv(p)
    p.write_text("2,2\n1,2,3\n")
    with pytest.raises(ParseError, match="line 2"):
        read_samples_csv(p)


# --- CLI ---

@pytest.fixture
def tensor_file(tmp_path):
    p = tmp_path / "a.json"
    write_tensor(p, fixtures.elasticity_tensor_symmetric())
    return str(p)


def test_cli_eig_json_output(tensor_file):
    r = run_cli("eig", "--input", tensor_file, "--mode", "min",
                "--starts", "6", "--seed", "1", "--json")
    assert r.returncode == 0, r.stderr
    out = json.loads(r.stdout)
    assert abs(out["lambda"] - 2.5) <= 1e-4
    assert out["residual"] <= 1e-6


def test_cli_bounds(tensor_file):
    r = run_cli("bounds", "--input", tensor_file, "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["global_interval"] == [1.0, 7.0]


def test_cli_classify(tensor_file):
    r = run_cli("classify", "--input", tensor_file, "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["is_z"] is False and out["m_status"] == "indeterminate"


def test_cli_parse_error_exit_2(tmp_path):
    r = run_cli("eig", "--input", str(tmp_path / "missing.json"))
    assert r.returncode == 2


def test_cli_decompose_precondition_exit_4(tensor_file, tmp_path):
    r = run_cli("decompose", "--input", tensor_file,
                "--out", str(tmp_path / "d.json"))
    assert r.returncode == 4


def test_cli_cov_simulate(tmp_path):
    out = tmp_path / "c.json"
    r = run_cli("cov", "--simulate", "100", "2", "2", "--seed", "3",
                "--starts", "5", "--out", str(out), "--json")
    assert r.returncode == 0, r.stderr
    rep = json.loads(r.stdout)
    assert rep["psd_numerical"] is True
    C = read_tensor(out)
    assert C.m == 2 and C.n == 2


def test_cli_cov_requires_source():
    r = run_cli("cov")
    assert r.returncode == 2


def test_cli_sos(tensor_file, tmp_path):
    # elasticity unfolding is indefinite: no certificate, still exit 0
    r = run_cli("sos", "--input", tensor_file)
    assert r.returncode == 0
    p = tmp_path / "i.json"
    from biquad.tensor_core import identity_tensor

    write_tensor(p, identity_tensor(2, 2))
    r = run_cli("sos", "--input", str(p))
    assert r.returncode == 0 and "certificate" in r.stdout


def test_cli_reproduce_71(tmp_path):
    r = run_cli("reproduce", "7.1", "--seed", "1", "--outdir", str(tmp_path))
    assert r.returncode == 0, r.stderr
    intervals = (tmp_path / "intervals.csv").read_text().splitlines()
    assert intervals[0] == "case,lo,hi"
    rows = dict(line.split(",", 1) for line in intervals[1:])
    assert rows["C"] == "-5,13" and rows["A"] == "1,7"
    assert (tmp_path / "eigenpairs.csv").exists()
    assert (tmp_path / "trace.csv").exists()
