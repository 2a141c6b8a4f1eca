import json
import math
import os
import subprocess

import jsonschema
import numpy as np
import pytest

import m2q

CLI = os.environ.get("M2Q_CLI")
SCHEMA_PATH = os.environ.get("M2Q_SCHEMA")


def test_identity_certificates():
    x = np.eye(2)
    proxy = m2q.certify(x, 4)
    assert proxy["B"] == pytest.approx(2 ** -0.25, abs=1e-12)
    assert proxy["certified_upper"] == pytest.approx(2 ** -0.125, abs=1e-12)
    assert proxy["best_direction"]["provenance"] == "basis(0)"
    base = m2q.certify(x, 4, method="baseline")
    assert base["B"] is None
    assert base["certified_upper"] == pytest.approx(2 ** -0.25, abs=1e-12)
    assert m2q.certify(x, 4, method="guth")["B"] == pytest.approx(2 ** -0.25)


def test_sandwich_on_random_data():
    x = m2q.generate("gaussian", 200, 6, seed=3)
    assert x.shape == (200, 6)
    cert = m2q.certify(x, 4)
    o = m2q.oracle(x, 4, restarts=32, seed=1)
    assert cert["B"] <= o["value"] + 1e-6
    assert o["value"] <= cert["certified_upper"] * (1 + 1e-6)
    v = np.array(cert["best_direction"]["coords"])
    assert m2q.expectation_norm(x, v, 4) == pytest.approx(cert["B"], rel=1e-12)
    direct = np.mean((x @ v) ** 4) ** 0.25
    assert direct == pytest.approx(cert["B"], rel=1e-10)


def test_q2_matches_numpy_svd():
    x = m2q.generate("planted_spike", 120, 5, seed=2)
    sigma = np.linalg.svd(x, compute_uv=False)[0] / math.sqrt(x.shape[0])
    assert m2q.certify(x, 2)["certified_upper"] == pytest.approx(sigma, rel=1e-6)


def test_p_to_q_and_errors():
    rep = m2q.certify_p_to_q(np.eye(2), 1.0, 4)
    assert rep["gamma_p"] == 0.5
    assert rep["certified_upper"] == pytest.approx(2 ** 0.625)
    assert m2q.gamma_p(4.0) == 0.25
    with pytest.raises(ValueError):
        m2q.certify(np.eye(2), 3)
    with pytest.raises(ValueError):
        m2q.certify(np.array([[np.nan, 1.0]]), 4)
    with pytest.raises(ValueError):
        m2q.certify(np.eye(2), 4, method="magic")


def test_accepts_non_contiguous_input():
    x = np.asfortranarray(m2q.generate("gaussian", 30, 4, seed=1))
    y = np.ascontiguousarray(x)
    assert m2q.certify(x, 4)["B"] == m2q.certify(y, 4)["B"]


@pytest.fixture(scope="module")
def schema():
    if not SCHEMA_PATH:
        pytest.skip("M2Q_SCHEMA not set")
    with open(SCHEMA_PATH) as f:
        return json.load(f)


def run_cli(*args, expect=(0,)):
    if not CLI:
        pytest.skip("M2Q_CLI not set")
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    assert proc.returncode in expect, proc.stderr
    return json.loads(proc.stdout)


def test_cli_outputs_match_schema(schema, tmp_path):
    mat = tmp_path / "g.csv"
    gen = run_cli("gen", "--kind", "gaussian", "--n", 64, "--d", 4, "--seed", 5, "--out", mat)
    jsonschema.validate(gen, schema)
    for method in ("proxy", "baseline", "guth", "all"):
        jsonschema.validate(run_cli("certify", "--in", mat, "--method", method), schema)
    jsonschema.validate(run_cli("certify", "--in", mat, "--alpha", "100"), schema)
    jsonschema.validate(run_cli("certify", "--in", mat, "--p", "1.5"), schema)
    jsonschema.validate(run_cli("search", "--in", mat), schema)
    jsonschema.validate(run_cli("oracle", "--in", mat, "--warm-from-proxy"), schema)
    bench = tmp_path / "b.json"
    subprocess.run([CLI, "bench-scaling", "--dims", "3,4,5", "--seeds", "1", "--json", str(bench)],
                   check=True, capture_output=True)
    jsonschema.validate(json.loads(bench.read_text()), schema)
    # Exit 1 only signals a failed verdict; the report is still complete.
    lim = run_cli("limitation", "--d", 4, "--C", 2, "--seeds", 1, expect=(0, 1))
    jsonschema.validate(lim, schema)


def test_cli_exit_codes(tmp_path):
    mat = tmp_path / "r.csv"
    run_cli("gen", "--kind", "rank_one", "--n", 10, "--d", 3, "--c", 2, "--out", mat)
    rep = run_cli("certify", "--in", mat, "--alpha", 1, expect=(3,))
    assert rep["decision"] == "YES-witnessed"
    bad = subprocess.run([CLI, "gen", "--kind", "nope", "--d", "2"], capture_output=True)
    assert bad.returncode == 2
