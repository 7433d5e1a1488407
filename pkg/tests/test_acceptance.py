"""Acceptance criteria, one test each; the pass/fail summary is printed at the end of the run."""

import io
import json
import time
from pathlib import Path

import numpy as np
import pytest

from helpers import RULE_FIXTURES, random_coo
from sparsefmt.analyzer import Level, analyze
from sparsefmt.cli import run
from sparsefmt.dump import render_dump
from sparsefmt.formats import FORMAT_IDS, convert, reconstruct, to_csr
from sparsefmt.matrix_core import generate_pattern, to_dense
from sparsefmt.recommender import recommend
from sparsefmt.size_model import size_report
from sparsefmt.spmv import op_count, spmv

DATA = Path(__file__).parent / "data"
SWEEP_SEED = 1729


@pytest.fixture(scope="module")
def sweep():
    """1000 random matrices, M, N <= 64, density 1-90%, with a positive x per matrix."""
    rng = np.random.default_rng(SWEEP_SEED)
    out = []
    for _ in range(1000):
        m = random_coo(rng, max_dim=64, lo=0.01, hi=0.9)
        out.append((m, rng.uniform(0.5, 1.5, m.cols)))
    return out


def cli_json(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([*map(str, argv), "--json"], stdout=out, stderr=err)
    return code, json.loads(out.getvalue())


@pytest.mark.criterion(1, "example matrix CSR arrays, 1-based, < 1 s")
def test_csr_example(matrix_a):
    start = time.perf_counter()
    lines = render_dump(to_csr(matrix_a)).splitlines()
    elapsed = time.perf_counter() - start
    assert "Value\t2\t1\t4\t3\t5\t7\t6\t8" in lines
    assert "Col index\t1\t2\t2\t3\t4\t1\t3\t4" in lines
    assert "Row ptr\t1\t3\t6\t8\t9" in lines
    assert elapsed < 1.0


@pytest.mark.criterion(2, "storage sizes for the example and modelled == measured on 500 matrices, < 10 s")
def test_size_fidelity(matrix_a):
    start = time.perf_counter()
    sizes = {s.format_id: s.modelled for s in size_report(matrix_a).sizes}
    assert sizes == {"coo": 24, "csr": 21, "csc": 21, "dia": 20, "jds": 24, "tjds": 19, "dense": 16}
    rng = np.random.default_rng(SWEEP_SEED + 1)
    for _ in range(500):
        for s in size_report(random_coo(rng)).sizes:
            assert s.modelled == s.measured, s.format_id
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion(3, "operation counts 28 (dense 4x4) and 12 (COO, NNZ 8, Npr 2)")
def test_op_counts():
    assert op_count("dense", 4, 4) == 28
    assert op_count("coo", 4, nnz=8, npr=2) == 12


@pytest.mark.criterion(4, "every kernel matches dense within 1e-12 relative error on 1000 matrices, < 30 s")
def test_kernel_oracle(sweep):
    start = time.perf_counter()
    for m, x in sweep:
        dense = to_dense(m)
        ref = spmv(dense, x)
        nonzero = ref != 0
        for fid in FORMAT_IDS:
            y = spmv(convert(m, fid), x)
            assert np.all(y[~nonzero] == 0.0), fid
            rel = np.abs(y[nonzero] - ref[nonzero]) / np.abs(ref[nonzero])
            assert np.all(rel <= 1e-12), fid
    assert time.perf_counter() - start < 30.0


@pytest.mark.criterion(5, "exact round-trip through all six formats on the same 1000 matrices")
def test_round_trip(sweep):
    for m, _ in sweep:
        for fid in FORMAT_IDS:
            assert reconstruct(convert(m, fid)) == m, fid


@pytest.mark.criterion(6, "12 engineered fixtures fire the expected rule and format, < 5 s")
def test_rule_coverage():
    start = time.perf_counter()
    for rule_id, objective, category, m, expected in RULE_FIXTURES:
        profile = analyze(m)
        assert [c.value for c, lvl in profile.levels().items() if lvl is Level.VERY_HIGH] == [category]
        rec = recommend(profile, objective)
        assert (rec.format_id, rec.fired_rule) == (expected, rule_id)
    assert time.perf_counter() - start < 5.0


@pytest.mark.criterion(7, "analyzer spot values, pct within 1e-9")
def test_analyzer_spot_values(matrix_a):
    p = analyze(matrix_a)
    assert p.dense_row_pct == pytest.approx(37.5, abs=1e-9)
    assert p.dense_row_level is Level.HIGH
    assert p.diag_pct == pytest.approx(400 / 7, abs=1e-9)
    assert p.diag_level is Level.LOW
    ident = analyze(generate_pattern("identity", 7, 7))
    assert ident.diag_pct == pytest.approx(100 / 13, abs=1e-9)
    assert ident.diag_level is Level.VERY_HIGH
    board = analyze(generate_pattern("checkerboard", 4, 4, 2))
    assert board.random_pct == pytest.approx(100.0, abs=1e-9)
    assert board.random_level is Level.VERY_HIGH


@pytest.mark.criterion(8, "horizontal dense-rows fixture: speed TJDS and size CSR in one run")
def test_objective_conflict():
    code, report = cli_json("recommend", DATA / "dense_rows_4x8.mtx", "--objective", "both")
    assert code == 0
    recs = report["recommendations"]
    assert recs["speed"]["format"] == "tjds"
    assert recs["size"]["format"] == "csr"
    assert recs["objectives_disagree"] is True


@pytest.mark.criterion(9, "CLI handles degenerate shapes and reports malformed input by line")
def test_cli_robustness():
    expected_degenerate = {
        "empty_3x3.mtx": {"diagonal_density", "dense_rows", "dense_cols", "randomness"},
        "single_entry.mtx": {"randomness"},
        "row_1x9.mtx": set(),
        "col_9x1.mtx": set(),
    }
    for name, degenerate in expected_degenerate.items():
        for command in ("analyze", "recommend"):
            code, report = cli_json(command, DATA / name)
            assert code == 0, name
            assert report["error"] is None
            assert set(report["analysis"]["degenerate"]) == degenerate, name
    code, report = cli_json("analyze", DATA / "malformed.mtx")
    assert code != 0
    assert report["error"]["line"] == 4
