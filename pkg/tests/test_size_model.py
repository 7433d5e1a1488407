import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import coo_matrices
from sparsefmt.matrix_core import CooMatrix, generate_pattern
from sparsefmt.size_model import SIZE_FORMATS, model_size, size_report


@pytest.mark.parametrize(
    "fid, params, expected",
    [
        ("coo", dict(nnz=8), 24),
        ("csr", dict(nnz=8, rows=4), 21),
        ("csc", dict(nnz=8, cols=4), 21),
        ("dia", dict(rows=4, cols=4, nzd=4), 20),
        ("jds", dict(nnz=8, jd=3, rows=4), 24),
        ("tjds", dict(nnz=8, tjd=2), 19),
        ("dense", dict(rows=4, cols=4), 16),
    ],
)
def test_model_rows(fid, params, expected):
    assert model_size(fid, **params) == expected


def test_dia_uses_shorter_side():
    assert model_size("dia", rows=3, cols=10, nzd=2) == 2 + 2 * 3
    assert model_size("dia", rows=10, cols=3, nzd=2) == 2 + 2 * 3


@pytest.mark.parametrize("fid, params", [("dia", dict(rows=4, cols=4)), ("jds", dict(nnz=3, rows=4)),
                                         ("csr", dict(nnz=3)), ("tjds", dict(nnz=1))])
def test_missing_parameter(fid, params):
    with pytest.raises(ValueError, match="needs"):
        model_size(fid, **params)


def test_unknown_format():
    with pytest.raises(ValueError):
        model_size("bsr", nnz=1)


class TestSizeReport:
    def test_example_matrix(self, matrix_a):
        r = size_report(matrix_a)
        assert {s.format_id: s.modelled for s in r.sizes} == {
            "dense": 16, "coo": 24, "csr": 21, "csc": 21, "dia": 20, "jds": 24, "tjds": 19,
        }
        assert r.minimum() == ("dense",)
        assert r.minimum(include_dense=False) == ("tjds",)

    def test_identity_100(self):
        r = size_report(generate_pattern("identity", 100, 100))
        assert r["dia"].modelled == 101
        assert r["coo"].modelled == 300
        assert r["csr"].modelled == 301
        assert r.minimum() == ("dia",)

    def test_empty(self):
        r = size_report(CooMatrix.empty(3, 3))
        assert r["coo"].modelled == 0
        assert r.nnz == 0

    @given(coo_matrices())
    def test_modelled_equals_measured(self, m):
        for s in size_report(m).sizes:
            assert s.modelled == s.measured
            assert s.value_slots + s.index_slots == s.modelled

    @given(coo_matrices(), st.randoms())
    def test_coo_size_ignores_distribution(self, m, rnd):
        rp = list(range(m.rows))
        cp = list(range(m.cols))
        rnd.shuffle(rp)
        rnd.shuffle(cp)
        permuted = CooMatrix.from_triplets(m.rows, m.cols, [(rp[i], cp[j], v) for i, j, v in m.entries])
        assert size_report(permuted)["coo"].modelled == size_report(m)["coo"].modelled

    @given(coo_matrices())
    def test_dia_transpose_invariant_when_square(self, m):
        if m.rows == m.cols:
            assert size_report(m)["dia"].modelled == size_report(m.transpose())["dia"].modelled

    def test_bytes_view(self, matrix_a):
        r = size_report(matrix_a)
        assert r["csr"].bytes(4) == 8 * 8 + 4 * (8 + 5)
        assert r["dense"].bytes(4) == 8 * 16
        assert r["dia"].bytes(8) == 8 * 16 + 8 * 4

    def test_all_formats_listed(self, matrix_a):
        assert tuple(s.format_id for s in size_report(matrix_a).sizes) == SIZE_FORMATS

    def test_random_sweep(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            m = generate_pattern("uniform_random", *(int(v) for v in rng.integers(1, 50, 2)),
                                 float(rng.uniform(0.01, 1.0)), seed=int(rng.integers(1 << 30)))
            assert all(s.modelled == s.measured for s in size_report(m).sizes)
