"""Shared fixtures data and matrix generators for the test-suite."""

import numpy as np
from hypothesis import strategies as st

from sparsefmt.matrix_core import CooMatrix

# The 4x4 example matrix used throughout: rows (2,1,0,0),(0,4,3,5),(7,0,6,0),(0,0,0,8).
A_DENSE = [
    [2.0, 1.0, 0.0, 0.0],
    [0.0, 4.0, 3.0, 5.0],
    [7.0, 0.0, 6.0, 0.0],
    [0.0, 0.0, 0.0, 8.0],
]
A_MTX = """%%MatrixMarket matrix coordinate real general
% example matrix
4 4 8
1 1 2
1 2 1
2 2 4
2 3 3
2 4 5
3 1 7
3 3 6
4 4 8
"""


def make_matrix_a() -> CooMatrix:
    return CooMatrix.from_triplets(
        4, 4, [(i, j, v) for i, row in enumerate(A_DENSE) for j, v in enumerate(row) if v]
    )


def random_coo(rng: np.random.Generator, max_dim: int = 64, lo: float = 0.01, hi: float = 0.9,
               signed: bool = False) -> CooMatrix:
    m, n = (int(v) for v in rng.integers(1, max_dim + 1, size=2))
    density = rng.uniform(lo, hi)
    mask = rng.random((m, n)) < density
    vals = rng.uniform(0.5, 1.5, size=(m, n))
    if signed:
        vals *= rng.choice([-1.0, 1.0], size=(m, n))
    i, j = np.nonzero(mask)
    return CooMatrix(m, n, i, j, vals[i, j])


@st.composite
def coo_matrices(draw, max_dim: int = 12):
    """Small COO matrices, including empty and single-line shapes."""
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    cells = draw(st.sets(st.tuples(st.integers(0, m - 1), st.integers(0, n - 1)), max_size=m * n))
    values = st.floats(-1e3, 1e3, allow_nan=False).filter(lambda v: v != 0.0)
    trip = [(i, j, draw(values)) for i, j in sorted(cells)]
    return CooMatrix.from_triplets(m, n, trip)


def _pattern(kind, rows, cols, param=None):
    from sparsefmt.matrix_core import generate_pattern

    return generate_pattern(kind, rows, cols, param)


# One engineered matrix per rule row: (rule id, objective, category, matrix, expected format).
RULE_FIXTURES = [
    ("speed-1", "speed", "diagonal_density", _pattern("identity", 7, 7), "dia"),
    ("speed-2", "speed", "dense_rows", _pattern("dense_rows", 12, 6, 2), "csr"),
    ("speed-3", "speed", "dense_cols", _pattern("dense_cols", 8, 8, 2), "jds"),
    ("speed-4", "speed", "randomness", _pattern("checkerboard", 12, 12, 3), "tjds"),
    ("speed-5", "speed", "dense_rows", _pattern("dense_rows", 4, 8, 2), "tjds"),
    ("speed-6", "speed", "dense_cols", _pattern("dense_cols", 6, 12, 2), "csc"),
    ("size-1", "size", "diagonal_density", _pattern("identity", 10, 7), "dia"),
    ("size-2", "size", "randomness", _pattern("checkerboard", 9, 15, 3), "tjds"),
    ("size-3", "size", "dense_rows", _pattern("dense_rows", 8, 8, 2), "csr"),
    ("size-4", "size", "dense_rows", _pattern("dense_rows", 12, 6, 2), "csc"),
    ("size-5", "size", "dense_cols", _pattern("dense_cols", 8, 4, 2), "csc"),
    ("size-6", "size", "dense_cols", _pattern("dense_cols", 6, 12, 2), "jds"),
]
