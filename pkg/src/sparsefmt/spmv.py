"""Matrix-vector kernels for every storage format and the computation-count model."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from functools import singledispatch

import numpy as np

from .formats import CscMatrix, CsrMatrix, DiaMatrix, JdsMatrix, TjdsMatrix, diagonal_extent
from .matrix_core import CooMatrix, DenseMatrix


class DimensionError(ValueError):
    pass


def _vector(f, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or len(x) != f.cols:
        raise DimensionError(f"vector of length {x.shape} does not match {f.rows}x{f.cols}")
    return x


@singledispatch
def spmv(f, x) -> np.ndarray:
    """Return ``A @ x`` for ``A`` held in any supported layout."""
    raise TypeError(f"no kernel for {type(f).__name__}")


@spmv.register
def _(f: DenseMatrix, x) -> np.ndarray:
    x = _vector(f, x)
    a = f.array
    y = np.zeros(f.rows)
    for j in range(f.cols):
        y += a[:, j] * x[j]
    return y


@spmv.register
def _(f: CooMatrix, x) -> np.ndarray:
    x = _vector(f, x)
    y = np.zeros(f.rows)
    # unbuffered, applied in entry order
    np.add.at(y, f.row, f.val * x[f.col])
    return y


@spmv.register
def _(f: CsrMatrix, x) -> np.ndarray:
    x = _vector(f, x)
    y = np.zeros(f.rows)
    ptr = f.row_ptr
    for i in range(f.rows):
        s, e = ptr[i], ptr[i + 1]
        if e > s:
            y[i] = np.dot(f.values[s:e], x[f.col_indices[s:e]])
    return y


@spmv.register
def _(f: CscMatrix, x) -> np.ndarray:
    x = _vector(f, x)
    y = np.zeros(f.rows)
    ptr = f.col_ptr
    for j in range(f.cols):
        s, e = ptr[j], ptr[j + 1]
        if e > s:
            # row indices are distinct within a column
            y[f.row_indices[s:e]] += f.values[s:e] * x[j]
    return y


@spmv.register
def _(f: DiaMatrix, x) -> np.ndarray:
    x = _vector(f, x)
    y = np.zeros(f.rows)
    for d, k in enumerate(f.offsets):
        r0, c0, n = diagonal_extent(f.rows, f.cols, int(k))
        y[r0:r0 + n] += f.diagonals[d, :n] * x[c0:c0 + n]
    return y


@spmv.register
def _(f: JdsMatrix, x) -> np.ndarray:
    x = _vector(f, x)
    tmp = np.zeros(f.rows)
    ptr = f.jd_ptr
    for d in range(f.jd):
        s, e = ptr[d], ptr[d + 1]
        tmp[: e - s] += f.values[s:e] * x[f.col_indices[s:e]]
    y = np.zeros(f.rows)
    y[f.perm] = tmp
    return y


@spmv.register
def _(f: TjdsMatrix, x) -> np.ndarray:
    x = _vector(f, x)
    y = np.zeros(f.rows)
    ptr = f.tjd_ptr
    xo = x[f.col_order]
    for d in range(f.tjd):
        s, e = ptr[d], ptr[d + 1]
        # several columns may hit the same row within one segment
        np.add.at(y, f.row_indices[s:e], f.values[s:e] * xo[: e - s])
    return y


# -- computation counts ----------------------------------------------------

OP_COUNT_FORMATS = ("dense", "coo")


def op_count(
    format_id: str,
    rows: int,
    cols: int | None = None,
    nnz: int | None = None,
    npr: float | None = None,
) -> float:
    """Modelled computation count of one matrix-vector product.

    Only dense (``rows * (2*cols - 1)``) and COO (``nnz + rows*(npr - 1)``)
    are modelled; COO assumes every row holds ``npr`` nonzeros.
    """
    if format_id == "dense":
        if cols is None:
            raise ValueError("dense op count needs cols")
        return rows * (2 * cols - 1)
    if format_id == "coo":
        if nnz is None or npr is None:
            raise ValueError("coo op count needs nnz and npr")
        if npr < 1:
            raise ValueError(f"npr must be >= 1, got {npr}")
        return nnz + rows * (npr - 1)
    raise ValueError(
        f"no computation model for {format_id!r}; modelled formats: {', '.join(OP_COUNT_FORMATS)}"
    )


# -- timing ----------------------------------------------------------------

@dataclass(frozen=True)
class BenchSummary:
    samples: tuple[float, ...]
    result: np.ndarray

    @property
    def repetitions(self) -> int:
        return len(self.samples)

    @property
    def min(self) -> float:
        return min(self.samples)

    @property
    def median(self) -> float:
        return statistics.median(self.samples)

    @property
    def mean(self) -> float:
        return statistics.fmean(self.samples)


def bench_spmv(f, x, repetitions: int) -> BenchSummary:
    """Time ``repetitions`` sequential multiplies, in seconds per multiply."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    x = _vector(f, x)
    samples = []
    y = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        y = spmv(f, x)
        samples.append(time.perf_counter() - t0)
    return BenchSummary(tuple(samples), y)
