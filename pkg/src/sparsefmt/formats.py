"""Compressed sparse storage formats built from, and reconstructed to, COO.

All index arrays are 0-based.  Each format validates its structural
invariants on construction and raises :class:`FormatError` on violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .matrix_core import CooMatrix, _frozen


class FormatError(ValueError):
    pass


def _ints(a) -> np.ndarray:
    return _frozen(np.array(a, dtype=np.int64).reshape(-1))


def _floats(a) -> np.ndarray:
    return _frozen(np.array(a, dtype=np.float64).reshape(-1))


def _check(cond, message: str) -> None:
    if not cond:
        raise FormatError(message)


def _check_ptr(ptr: np.ndarray, length: int, total: int, name: str) -> None:
    _check(len(ptr) == length, f"{name} must have length {length}, got {len(ptr)}")
    _check(ptr[0] == 0, f"{name}[0] must be 0")
    _check(ptr[-1] == total, f"{name}[-1] must equal nnz={total}")
    _check(np.all(np.diff(ptr) >= 0), f"{name} must be nondecreasing")


def _is_permutation(p: np.ndarray, n: int) -> bool:
    return len(p) == n and np.array_equal(np.sort(p), np.arange(n))


def _same_struct(a, b, names) -> bool:
    if type(a) is not type(b):
        return NotImplemented
    return (a.rows, a.cols) == (b.rows, b.cols) and all(
        np.array_equal(getattr(a, n), getattr(b, n)) for n in names
    )


@dataclass(frozen=True, eq=False)
class CsrMatrix:
    rows: int
    cols: int
    values: np.ndarray
    col_indices: np.ndarray
    row_ptr: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _floats(self.values))
        object.__setattr__(self, "col_indices", _ints(self.col_indices))
        object.__setattr__(self, "row_ptr", _ints(self.row_ptr))
        nnz = len(self.values)
        _check(len(self.col_indices) == nnz, "col_indices length must equal nnz")
        _check_ptr(self.row_ptr, self.rows + 1, nnz, "row_ptr")
        if nnz:
            _check(self.col_indices.min() >= 0 and self.col_indices.max() < self.cols,
                   "column index out of bounds")
            rows = np.repeat(np.arange(self.rows), np.diff(self.row_ptr))
            same_row = rows[1:] == rows[:-1]
            _check(np.all(np.diff(self.col_indices)[same_row] > 0),
                   "column indices must increase strictly within a row")

    def nnz(self) -> int:
        return len(self.values)

    def element_count(self) -> int:
        return len(self.values) + len(self.col_indices) + len(self.row_ptr)

    def __eq__(self, other):
        return _same_struct(self, other, ("values", "col_indices", "row_ptr"))


@dataclass(frozen=True, eq=False)
class CscMatrix:
    rows: int
    cols: int
    values: np.ndarray
    row_indices: np.ndarray
    col_ptr: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _floats(self.values))
        object.__setattr__(self, "row_indices", _ints(self.row_indices))
        object.__setattr__(self, "col_ptr", _ints(self.col_ptr))
        nnz = len(self.values)
        _check(len(self.row_indices) == nnz, "row_indices length must equal nnz")
        _check_ptr(self.col_ptr, self.cols + 1, nnz, "col_ptr")
        if nnz:
            _check(self.row_indices.min() >= 0 and self.row_indices.max() < self.rows,
                   "row index out of bounds")
            cols = np.repeat(np.arange(self.cols), np.diff(self.col_ptr))
            same_col = cols[1:] == cols[:-1]
            _check(np.all(np.diff(self.row_indices)[same_col] > 0),
                   "row indices must increase strictly within a column")

    def nnz(self) -> int:
        return len(self.values)

    def element_count(self) -> int:
        return len(self.values) + len(self.row_indices) + len(self.col_ptr)

    def __eq__(self, other):
        return _same_struct(self, other, ("values", "row_indices", "col_ptr"))


def diagonal_extent(rows: int, cols: int, offset: int) -> tuple[int, int, int]:
    """Start row, start column and length of diagonal ``col - row == offset``."""
    r0, c0 = max(0, -offset), max(0, offset)
    return r0, c0, max(0, min(rows - r0, cols - c0))


@dataclass(frozen=True, eq=False)
class DiaMatrix:
    """Padded diagonals keyed by ``offset = col - row``.

    ``diagonals[d, p]`` holds element ``(r0 + p, c0 + p)`` of diagonal
    ``offsets[d]``; every row has length ``min(rows, cols)`` and slots past the
    diagonal's end are 0.0.
    """

    rows: int
    cols: int
    offsets: np.ndarray
    diagonals: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        offsets = _ints(self.offsets)
        width = min(self.rows, self.cols)
        diagonals = np.array(self.diagonals, dtype=np.float64).reshape(len(offsets), width)
        _frozen(diagonals)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "diagonals", diagonals)
        if len(offsets):
            _check(np.all(np.diff(offsets) > 0), "offsets must be strictly ascending")
            _check(offsets[0] >= -(self.rows - 1) and offsets[-1] <= self.cols - 1,
                   "offset outside the matrix")
        for d, k in enumerate(offsets):
            _, _, length = diagonal_extent(self.rows, self.cols, int(k))
            _check(np.all(diagonals[d, length:] == 0.0), f"nonzero padding on diagonal {k}")
            _check(np.any(diagonals[d, :length] != 0.0), f"diagonal {k} holds no nonzero")

    @property
    def nzd(self) -> int:
        return len(self.offsets)

    def nnz(self) -> int:
        return int(np.count_nonzero(self.diagonals))

    def element_count(self) -> int:
        return self.offsets.size + self.diagonals.size

    def __eq__(self, other):
        return _same_struct(self, other, ("offsets", "diagonals"))


@dataclass(frozen=True, eq=False)
class JdsMatrix:
    """Jagged diagonals: rows permuted by descending nonzero count.

    Segment ``d`` (``jd_ptr[d]:jd_ptr[d+1]``) holds the ``d``-th nonzero of
    every row with more than ``d`` nonzeros, listed in ``perm`` order.
    """

    rows: int
    cols: int
    perm: np.ndarray
    values: np.ndarray
    col_indices: np.ndarray
    jd_ptr: np.ndarray

    def __post_init__(self) -> None:
        for name in ("perm", "col_indices", "jd_ptr"):
            object.__setattr__(self, name, _ints(getattr(self, name)))
        object.__setattr__(self, "values", _floats(self.values))
        nnz = len(self.values)
        _check(_is_permutation(self.perm, self.rows), "perm must be a permutation of the rows")
        _check(len(self.col_indices) == nnz, "col_indices length must equal nnz")
        _check(len(self.jd_ptr) >= 1, "jd_ptr must not be empty")
        _check_ptr(self.jd_ptr, len(self.jd_ptr), nnz, "jd_ptr")
        seg = np.diff(self.jd_ptr)
        _check(np.all(seg > 0), "jagged diagonals must be nonempty")
        _check(np.all(np.diff(seg) <= 0), "jagged diagonal lengths must be nonincreasing")
        if len(seg):
            _check(seg[0] <= self.rows, "first jagged diagonal longer than the row count")
        if nnz:
            _check(self.col_indices.min() >= 0 and self.col_indices.max() < self.cols,
                   "column index out of bounds")

    @property
    def jd(self) -> int:
        return len(self.jd_ptr) - 1

    def nnz(self) -> int:
        return len(self.values)

    def element_count(self) -> int:
        return len(self.values) + len(self.col_indices) + len(self.jd_ptr) + len(self.perm)

    def __eq__(self, other):
        return _same_struct(self, other, ("perm", "values", "col_indices", "jd_ptr"))


@dataclass(frozen=True, eq=False)
class TjdsMatrix:
    """Transpose jagged diagonals: columns compacted upwards.

    ``col_order`` is kept so the matrix can be rebuilt but, like the size
    formula, :meth:`element_count` leaves it out.
    """

    rows: int
    cols: int
    col_order: np.ndarray
    values: np.ndarray
    row_indices: np.ndarray
    tjd_ptr: np.ndarray

    def __post_init__(self) -> None:
        for name in ("col_order", "row_indices", "tjd_ptr"):
            object.__setattr__(self, name, _ints(getattr(self, name)))
        object.__setattr__(self, "values", _floats(self.values))
        nnz = len(self.values)
        _check(_is_permutation(self.col_order, self.cols),
               "col_order must be a permutation of the columns")
        _check(len(self.row_indices) == nnz, "row_indices length must equal nnz")
        _check(len(self.tjd_ptr) >= 1, "tjd_ptr must not be empty")
        _check_ptr(self.tjd_ptr, len(self.tjd_ptr), nnz, "tjd_ptr")
        seg = np.diff(self.tjd_ptr)
        _check(np.all(seg > 0), "transpose jagged diagonals must be nonempty")
        _check(np.all(np.diff(seg) <= 0), "transpose jagged diagonal lengths must be nonincreasing")
        if len(seg):
            _check(seg[0] <= self.cols, "first transpose jagged diagonal longer than the column count")
        if nnz:
            _check(self.row_indices.min() >= 0 and self.row_indices.max() < self.rows,
                   "row index out of bounds")

    @property
    def tjd(self) -> int:
        return len(self.tjd_ptr) - 1

    def nnz(self) -> int:
        return len(self.values)

    def element_count(self) -> int:
        return len(self.values) + len(self.row_indices) + len(self.tjd_ptr)

    def __eq__(self, other):
        return _same_struct(self, other, ("col_order", "values", "row_indices", "tjd_ptr"))


SparseFormat = Union[CooMatrix, CsrMatrix, CscMatrix, DiaMatrix, JdsMatrix, TjdsMatrix]

FORMAT_IDS = ("coo", "csr", "csc", "dia", "jds", "tjds")


# -- conversions -----------------------------------------------------------

def _line_ptr(index: np.ndarray, n: int) -> np.ndarray:
    return np.concatenate(([0], np.cumsum(np.bincount(index, minlength=n)))).astype(np.int64)


def to_csr(m: CooMatrix) -> CsrMatrix:
    return CsrMatrix(m.rows, m.cols, m.val, m.col, _line_ptr(m.row, m.rows))


def to_csc(m: CooMatrix) -> CscMatrix:
    order = np.lexsort((m.row, m.col))
    return CscMatrix(m.rows, m.cols, m.val[order], m.row[order], _line_ptr(m.col, m.cols))


def to_dia(m: CooMatrix) -> DiaMatrix:
    k = m.col - m.row
    offsets, which = np.unique(k, return_inverse=True)
    diagonals = np.zeros((len(offsets), min(m.rows, m.cols)))
    # position along diagonal k is min(row, col)
    diagonals[which, np.minimum(m.row, m.col)] = m.val
    return DiaMatrix(m.rows, m.cols, offsets, diagonals)


def _jagged(major: np.ndarray, n_major: int, minor_order: np.ndarray):
    """Shared JDS/TJDS layout.

    ``major`` holds the line (row for JDS, column for TJDS) of each entry and
    ``minor_order`` sorts entries by (line, position within line).  Returns the
    stable line permutation, the entry order and the segment pointer.
    """
    counts = np.bincount(major, minlength=n_major)
    perm = np.argsort(-counts, kind="stable")
    rank = np.empty(n_major, dtype=np.int64)
    rank[perm] = np.arange(n_major)
    ptr = _line_ptr(major, n_major)
    sorted_major = major[minor_order]
    pos = np.arange(len(major)) - ptr[sorted_major]
    order = minor_order[np.lexsort((rank[sorted_major], pos))]
    seg_ptr = np.concatenate(([0], np.cumsum(np.bincount(pos)))).astype(np.int64)
    return perm, order, seg_ptr


def to_jds(m: CooMatrix) -> JdsMatrix:
    perm, order, jd_ptr = _jagged(m.row, m.rows, np.arange(m.nnz()))
    return JdsMatrix(m.rows, m.cols, perm, m.val[order], m.col[order], jd_ptr)


def to_tjds(m: CooMatrix) -> TjdsMatrix:
    col_major = np.lexsort((m.row, m.col))
    col_order, order, tjd_ptr = _jagged(m.col, m.cols, col_major)
    return TjdsMatrix(m.rows, m.cols, col_order, m.val[order], m.row[order], tjd_ptr)


def to_coo(m: CooMatrix) -> CooMatrix:
    return m


CONVERTERS = {
    "coo": to_coo,
    "csr": to_csr,
    "csc": to_csc,
    "dia": to_dia,
    "jds": to_jds,
    "tjds": to_tjds,
}


def convert(m: CooMatrix, format_id: str) -> SparseFormat:
    try:
        return CONVERTERS[format_id](m)
    except KeyError:
        raise ValueError(
            f"unknown format {format_id!r}; valid ids: {', '.join(FORMAT_IDS)}"
        ) from None


# -- reconstruction --------------------------------------------------------

def _jagged_lines(ptr: np.ndarray, order: np.ndarray) -> np.ndarray:
    """Line of each stored entry: entry ``t`` of a segment belongs to ``order[t]``."""
    seg = np.diff(ptr)
    pos = np.arange(ptr[-1]) - np.repeat(ptr[:-1], seg)
    return order[pos]


def _assemble(rows: int, cols: int, r, c, v) -> CooMatrix:
    r, c, v = np.asarray(r, np.int64), np.asarray(c, np.int64), np.asarray(v, np.float64)
    if np.any(v == 0.0):
        raise FormatError("stored entry has value 0.0")
    order = np.lexsort((c, r))
    try:
        return CooMatrix(rows, cols, r[order], c[order], v[order])
    except ValueError as exc:
        raise FormatError(f"inconsistent format data: {exc}") from None


def reconstruct(f: SparseFormat) -> CooMatrix:
    if isinstance(f, CooMatrix):
        return f
    if isinstance(f, CsrMatrix):
        r = np.repeat(np.arange(f.rows), np.diff(f.row_ptr))
        return _assemble(f.rows, f.cols, r, f.col_indices, f.values)
    if isinstance(f, CscMatrix):
        c = np.repeat(np.arange(f.cols), np.diff(f.col_ptr))
        return _assemble(f.rows, f.cols, f.row_indices, c, f.values)
    if isinstance(f, DiaMatrix):
        rs, cs, vs = [], [], []
        for d, k in enumerate(f.offsets):
            r0, c0, length = diagonal_extent(f.rows, f.cols, int(k))
            (p,) = np.nonzero(f.diagonals[d, :length])
            rs.append(r0 + p)
            cs.append(c0 + p)
            vs.append(f.diagonals[d, p])
        if not rs:
            return CooMatrix.empty(f.rows, f.cols)
        return _assemble(f.rows, f.cols, np.concatenate(rs), np.concatenate(cs), np.concatenate(vs))
    if isinstance(f, JdsMatrix):
        r = _jagged_lines(f.jd_ptr, f.perm)
        return _assemble(f.rows, f.cols, r, f.col_indices, f.values)
    if isinstance(f, TjdsMatrix):
        c = _jagged_lines(f.tjd_ptr, f.col_order)
        return _assemble(f.rows, f.cols, f.row_indices, c, f.values)
    raise TypeError(f"not a sparse format: {type(f).__name__}")


def format_id(f) -> str:
    for fid, cls in (("coo", CooMatrix), ("csr", CsrMatrix), ("csc", CscMatrix),
                     ("dia", DiaMatrix), ("jds", JdsMatrix), ("tjds", TjdsMatrix)):
        if isinstance(f, cls):
            return fid
    raise TypeError(f"not a sparse format: {type(f).__name__}")
