"""Canonical matrix types, Matrix Market I/O and synthetic sparsity patterns."""

from __future__ import annotations

import io
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

DENSE_ELEMENT_LIMIT = 10**8


class MatrixMarketError(ValueError):
    """Malformed Matrix Market input; ``line`` is the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.reason = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DenseBudgetError(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class CooMatrix:
    """Coordinate triplets, 0-based and sorted row-major with no explicit zeros.

    This is the hub representation: every other format is built from it and
    reconstructs back to it.  Use :meth:`from_triplets` to assemble unsorted
    or duplicated input; the plain constructor only validates.
    """

    rows: int
    cols: int
    row: np.ndarray = field(repr=False)
    col: np.ndarray = field(repr=False)
    val: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative shape {self.rows}x{self.cols}")
        row = _frozen(np.array(self.row, dtype=np.int64).reshape(-1))
        col = _frozen(np.array(self.col, dtype=np.int64).reshape(-1))
        val = _frozen(np.array(self.val, dtype=np.float64).reshape(-1))
        if not (len(row) == len(col) == len(val)):
            raise ValueError("row, col and val must have equal length")
        if len(row):
            if row.min() < 0 or row.max() >= self.rows:
                raise ValueError("row index out of bounds")
            if col.min() < 0 or col.max() >= self.cols:
                raise ValueError("column index out of bounds")
            key = row * self.cols + col
            if np.any(np.diff(key) <= 0):
                raise ValueError("entries must be strictly sorted row-major without duplicates")
            if np.any(val == 0.0):
                raise ValueError("explicit zero entries are not allowed")
        object.__setattr__(self, "row", row)
        object.__setattr__(self, "col", col)
        object.__setattr__(self, "val", val)

    @classmethod
    def from_triplets(
        cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, float]]
    ) -> CooMatrix:
        """Assemble triplets in any order: duplicates are summed, zeros dropped.

        Duplicate sums use ``math.fsum`` so the result does not depend on the
        order in which the triplets arrive.
        """
        acc: dict[tuple[int, int], list[float]] = defaultdict(list)
        for i, j, v in triplets:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i}, {j}) outside {rows}x{cols}")
            acc[(int(i), int(j))].append(float(v))
        items = sorted((k, math.fsum(vs)) for k, vs in acc.items())
        items = [(k, v) for k, v in items if v != 0.0]
        return cls(
            rows,
            cols,
            np.array([k[0] for k, _ in items], dtype=np.int64),
            np.array([k[1] for k, _ in items], dtype=np.int64),
            np.array([v for _, v in items], dtype=np.float64),
        )

    @classmethod
    def empty(cls, rows: int, cols: int) -> CooMatrix:
        return cls(rows, cols, np.zeros(0, np.int64), np.zeros(0, np.int64), np.zeros(0))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def nnz(self) -> int:
        return len(self.val)

    @property
    def entries(self) -> list[tuple[int, int, float]]:
        return [(int(i), int(j), float(v)) for i, j, v in zip(self.row, self.col, self.val)]

    def density(self) -> float:
        total = self.rows * self.cols
        return self.nnz() / total if total else 0.0

    def element_count(self) -> int:
        return 3 * self.nnz()

    def transpose(self) -> CooMatrix:
        order = np.lexsort((self.row, self.col))
        return CooMatrix(self.cols, self.rows, self.col[order], self.row[order], self.val[order])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CooMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.row, other.row)
            and np.array_equal(self.col, other.col)
            and np.array_equal(self.val, other.val)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    rows: int
    cols: int
    values: np.ndarray = field(repr=False)  # row-major, length rows*cols

    def __post_init__(self) -> None:
        values = _frozen(np.array(self.values, dtype=np.float64).reshape(-1))
        if len(values) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} values, got {len(values)}")
        object.__setattr__(self, "values", values)

    @property
    def array(self) -> np.ndarray:
        return self.values.reshape(self.rows, self.cols)

    def element_count(self) -> int:
        return self.rows * self.cols

    def to_coo(self) -> CooMatrix:
        i, j = np.nonzero(self.array)
        return CooMatrix(self.rows, self.cols, i, j, self.array[i, j])


def to_dense(m: CooMatrix, max_elements: int = DENSE_ELEMENT_LIMIT) -> DenseMatrix:
    total = m.rows * m.cols
    if total > max_elements:
        raise DenseBudgetError(
            f"{m.rows}x{m.cols} = {total} elements exceeds the dense budget of {max_elements}"
        )
    values = np.zeros(total)
    values[m.row * m.cols + m.col] = m.val
    return DenseMatrix(m.rows, m.cols, values)


# -- Matrix Market ---------------------------------------------------------

_FIELDS = {"real", "integer", "pattern"}
_SYMMETRIES = {"general", "symmetric"}


def read_matrix_market(source: str | TextIO) -> CooMatrix:
    """Parse Matrix Market coordinate data into an assembled :class:`CooMatrix`.

    Accepts ``real``, ``integer`` and ``pattern`` fields with ``general`` or
    ``symmetric`` storage.  Symmetric files are expanded to full storage.
    Every error carries the offending line number.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    lines = enumerate(stream, start=1)

    banner = next(lines, None)
    if banner is None:
        raise MatrixMarketError("empty input, expected %%MatrixMarket banner", 1)
    lineno, text = banner
    tokens = text.split()
    if not tokens or tokens[0].lower() != "%%matrixmarket":
        raise MatrixMarketError("missing %%MatrixMarket banner", lineno)
    if len(tokens) != 5:
        raise MatrixMarketError("banner must be '%%MatrixMarket matrix coordinate <field> <symmetry>'", lineno)
    obj, fmt, fld, sym = (t.lower() for t in tokens[1:])
    if obj != "matrix":
        raise MatrixMarketError(f"unsupported object {obj!r}", lineno)
    if fmt != "coordinate":
        raise MatrixMarketError(f"only coordinate format is supported, got {fmt!r}", lineno)
    if fld not in _FIELDS:
        raise MatrixMarketError(f"unsupported field {fld!r}", lineno)
    if sym not in _SYMMETRIES:
        raise MatrixMarketError(f"unsupported symmetry {sym!r}", lineno)

    size = None
    for lineno, text in lines:
        stripped = text.strip()
        if not stripped or stripped.startswith("%"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise MatrixMarketError("size line must be 'M N NNZ'", lineno)
        try:
            size = tuple(int(p) for p in parts)
        except ValueError:
            raise MatrixMarketError(f"non-integer size line {stripped!r}", lineno) from None
        if size[0] < 1 or size[1] < 1 or size[2] < 0:
            raise MatrixMarketError(f"invalid size line {stripped!r}", lineno)
        break
    if size is None:
        raise MatrixMarketError("missing size line", lineno + 1)
    M, N, declared = size
    if sym == "symmetric" and M != N:
        raise MatrixMarketError("symmetric matrix must be square", lineno)

    width = 2 if fld == "pattern" else 3
    triplets: list[tuple[int, int, float]] = []
    seen = 0
    for lineno, text in lines:
        stripped = text.strip()
        if not stripped or stripped.startswith("%"):
            continue
        seen += 1
        if seen > declared:
            raise MatrixMarketError(f"more entries than the declared {declared}", lineno)
        parts = stripped.split()
        if len(parts) != width:
            raise MatrixMarketError(f"expected {width} tokens, got {len(parts)}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise MatrixMarketError(f"non-integer index in {stripped!r}", lineno) from None
        if not (1 <= i <= M and 1 <= j <= N):
            raise MatrixMarketError(f"index ({i}, {j}) outside declared {M}x{N}", lineno)
        if fld == "pattern":
            v = 1.0
        else:
            try:
                v = int(parts[2]) if fld == "integer" else float(parts[2])
            except ValueError:
                raise MatrixMarketError(f"non-numeric value {parts[2]!r}", lineno) from None
            v = float(v)
            if not math.isfinite(v):
                raise MatrixMarketError(f"non-finite value {parts[2]!r}", lineno)
        triplets.append((i - 1, j - 1, v))
        if sym == "symmetric" and i != j:
            triplets.append((j - 1, i - 1, v))
    if seen < declared:
        raise MatrixMarketError(f"expected {declared} entries, found {seen}", lineno + 1)
    return CooMatrix.from_triplets(M, N, triplets)


def write_matrix_market(m: CooMatrix) -> str:
    out = ["%%MatrixMarket matrix coordinate real general", f"{m.rows} {m.cols} {m.nnz()}"]
    out.extend(f"{i + 1} {j + 1} {v!r}" for i, j, v in m.entries)
    return "\n".join(out) + "\n"


def load_matrix_market(path) -> CooMatrix:
    with open(path, encoding="utf-8") as fh:
        return read_matrix_market(fh)


def save_matrix_market(m: CooMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_matrix_market(m))


# -- synthetic patterns ----------------------------------------------------

PATTERNS = ("identity", "tridiagonal", "dense_rows", "dense_cols", "checkerboard", "uniform_random")


def generate_pattern(
    kind: str, rows: int, cols: int, param: float | None = None, *, seed: int = 0
) -> CooMatrix:
    """Deterministic fixture matrices exhibiting one distribution category.

    ``param`` is the row/column count for ``dense_rows``/``dense_cols``, the
    stride for ``checkerboard`` and the density for ``uniform_random``.
    Lines not made dense by ``dense_rows``/``dense_cols`` keep one entry on
    the main diagonal (wrapped modulo the other dimension).
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"shape must be positive, got {rows}x{cols}")
    trip: list[tuple[int, int, float]] = []
    if kind == "identity":
        trip = [(i, i, 1.0) for i in range(min(rows, cols))]
    elif kind == "tridiagonal":
        for i in range(rows):
            for j, v in ((i - 1, -1.0), (i, 2.0), (i + 1, -1.0)):
                if 0 <= j < cols:
                    trip.append((i, j, v))
    elif kind == "dense_rows":
        k = _count_param(param, rows, kind)
        for i in range(rows):
            if i < k:
                trip.extend((i, j, 1.0) for j in range(cols))
            else:
                trip.append((i, i % cols, 1.0))
    elif kind == "dense_cols":
        k = _count_param(param, cols, kind)
        for j in range(cols):
            if j < k:
                trip.extend((i, j, 1.0) for i in range(rows))
            else:
                trip.append((j % rows, j, 1.0))
    elif kind == "checkerboard":
        stride = _count_param(2 if param is None else param, None, kind)
        if stride < 1:
            raise ValueError("checkerboard stride must be >= 1")
        trip = [(i, j, 1.0) for i in range(rows) for j in range(cols) if (i + j) % stride == 0]
    elif kind == "uniform_random":
        if param is None or not (0.0 < param <= 1.0):
            raise ValueError("uniform_random density must lie in (0, 1]")
        rng = np.random.default_rng(seed)
        mask = rng.random((rows, cols)) < param
        vals = rng.uniform(0.5, 1.5, size=(rows, cols))
        i, j = np.nonzero(mask)
        return CooMatrix(rows, cols, i, j, vals[i, j])
    else:
        raise ValueError(f"unknown pattern {kind!r}; expected one of {', '.join(PATTERNS)}")
    return CooMatrix.from_triplets(rows, cols, trip)


def _count_param(param: float | None, limit: int | None, kind: str) -> int:
    if param is None or float(param) != int(param):
        raise ValueError(f"{kind} needs an integer parameter, got {param!r}")
    k = int(param)
    if k < 0 or (limit is not None and k > limit):
        raise ValueError(f"{kind} parameter {k} out of range")
    return k
