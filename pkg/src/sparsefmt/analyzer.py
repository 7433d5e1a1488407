"""Nonzero-distribution profile: shape, dense lines, diagonal density, randomness.

Percentages are bucketed with exact rational arithmetic; the float ``pct``
fields are for display only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction

import numpy as np

from .matrix_core import CooMatrix


class Level(IntEnum):
    VERY_LOW = 0
    LOW = 1
    MEDIUM = 2
    HIGH = 3
    VERY_HIGH = 4

    @property
    def label(self) -> str:
        return {0: "VeryLow", 1: "Low", 2: "Medium", 3: "High", 4: "VeryHigh"}[self.value]

    def __str__(self) -> str:
        return self.label


class Shape(str, Enum):
    SQUARE = "square"
    VERTICAL = "vertically_rectangular"
    HORIZONTAL = "horizontally_rectangular"

    def __str__(self) -> str:
        return self.value


class Category(str, Enum):
    """Distribution categories, declared in rule precedence order."""

    DIAGONAL = "diagonal_density"
    DENSE_ROWS = "dense_rows"
    DENSE_COLS = "dense_cols"
    RANDOMNESS = "randomness"

    def __str__(self) -> str:
        return self.value


# (lower bound, level), highest first; a pct at a bound takes that level.
_DENSE_LINE_BUCKETS = ((50, Level.VERY_HIGH), (35, Level.HIGH), (25, Level.MEDIUM), (15, Level.LOW))
_RANDOM_BUCKETS = ((75, Level.VERY_HIGH), (60, Level.HIGH), (50, Level.MEDIUM), (40, Level.LOW))
# (upper bound, level), lowest first: fewer nonzero diagonals is denser.
_DIAGONAL_BUCKETS = ((15, Level.VERY_HIGH), (30, Level.HIGH), (45, Level.MEDIUM), (60, Level.LOW))


def dense_line_level(pct: Fraction | float) -> Level:
    return _at_least(pct, _DENSE_LINE_BUCKETS)


def randomness_level(pct: Fraction | float) -> Level:
    return _at_least(pct, _RANDOM_BUCKETS)


def diagonal_level(pct: Fraction | float) -> Level:
    for bound, level in _DIAGONAL_BUCKETS:
        if pct <= bound:
            return level
    return Level.VERY_LOW


def _at_least(pct, buckets) -> Level:
    for bound, level in buckets:
        if pct >= bound:
            return level
    return Level.VERY_LOW


@dataclass(frozen=True)
class CategoryScore:
    pct: float
    level: Level
    count: int  # nonzeros in dense lines / nonzero diagonals / ideally random nonzeros
    degenerate: bool = False
    exact_pct: Fraction = Fraction(0)

    def __iter__(self):
        return iter((self.pct, self.level))


def _score(count: int, total: int, bucket) -> CategoryScore:
    exact = Fraction(100 * count, total)
    return CategoryScore(float(exact), bucket(exact), count, exact_pct=exact)


def _degenerate() -> CategoryScore:
    return CategoryScore(0.0, Level.VERY_LOW, 0, degenerate=True)


def classify_shape(rows: int, cols: int) -> Shape:
    if rows < 1 or cols < 1:
        raise ValueError(f"shape must be positive, got {rows}x{cols}")
    if rows == cols:
        return Shape.SQUARE
    return Shape.HORIZONTAL if cols > rows else Shape.VERTICAL


def dense_line_percentage(m: CooMatrix, axis: str = "rows") -> CategoryScore:
    """Share of nonzeros lying in lines holding more than half their length."""
    if axis not in ("rows", "cols"):
        raise ValueError(f"axis must be 'rows' or 'cols', got {axis!r}")
    nnz = m.nnz()
    if nnz == 0:
        return _degenerate()
    index, n_lines, length = (m.row, m.rows, m.cols) if axis == "rows" else (m.col, m.cols, m.rows)
    counts = np.bincount(index, minlength=n_lines)
    in_dense = int(counts[2 * counts > length].sum())
    return _score(in_dense, nnz, dense_line_level)


def diagonal_density(m: CooMatrix) -> CategoryScore:
    """Share of the ``rows + cols - 1`` diagonals that hold a nonzero."""
    if m.nnz() == 0:
        return _degenerate()
    nzd = len(np.unique(m.col - m.row))
    return _score(nzd, m.rows + m.cols - 1, diagonal_level)


def ideal_gap(rows: int, cols: int, nnz: int) -> int:
    """``round(rows*cols / nnz)`` with halves rounded up, at least 1."""
    return max(1, (2 * rows * cols + nnz) // (2 * nnz))


def _line_gaps(major: np.ndarray, minor: np.ndarray) -> np.ndarray:
    """Gap from each entry to its successor on the same line (predecessor for the last).

    Entries must be sorted by (major, minor).  Entries alone on their line get -1.
    """
    n = len(major)
    gaps = np.full(n, -1, dtype=np.int64)
    if n < 2:
        return gaps
    same = major[1:] == major[:-1]
    step = np.diff(minor)
    fwd = np.where(same, step, -1)
    gaps[:-1] = fwd
    # last entry of a line falls back to the gap from its predecessor
    last = np.ones(n, dtype=bool)
    last[:-1] = ~same
    back = np.full(n, -1, dtype=np.int64)
    back[1:] = np.where(same, step, -1)
    gaps[last] = back[last]
    return gaps


def randomness_percentage(m: CooMatrix) -> CategoryScore:
    """Share of nonzeros whose row and column gaps both equal the ideal gap."""
    nnz = m.nnz()
    if nnz < 2:
        return _degenerate()
    g = ideal_gap(m.rows, m.cols, nnz)
    row_gap = _line_gaps(m.row, m.col)
    order = np.lexsort((m.row, m.col))
    col_gap = np.empty(nnz, dtype=np.int64)
    col_gap[order] = _line_gaps(m.col[order], m.row[order])
    ideal = int(np.count_nonzero((row_gap == g) & (col_gap == g)))
    return _score(ideal, nnz, randomness_level)


@dataclass(frozen=True)
class DistributionProfile:
    rows: int
    cols: int
    shape: Shape
    nnz: int
    nzd: int
    max_row_nnz: int
    max_col_nnz: int
    ideal_gap: int | None
    dense_rows: CategoryScore
    dense_cols: CategoryScore
    diagonal: CategoryScore
    randomness: CategoryScore

    @property
    def density(self) -> float:
        return self.nnz / (self.rows * self.cols)

    def score(self, category: Category) -> CategoryScore:
        return {
            Category.DIAGONAL: self.diagonal,
            Category.DENSE_ROWS: self.dense_rows,
            Category.DENSE_COLS: self.dense_cols,
            Category.RANDOMNESS: self.randomness,
        }[Category(category)]

    def levels(self) -> dict[Category, Level]:
        return {c: self.score(c).level for c in Category}

    @property
    def degenerate(self) -> tuple[Category, ...]:
        return tuple(c for c in Category if self.score(c).degenerate)

    @property
    def is_empty(self) -> bool:
        return self.nnz == 0

    # flat accessors
    dense_row_pct = property(lambda self: self.dense_rows.pct)
    dense_col_pct = property(lambda self: self.dense_cols.pct)
    diag_pct = property(lambda self: self.diagonal.pct)
    random_pct = property(lambda self: self.randomness.pct)
    dense_row_level = property(lambda self: self.dense_rows.level)
    dense_col_level = property(lambda self: self.dense_cols.level)
    diag_level = property(lambda self: self.diagonal.level)
    random_level = property(lambda self: self.randomness.level)


def analyze(m: CooMatrix) -> DistributionProfile:
    nnz = m.nnz()
    return DistributionProfile(
        rows=m.rows,
        cols=m.cols,
        shape=classify_shape(m.rows, m.cols),
        nnz=nnz,
        nzd=len(np.unique(m.col - m.row)),
        max_row_nnz=int(np.bincount(m.row).max()) if nnz else 0,
        max_col_nnz=int(np.bincount(m.col).max()) if nnz else 0,
        ideal_gap=ideal_gap(m.rows, m.cols, nnz) if nnz else None,
        dense_rows=dense_line_percentage(m, "rows"),
        dense_cols=dense_line_percentage(m, "cols"),
        diagonal=diagonal_density(m),
        randomness=randomness_percentage(m),
    )
