"""Element-count storage model for each format, checked against built arrays."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .formats import convert
from .matrix_core import CooMatrix

SIZE_FORMATS = ("dense", "coo", "csr", "csc", "dia", "jds", "tjds")
VALUE_BYTES = 8

_REQUIRED = {
    "dense": ("rows", "cols"),
    "coo": ("nnz",),
    "csr": ("nnz", "rows"),
    "csc": ("nnz", "cols"),
    "dia": ("rows", "cols", "nzd"),
    "jds": ("nnz", "jd", "rows"),
    "tjds": ("nnz", "tjd"),
}


class SizeMismatchError(AssertionError):
    """Modelled and measured element counts disagree: an implementation bug."""


def model_size(
    format_id: str,
    *,
    rows: int | None = None,
    cols: int | None = None,
    nnz: int | None = None,
    nzd: int | None = None,
    jd: int | None = None,
    tjd: int | None = None,
) -> int:
    params = dict(rows=rows, cols=cols, nnz=nnz, nzd=nzd, jd=jd, tjd=tjd)
    try:
        required = _REQUIRED[format_id]
    except KeyError:
        raise ValueError(f"unknown format {format_id!r}") from None
    missing = [p for p in required if params[p] is None]
    if missing:
        raise ValueError(f"{format_id} size needs {', '.join(missing)}")

    if format_id == "dense":
        return rows * cols
    if format_id == "coo":
        return 3 * nnz
    if format_id == "csr":
        return 2 * nnz + rows + 1
    if format_id == "csc":
        return 2 * nnz + cols + 1
    if format_id == "dia":
        return nzd + nzd * (rows if rows <= cols else cols)
    if format_id == "jds":
        return 2 * nnz + (jd + 1) + rows
    return 2 * nnz + (tjd + 1)


def slot_split(format_id: str, rows: int, cols: int, nnz: int, nzd: int, jd: int, tjd: int) -> tuple[int, int]:
    """(value slots, index slots) of a format; the two sum to its element count."""
    if format_id == "dense":
        return rows * cols, 0
    if format_id == "dia":
        return nzd * min(rows, cols), nzd
    index = {
        "coo": 2 * nnz,
        "csr": nnz + rows + 1,
        "csc": nnz + cols + 1,
        "jds": nnz + jd + 1 + rows,
        "tjds": nnz + tjd + 1,
    }[format_id]
    return nnz, index


def modelled_sizes(rows: int, cols: int, nnz: int, nzd: int, jd: int, tjd: int) -> dict[str, int]:
    return {
        f: model_size(f, rows=rows, cols=cols, nnz=nnz, nzd=nzd, jd=jd, tjd=tjd)
        for f in SIZE_FORMATS
    }


@dataclass(frozen=True)
class FormatSize:
    format_id: str
    modelled: int
    measured: int
    value_slots: int
    index_slots: int

    def bytes(self, index_bytes: int = 4) -> int:
        return VALUE_BYTES * self.value_slots + index_bytes * self.index_slots


@dataclass(frozen=True)
class SizeReport:
    rows: int
    cols: int
    nnz: int
    nzd: int
    jd: int
    tjd: int
    sizes: tuple[FormatSize, ...]

    @property
    def dense_elements(self) -> int:
        return self.rows * self.cols

    def __getitem__(self, format_id: str) -> FormatSize:
        for s in self.sizes:
            if s.format_id == format_id:
                return s
        raise KeyError(format_id)

    def minimum(self, include_dense: bool = True) -> tuple[str, ...]:
        """Format id(s) with the fewest modelled elements, ties in table order."""
        pool = [s for s in self.sizes if include_dense or s.format_id != "dense"]
        best = min(s.modelled for s in pool)
        return tuple(s.format_id for s in pool if s.modelled == best)


def structure_counts(m: CooMatrix) -> dict[str, int]:
    """NNZ, nonzero-diagonal count and the longest row/column, from COO alone."""
    nnz = m.nnz()
    return {
        "nnz": nnz,
        "nzd": len(np.unique(m.col - m.row)),
        "jd": int(np.bincount(m.row).max()) if nnz else 0,
        "tjd": int(np.bincount(m.col).max()) if nnz else 0,
    }


def size_report(m: CooMatrix) -> SizeReport:
    counts = structure_counts(m)
    model = modelled_sizes(m.rows, m.cols, **counts)
    sizes = []
    for fid in SIZE_FORMATS:
        measured = m.rows * m.cols if fid == "dense" else convert(m, fid).element_count()
        if measured != model[fid]:
            raise SizeMismatchError(
                f"{fid}: modelled {model[fid]} elements but built {measured}"
            )
        v, i = slot_split(fid, m.rows, m.cols, **counts)
        sizes.append(FormatSize(fid, model[fid], measured, v, i))
    return SizeReport(m.rows, m.cols, sizes=tuple(sizes), **counts)
