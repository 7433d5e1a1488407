"""Plain-text array dumps of a storage format, with 1-based indices.

A dump is tab-separated, one labelled array per line, e.g. for CSR::

    Format      csr
    Shape       4   4
    Value       2   1   4   3   5   7   6   8
    Col index   1   2   2   3   4   1   3   4
    Row ptr     1   3   6   8   9

Index and pointer arrays are shifted by +1 for display; DIA offsets are
signed diagonal numbers and are written as-is.
"""

from __future__ import annotations

import numpy as np

from .formats import CscMatrix, CsrMatrix, DiaMatrix, JdsMatrix, TjdsMatrix, format_id
from .matrix_core import CooMatrix

# (label, attribute, shifted to 1-based?) per format, in dump order
LAYOUTS = {
    "coo": (("Value", "val", False), ("Row index", "row", True), ("Col index", "col", True)),
    "csr": (("Value", "values", False), ("Col index", "col_indices", True), ("Row ptr", "row_ptr", True)),
    "csc": (("Value", "values", False), ("Row index", "row_indices", True), ("Col ptr", "col_ptr", True)),
    "jds": (
        ("Perm", "perm", True),
        ("Value", "values", False),
        ("Col index", "col_indices", True),
        ("JD ptr", "jd_ptr", True),
    ),
    "tjds": (
        ("Col order", "col_order", True),
        ("Value", "values", False),
        ("Row index", "row_indices", True),
        ("TJD ptr", "tjd_ptr", True),
    ),
}

_CLASSES = {"coo": CooMatrix, "csr": CsrMatrix, "csc": CscMatrix, "jds": JdsMatrix, "tjds": TjdsMatrix}


class DumpError(ValueError):
    pass


def format_value(v: float) -> str:
    """Shortest round-trip text; integral values lose the trailing ``.0``."""
    v = float(v)
    if v.is_integer() and abs(v) < 2**53:
        return str(int(v))
    return repr(v)


def _row(label: str, items) -> str:
    return "\t".join([label, *items])


def render_dump(f) -> str:
    fid = format_id(f)
    lines = [_row("Format", [fid]), _row("Shape", [str(f.rows), str(f.cols)])]
    if fid == "dia":
        lines.append(_row("Offset", [str(int(k)) for k in f.offsets]))
        for k, diag in zip(f.offsets, f.diagonals):
            lines.append(_row(f"Diagonal {int(k)}", [format_value(v) for v in diag]))
    else:
        for label, attr, shift in LAYOUTS[fid]:
            arr = getattr(f, attr)
            if shift:
                lines.append(_row(label, [str(int(i) + 1) for i in arr]))
            else:
                lines.append(_row(label, [format_value(v) for v in arr]))
    return "\n".join(lines) + "\n"


def parse_dump(text: str):
    """Inverse of :func:`render_dump`; returns the validated format object."""
    rows = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        label, *items = line.split("\t")
        if label in rows:
            raise DumpError(f"line {lineno}: duplicate row {label!r}")
        rows[label] = items
    try:
        (fid,) = rows["Format"]
        m, n = (int(t) for t in rows["Shape"])
    except (KeyError, ValueError):
        raise DumpError("dump needs 'Format' and 'Shape' rows") from None

    if fid != "dia" and fid not in LAYOUTS:
        raise DumpError(f"unknown format {fid!r}")
    try:
        if fid == "dia":
            offsets = [int(t) for t in rows["Offset"]]
            diagonals = [[float(t) for t in rows[f"Diagonal {k}"]] for k in offsets]
        else:
            kwargs = {}
            for label, attr, shift in LAYOUTS[fid]:
                items = rows[label]
                kwargs[attr] = [int(t) - 1 for t in items] if shift else [float(t) for t in items]
    except KeyError as exc:
        raise DumpError(f"missing row {exc.args[0]!r}") from None
    except ValueError as exc:
        raise DumpError(f"bad number in dump: {exc}") from None
    if fid == "dia":
        width = min(m, n)
        if any(len(d) != width for d in diagonals):
            raise DumpError(f"every diagonal row needs {width} values")
        return DiaMatrix(m, n, offsets, np.array(diagonals, dtype=float).reshape(len(offsets), width))
    if fid == "coo":
        return CooMatrix(m, n, kwargs["row"], kwargs["col"], kwargs["val"])
    return _CLASSES[fid](m, n, **kwargs)
