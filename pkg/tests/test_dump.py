import pytest
from hypothesis import given

from helpers import coo_matrices
from sparsefmt.dump import DumpError, format_value, parse_dump, render_dump
from sparsefmt.formats import FORMAT_IDS, FormatError, convert, reconstruct
from sparsefmt.matrix_core import CooMatrix


@pytest.mark.parametrize("fid", FORMAT_IDS)
@given(m=coo_matrices())
def test_round_trip(fid, m):
    assert reconstruct(parse_dump(render_dump(convert(m, fid)))) == m


@pytest.mark.parametrize("fid", FORMAT_IDS)
def test_example_round_trip(matrix_a, fid):
    text = render_dump(convert(matrix_a, fid))
    assert text.splitlines()[:2] == [f"Format\t{fid}", "Shape\t4\t4"]
    assert reconstruct(parse_dump(text)) == matrix_a


def test_dia_rows(matrix_a):
    lines = render_dump(convert(matrix_a, "dia")).splitlines()
    assert lines[2] == "Offset\t-2\t0\t1\t2"
    assert len([line for line in lines if line.startswith("Diagonal ")]) == 4


def test_empty_round_trip():
    m = CooMatrix.empty(2, 3)
    for fid in FORMAT_IDS:
        assert reconstruct(parse_dump(render_dump(convert(m, fid)))) == m


@pytest.mark.parametrize("v, text", [(2.0, "2"), (-3.0, "-3"), (0.1, "0.1"), (1e300, "1e+300"),
                                     (2.5e-7, "2.5e-07")])
def test_format_value(v, text):
    assert format_value(v) == text
    assert float(text) == v


@pytest.mark.parametrize("text, message", [
    ("Shape\t2\t2\n", "Format"),
    ("Format\tbsr\nShape\t2\t2\n", "unknown format"),
    ("Format\tcsr\nShape\t2\t2\nValue\t1\nCol index\t1\n", "missing row"),
    ("Format\tcsr\nShape\t2\t2\nValue\tx\nCol index\t1\nRow ptr\t1\t2\t2\n", "bad number"),
    ("Format\tdia\nShape\t2\t3\nOffset\t0\nDiagonal 0\t1\t2\t3\n", "needs 2 values"),
    ("Format\tcsr\nFormat\tcsr\n", "duplicate"),
])
def test_parse_errors(text, message):
    with pytest.raises(DumpError, match=message):
        parse_dump(text)


def test_invalid_arrays_rejected():
    with pytest.raises(FormatError):
        parse_dump("Format\tcsr\nShape\t2\t2\nValue\t1\nCol index\t5\nRow ptr\t1\t2\t2\n")
