"""Print every storage format, the sizes and the SpMV results for the 4x4 example matrix."""

from sparsefmt import CooMatrix, analyze, convert, recommend_both, size_report
from sparsefmt.dump import render_dump
from sparsefmt.formats import FORMAT_IDS
from sparsefmt.spmv import op_count, spmv

A = [
    [2, 1, 0, 0],
    [0, 4, 3, 5],
    [7, 0, 6, 0],
    [0, 0, 0, 8],
]


def main() -> None:
    m = CooMatrix.from_triplets(4, 4, [(i, j, v) for i, row in enumerate(A) for j, v in enumerate(row) if v])
    for fid in FORMAT_IDS:
        print(render_dump(convert(m, fid)))
    print("sizes:", {s.format_id: s.modelled for s in size_report(m).sizes})
    print("ops: dense", op_count("dense", 4, 4), "coo", op_count("coo", 4, nnz=8, npr=2))
    for x in ([1, 1, 1, 1], [1, 2, 3, 4]):
        print(f"A @ {x} =", spmv(convert(m, "csr"), x).tolist())
    for obj, rec in recommend_both(analyze(m)).items():
        print(f"{obj}: {rec.format_id} ({rec.fired_rule})")


if __name__ == "__main__":
    main()
