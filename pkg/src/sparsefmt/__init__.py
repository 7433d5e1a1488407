"""Sparse storage formats, SpMV kernels, size models and a format recommender."""

from .analyzer import (
    Category,
    DistributionProfile,
    Level,
    Shape,
    analyze,
    classify_shape,
    dense_line_percentage,
    diagonal_density,
    randomness_percentage,
)
from .formats import (
    FORMAT_IDS,
    CscMatrix,
    CsrMatrix,
    DiaMatrix,
    FormatError,
    JdsMatrix,
    TjdsMatrix,
    convert,
    reconstruct,
    to_csc,
    to_csr,
    to_dia,
    to_jds,
    to_tjds,
)
from .matrix_core import (
    CooMatrix,
    DenseMatrix,
    MatrixMarketError,
    generate_pattern,
    read_matrix_market,
    to_dense,
    write_matrix_market,
)
from .recommender import Recommendation, fallback, recommend, recommend_both
from .size_model import SizeReport, model_size, size_report
from .spmv import bench_spmv, op_count, spmv

__version__ = "0.1.0"

__all__ = [
    "analyze",
    "bench_spmv",
    "Category",
    "classify_shape",
    "convert",
    "CooMatrix",
    "CscMatrix",
    "CsrMatrix",
    "dense_line_percentage",
    "DenseMatrix",
    "diagonal_density",
    "DiaMatrix",
    "DistributionProfile",
    "fallback",
    "FORMAT_IDS",
    "FormatError",
    "generate_pattern",
    "JdsMatrix",
    "Level",
    "MatrixMarketError",
    "model_size",
    "op_count",
    "randomness_percentage",
    "read_matrix_market",
    "recommend",
    "recommend_both",
    "Recommendation",
    "reconstruct",
    "Shape",
    "size_report",
    "SizeReport",
    "spmv",
    "TjdsMatrix",
    "to_csc",
    "to_csr",
    "to_dense",
    "to_dia",
    "to_jds",
    "to_tjds",
    "write_matrix_market",
]
