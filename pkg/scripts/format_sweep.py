"""Sweep generated patterns and compare each recommendation with measured behaviour.

For every pattern it prints the recommended formats, the exact smallest
sparse format, and the fastest measured SpMV kernel.

    python3 scripts/format_sweep.py --size 256 --reps 20
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from sparsefmt import analyze, convert, generate_pattern, recommend_both, size_report
from sparsefmt.formats import FORMAT_IDS
from sparsefmt.spmv import bench_spmv


@dataclass(frozen=True)
class SweepConfig:
    size: int = 256
    reps: int = 20
    seed: int = 7


def cases(n: int, seed: int):
    yield "identity", generate_pattern("identity", n, n)
    yield "tridiagonal", generate_pattern("tridiagonal", n, n)
    yield "dense_rows", generate_pattern("dense_rows", n, n, max(1, n // 8))
    yield "dense_cols", generate_pattern("dense_cols", n, n, max(1, n // 8))
    yield "dense_rows_wide", generate_pattern("dense_rows", n // 2, n, max(1, n // 16))
    yield "checkerboard", generate_pattern("checkerboard", n, n, 3)
    for density in (0.01, 0.1, 0.4):
        yield f"random_{density}", generate_pattern("uniform_random", n, n, density, seed=seed)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=SweepConfig.size)
    parser.add_argument("--reps", type=int, default=SweepConfig.reps)
    parser.add_argument("--seed", type=int, default=SweepConfig.seed)
    cfg = SweepConfig(**vars(parser.parse_args(argv)))

    x = np.random.default_rng(cfg.seed).uniform(-1, 1, cfg.size)
    header = f"{'pattern':<18}{'shape':>10}{'nnz':>8}  {'speed':<6}{'size':<6}{'min size':<16}{'fastest':<8}"
    print(header)
    print("-" * len(header))
    for name, m in cases(cfg.size, cfg.seed):
        recs = recommend_both(analyze(m))
        smallest = ",".join(size_report(m).minimum(include_dense=False))
        timings = {fid: bench_spmv(convert(m, fid), x[: m.cols], cfg.reps).median for fid in FORMAT_IDS}
        fastest = min(timings, key=timings.get)
        shape = f"{m.rows}x{m.cols}"
        print(f"{name:<18}{shape:>10}{m.nnz():>8}  {recs['speed'].format_id:<6}"
              f"{recs['size'].format_id:<6}{smallest:<16}{fastest:<8}")


if __name__ == "__main__":
    main()
