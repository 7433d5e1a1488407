"""Command-line front end: analyze, recommend, convert and bench.

Every command builds one report dict with a fixed top-level key set; the
``--json`` output is that dict and the text output is rendered from it.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analyzer import Category, DistributionProfile, analyze
from .dump import parse_dump, render_dump
from .formats import FORMAT_IDS, convert, reconstruct
from .matrix_core import (
    CooMatrix,
    DenseBudgetError,
    MatrixMarketError,
    load_matrix_market,
    save_matrix_market,
    to_dense,
)
from .recommender import OBJECTIVES, Recommendation, recommend
from .size_model import SizeReport, size_report
from .spmv import bench_spmv, op_count, spmv

REPORT_KEYS = (
    "command",
    "path",
    "matrix",
    "analysis",
    "sizes",
    "recommendations",
    "conversion",
    "benchmark",
    "error",
)
BENCH_FORMATS = ("dense",) + FORMAT_IDS
DEFAULT_SEED = 20240611
VERIFY_RTOL = 1e-12
INDEX_BYTES = 4


class CommandError(Exception):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


def _new_report(command: str, path: str) -> dict:
    report = dict.fromkeys(REPORT_KEYS)
    report["command"] = command
    report["path"] = path
    return report


def _load(path: str) -> CooMatrix:
    try:
        return load_matrix_market(path)
    except FileNotFoundError:
        raise CommandError(f"{path}: no such file") from None
    except IsADirectoryError:
        raise CommandError(f"{path}: is a directory") from None
    except OSError as exc:
        raise CommandError(f"{path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise CommandError(f"{path}: not a UTF-8 text file") from None
    except MatrixMarketError as exc:
        raise CommandError(f"{path}: line {exc.line}: {exc.reason}", exc.line) from None


# -- report sections -------------------------------------------------------

def matrix_section(m: CooMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "nnz": m.nnz(), "density": m.density()}


def analysis_section(p: DistributionProfile) -> dict:
    return {
        "shape": p.shape.value,
        "nzd": p.nzd,
        "max_row_nnz": p.max_row_nnz,
        "max_col_nnz": p.max_col_nnz,
        "ideal_gap": p.ideal_gap,
        "degenerate": [c.value for c in p.degenerate],
        "categories": {
            c.value: {
                "pct": p.score(c).pct,
                "level": p.score(c).level.label,
                "count": p.score(c).count,
                "degenerate": p.score(c).degenerate,
            }
            for c in Category
        },
    }


def sizes_section(r: SizeReport) -> dict:
    return {
        "index_bytes": INDEX_BYTES,
        "formats": [
            {
                "format": s.format_id,
                "modelled": s.modelled,
                "measured": s.measured,
                "bytes": s.bytes(INDEX_BYTES),
            }
            for s in r.sizes
        ],
        "minimum": list(r.minimum()),
        "sparse_minimum": list(r.minimum(include_dense=False)),
    }


def recommendation_section(rec: Recommendation) -> dict:
    cross = rec.size_cross_check
    return {
        "format": rec.format_id,
        "fired_rule": rec.fired_rule,
        "fallback": rec.is_fallback,
        "rationale": None
        if rec.rationale is None
        else {
            "category": rec.rationale[0].value,
            "level": rec.rationale[1].label,
            "shape": rec.rationale[2].value,
        },
        "trace": list(rec.trace),
        "size_cross_check": None
        if cross is None
        else {
            "minimum_formats": list(cross.minimum_formats),
            "minimum_elements": cross.minimum_elements,
            "agrees": cross.agrees,
        },
        "degenerate": rec.degenerate,
    }


def _npr(m: CooMatrix) -> tuple[int | None, bool]:
    """Nonzeros per row rounded half-up (at least 1), and whether rows are uneven."""
    if m.nnz() == 0:
        return None, False
    counts = np.bincount(m.row, minlength=m.rows)
    npr = max(1, (2 * m.nnz() + m.rows) // (2 * m.rows))
    return npr, bool(counts.min() != counts.max())


# -- commands --------------------------------------------------------------

def cmd_analyze(path: str) -> dict:
    report = _new_report("analyze", path)
    m = _load(path)
    report["matrix"] = matrix_section(m)
    report["analysis"] = analysis_section(analyze(m))
    return report


def cmd_recommend(path: str, objective: str = "both") -> dict:
    report = _new_report("recommend", path)
    m = _load(path)
    profile = analyze(m)
    report["matrix"] = matrix_section(m)
    report["analysis"] = analysis_section(profile)
    wanted = OBJECTIVES if objective == "both" else (objective,)
    recs = {obj: recommend(profile, obj) for obj in OBJECTIVES if obj in wanted}
    section = {obj: (recommendation_section(recs[obj]) if obj in recs else None) for obj in OBJECTIVES}
    section["objectives_disagree"] = (
        recs["speed"].format_id != recs["size"].format_id if len(recs) == 2 else None
    )
    report["recommendations"] = section
    if "size" in recs:
        report["sizes"] = sizes_section(size_report(m))
    return report


def cmd_convert(path: str, format_id: str, out: str) -> dict:
    report = _new_report("convert", path)
    if format_id not in FORMAT_IDS:
        raise CommandError(f"unknown format {format_id!r}; valid ids: {', '.join(FORMAT_IDS)}")
    m = _load(path)
    report["matrix"] = matrix_section(m)
    dump_path = Path(out)
    mtx_path = dump_path.with_name(dump_path.name + ".mtx")
    try:
        dump_path.write_text(render_dump(convert(m, format_id)), encoding="utf-8")
        reread = reconstruct(parse_dump(dump_path.read_text(encoding="utf-8")))
        save_matrix_market(reread, mtx_path)
    except OSError as exc:
        raise CommandError(f"{exc.filename}: {exc.strerror}") from None
    if reread != m:
        raise CommandError(f"{dump_path}: dump does not reconstruct the input matrix")
    report["conversion"] = {
        "format": format_id,
        "dump_path": str(dump_path),
        "mtx_path": str(mtx_path),
        "roundtrip_verified": True,
    }
    return report


def cmd_bench(path: str, repetitions: int, seed: int = DEFAULT_SEED) -> dict:
    if repetitions < 1:
        raise CommandError("repetitions must be >= 1")
    report = _new_report("bench", path)
    m = _load(path)
    report["matrix"] = matrix_section(m)
    profile = analyze(m)
    report["analysis"] = analysis_section(profile)
    x = np.random.default_rng(seed).uniform(-1.0, 1.0, m.cols)
    try:
        dense = to_dense(m)
    except DenseBudgetError as exc:
        raise CommandError(str(exc)) from None
    reference = spmv(dense, x)
    # componentwise scale sum_j |a_ij x_j| keeps cancellation from failing the check
    scale = np.abs(dense.array) @ np.abs(x)

    rows = []
    for fid in BENCH_FORMATS:
        f = dense if fid == "dense" else convert(m, fid)
        y = spmv(f, x)
        err = np.abs(y - reference)
        rel = float(np.max(np.where(scale > 0, err / np.where(scale > 0, scale, 1.0), err), initial=0.0))
        verified = rel <= VERIFY_RTOL
        if not verified:
            raise CommandError(f"{fid} kernel disagrees with the dense result (relative error {rel:.3e})")
        summary = bench_spmv(f, x, repetitions)
        rows.append(
            {
                "format": fid,
                "verified": verified,
                "max_rel_error": rel,
                "min_s": summary.min,
                "median_s": summary.median,
                "mean_s": summary.mean,
            }
        )
    npr, approximate = _npr(m)
    report["benchmark"] = {
        "repetitions": repetitions,
        "seed": seed,
        "op_counts": {
            "dense": op_count("dense", m.rows, m.cols),
            "coo": None if npr is None else op_count("coo", m.rows, nnz=m.nnz(), npr=npr),
            "npr": npr,
            "npr_approximate": approximate,
        },
        "rows": rows,
        "speed_pick": recommend(profile, "speed").format_id,
    }
    return report


# -- text rendering --------------------------------------------------------

def _pct(v: float) -> str:
    return f"{v:.1f}%"


def render_text(report: dict, quiet: bool = False) -> str:
    out: list[str] = []
    mat = report["matrix"]
    if mat is not None:
        summary = f"{mat['rows']} x {mat['cols']}, nnz {mat['nnz']}, density {_pct(100 * mat['density'])}"
        if quiet:
            out.append(summary)
        else:
            out += ["== Matrix data ==", f"file: {report['path']}", summary]

    ana = report["analysis"]
    if ana is not None and not quiet:
        out += ["", "== Analysis ==", f"shape: {ana['shape']}"]
        labels = {
            "diagonal_density": ("diagonal density", "nonzero diagonals"),
            "dense_rows": ("dense rows", "nonzeros in dense rows"),
            "dense_cols": ("dense columns", "nonzeros in dense columns"),
            "randomness": ("randomness", "ideally random nonzeros"),
        }
        for key, (name, what) in labels.items():
            c = ana["categories"][key]
            flag = "  [degenerate]" if c["degenerate"] else ""
            out.append(f"  {name:<17} {_pct(c['pct']):>7}  {c['level']:<9} ({c['count']} {what}){flag}")
        out.append(f"  nonzero diagonals: {ana['nzd']}, ideal gap: {ana['ideal_gap']}")
        if ana["degenerate"]:
            out.append(f"  degenerate: {', '.join(ana['degenerate'])}")

    sizes = report["sizes"]
    if sizes is not None and not quiet:
        out += ["", f"== Storage size (elements; bytes at {sizes['index_bytes']}-byte indices) =="]
        for s in sizes["formats"]:
            mark = "  <- minimum" if s["format"] in sizes["minimum"] else ""
            out.append(
                f"  {s['format'].upper():<6} modelled {s['modelled']:>8}  measured {s['measured']:>8}"
                f"  bytes {s['bytes']:>9}{mark}"
            )
        out.append(f"  smallest sparse format: {', '.join(f.upper() for f in sizes['sparse_minimum'])}")

    recs = report["recommendations"]
    if recs is not None:
        if not quiet:
            out += ["", "== Suggested storage formats =="]
        for obj, goal in (("speed", "high processing efficiency"), ("size", "reduced storage size")):
            rec = recs[obj]
            if rec is None:
                continue
            how = "fallback" if rec["fallback"] else f"rule {rec['fired_rule']}"
            line = f"{obj}: {rec['format'].upper()}  ({how})"
            if rec["degenerate"]:
                line += "  [degenerate]"
            out.append(line if quiet else f"  {line}  for {goal}")
            if not quiet:
                out += [f"      {t}" for t in rec["trace"]]
                cross = rec["size_cross_check"]
                if cross is not None:
                    verdict = "agrees" if cross["agrees"] else "differs"
                    out.append(
                        f"      exact size minimum: {', '.join(f.upper() for f in cross['minimum_formats'])}"
                        f" ({cross['minimum_elements']} elements), rule answer {verdict}"
                    )
        if recs["objectives_disagree"]:
            out.append("note: the speed and size objectives disagree, so choose by which matters more")

    conv = report["conversion"]
    if conv is not None:
        out.append(f"wrote {conv['format'].upper()} dump to {conv['dump_path']}")
        if not quiet:
            out.append(f"wrote Matrix Market round-trip to {conv['mtx_path']} (verified)")

    bench = report["benchmark"]
    if bench is not None:
        oc = bench["op_counts"]
        if not quiet:
            out += ["", f"== SpMV timing ({bench['repetitions']} reps, seed {bench['seed']}) =="]
            approx = " (approximate: uneven rows)" if oc["npr_approximate"] else ""
            out.append(f"  modelled computations: dense {oc['dense']}, coo {oc['coo']} at npr {oc['npr']}{approx}")
        for r in bench["rows"]:
            ok = "verified" if r["verified"] else "FAILED"
            out.append(
                f"  {r['format'].upper():<6} min {r['min_s'] * 1e6:10.2f} us  median {r['median_s'] * 1e6:10.2f} us"
                f"  mean {r['mean_s'] * 1e6:10.2f} us  {ok}"
            )
        out.append(f"  recommended for speed: {bench['speed_pick'].upper()}")

    err = report["error"]
    if err is not None:
        out.append(f"error: {err['message']}")
    return "\n".join(out) + "\n"


# -- entry point -----------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit the structured report as JSON")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print only summary and result lines")

    parser = argparse.ArgumentParser(
        prog="sparsefmt",
        description="Analyze a sparse matrix and suggest a storage format.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="show matrix summary and distribution analysis")
    p.add_argument("file")

    p = sub.add_parser("recommend", parents=[common], help="suggest formats for speed and/or size")
    p.add_argument("file")
    p.add_argument("--objective", choices=("speed", "size", "both"), default="both")

    p = sub.add_parser("convert", parents=[common], help="write a format's arrays as a text dump")
    p.add_argument("file")
    p.add_argument("--format", dest="format_id", required=True, metavar="{" + ",".join(FORMAT_IDS) + "}")
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", parents=[common], help="time SpMV in every format")
    p.add_argument("file")
    p.add_argument("--reps", type=_positive_int, default=10)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    as_json = getattr(args, "json", False)
    quiet = getattr(args, "quiet", False)

    try:
        if args.command == "analyze":
            report = cmd_analyze(args.file)
        elif args.command == "recommend":
            report = cmd_recommend(args.file, args.objective)
        elif args.command == "convert":
            report = cmd_convert(args.file, args.format_id, args.out)
        else:
            report = cmd_bench(args.file, args.reps, args.seed)
    except CommandError as exc:
        report = _new_report(args.command, args.file)
        report["error"] = {"message": str(exc), "line": exc.line}

    if as_json:
        stdout.write(json.dumps(report, indent=2, allow_nan=False) + "\n")
    elif report["error"] is not None:
        stderr.write(render_text(report, quiet))
    else:
        stdout.write(render_text(report, quiet))
    return 0 if report["error"] is None else 1


def main() -> None:
    sys.exit(run())
