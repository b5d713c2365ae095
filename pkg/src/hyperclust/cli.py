"""Command-line interface.

Subcommands: ``cluster`` (full 1-Laplacian pipeline), ``baseline``
(random-walk 2-Laplacian), ``sweep`` (alpha/beta grid), ``verify`` (oracle
suite), and ``ingest`` (corpus or feature table to hypergraph file).  Reports
are written as CSV plus rendered PNG figures; figures can be turned off.
The ``HYPERCLUST_WORKERS`` environment variable sets the sweep worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .config import RunConfig
from .errors import ContractError, IngestError, ParseError
from .hgio import read_hypergraph_file, write_hypergraph_file
from .ingest import corpus_to_hypergraph, features_to_hypergraph, tokenize
from .pipeline import baseline_cluster, cluster_hypergraph, run_sweep
from .plots import save_eigenvector, save_lambda_trace, save_sweep
from .report import (
    CSV_HEADER,
    report_row,
    write_eigenvector_csv,
    write_report_csv,
)
from .verify import format_table, run_suite


_RUN_FIELDS = (
    "splitting", "beta", "alpha", "solver", "epsilon", "inner_tol",
    "inner_max_iter", "max_outer_iter", "init", "restarts", "seed",
    "alpha_grid", "beta_grid",
)


def _add_run_options(parser: argparse.ArgumentParser, grids: bool = False) -> None:
    parser.add_argument("--input", required=True, help="hypergraph file to cluster")
    parser.add_argument("--output-dir", default=".", help="directory for reports")
    parser.add_argument("--config", default=None,
                        help="JSON file with RunConfig fields; explicit flags win")
    parser.add_argument("--splitting", default=None,
                        choices=["edvw", "cardinality", "all_or_nothing"])
    if grids:
        parser.add_argument("--beta", default=None,
                            help="cap fraction grid: start:step:stop or comma list")
        parser.add_argument("--alpha", default=None,
                            help="weight exponent grid: start:step:stop or comma list")
    else:
        parser.add_argument("--beta", type=float, default=None,
                            help="splitting cap fraction (default 0.2)")
        parser.add_argument("--alpha", type=float, default=None,
                            help="exponent applied to the stored vertex weights (default 1)")
    parser.add_argument("--solver", default=None, choices=["pdhg", "fista"])
    parser.add_argument("--epsilon", type=float, default=None,
                        help="outer loop relative tolerance (default 1e-4)")
    parser.add_argument("--inner-tol", type=float, default=None)
    parser.add_argument("--inner-max-iter", type=int, default=None)
    parser.add_argument("--max-outer-iter", type=int, default=None)
    parser.add_argument("--init", default=None, choices=["rw", "random"])
    parser.add_argument("--restarts", type=int, default=None,
                        help="additional random starts, best objective kept")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--timing", action="store_true",
                        help="write measured wall time into the report CSV "
                             "(off by default so outputs are reproducible)")
    parser.add_argument("--no-figures", action="store_true",
                        help="skip PNG rendering next to the CSV output")


def _config_from_args(args: argparse.Namespace, skip: tuple[str, ...] = ()) -> RunConfig:
    values: dict = {}
    if args.config:
        loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        unknown = set(loaded) - set(_RUN_FIELDS)
        if unknown:
            raise ContractError(f"unknown config fields: {sorted(unknown)}")
        for key, value in loaded.items():
            values[key] = tuple(value) if key.endswith("_grid") and value else value
    for field in _RUN_FIELDS:
        if field in skip:
            continue
        flag = getattr(args, field, None)
        if flag is not None:
            values[field] = flag
    return RunConfig(**values)


def _parse_grid(spec: str) -> list[float]:
    """Parse 'start:step:stop' (inclusive) or a comma-separated list."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ContractError(f"grid {spec!r} must be start:step:stop")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ContractError("grid step must be positive")
        count = int(round((stop - start) / step)) + 1
        return [round(start + i * step, 12) for i in range(count) if start + i * step <= stop + 1e-12]
    return [float(p) for p in spec.split(",") if p]


def _cmd_cluster(args: argparse.Namespace) -> int:
    raw, labels = read_hypergraph_file(args.input)
    config = _config_from_args(args)
    report = cluster_hypergraph(raw, config, labels)
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_report_csv(out / "report.csv", [report], timing=args.timing)
    write_eigenvector_csv(out / "eigenvector.csv", report.eigenvector)
    if not args.no_figures:
        save_lambda_trace(report.lambda_trace, out / "lambda_trace.png")
        save_eigenvector(report.eigenvector, report.partition.threshold,
                         out / "eigenvector.png")
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    print(report_row(report, timing=args.timing))
    return 0


def _cmd_baseline(args: argparse.Namespace) -> int:
    raw, labels = read_hypergraph_file(args.input)
    config = _config_from_args(args)
    report = baseline_cluster(raw, config, labels)
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_report_csv(out / "report.csv", [report], timing=args.timing)
    write_eigenvector_csv(out / "eigenvector.csv", report.eigenvector)
    if not args.no_figures:
        save_eigenvector(report.eigenvector, report.partition.threshold,
                         out / "eigenvector.png")
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    print(report_row(report, timing=args.timing))
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    raw, labels = read_hypergraph_file(args.input)
    config = _config_from_args(args, skip=("alpha", "beta"))
    if args.alpha is not None:
        alphas = _parse_grid(args.alpha)
    else:
        alphas = list(config.alpha_grid) if config.alpha_grid else [config.alpha]
    if args.beta is not None:
        betas = _parse_grid(args.beta)
    else:
        betas = list(config.beta_grid) if config.beta_grid else [config.beta]
    workers = int(os.environ.get("HYPERCLUST_WORKERS", "1"))
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "sweep.csv"
    with open(csv_path, "w", encoding="utf-8") as handle:
        handle.write(CSV_HEADER + "\n")
        handle.flush()

        def flush_row(report) -> None:
            handle.write(report_row(report, timing=args.timing) + "\n")
            handle.flush()

        reports = run_sweep(raw, config, alphas, betas, labels,
                            on_report=flush_row, workers=workers)
    if not args.no_figures and (len(alphas) == 1 or len(betas) == 1):
        varying = "alpha" if len(alphas) > 1 else "beta"
        save_sweep(reports, varying, out / "sweep.png")
    print(f"wrote {len(reports)} sweep rows to {csv_path}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.budget, seed=args.seed)
    print(format_table(results))
    return 0 if all(r.passed for r in results) else 1


def _read_documents(path: Path) -> list[str]:
    if path.is_dir():
        return [p.read_text(encoding="utf-8") for p in sorted(path.glob("*.txt"))]
    return path.read_text(encoding="utf-8").splitlines()


def _cmd_ingest(args: argparse.Namespace) -> int:
    out_path = Path(args.output)
    labels = None
    if args.kind == "corpus":
        texts = _read_documents(Path(args.input))
        stopwords: set[str] = set()
        if args.stopwords:
            stopwords = set(tokenize(Path(args.stopwords).read_text(encoding="utf-8")))
        result = corpus_to_hypergraph(
            [tokenize(t) for t in texts],
            stopwords=stopwords,
            top_k=args.top_k,
            max_df=args.max_df,
            min_df=args.min_df,
            min_len=args.min_len,
            min_hits=args.min_hits,
            alpha=args.base_alpha,
        )
    else:
        rows = np.loadtxt(args.input, delimiter=",", skiprows=1 if args.header else 0)
        if rows.ndim == 1:
            rows = rows[:, None]
        result = features_to_hypergraph(rows, bins=args.bins, alpha=args.base_alpha)
    if args.labels:
        all_labels = np.loadtxt(args.labels, dtype=int)
        labels = all_labels[result.kept_rows]
    for line in result.diagnostics:
        print(f"note: {line}", file=sys.stderr)
    write_hypergraph_file(out_path, result.hypergraph, labels)
    h = result.hypergraph
    print(f"wrote {h.num_vertices} vertices, {len(h.edges)} hyperedges to {out_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperclust",
        description="Spectral clustering of hypergraphs with edge-dependent "
                    "vertex weights via the 1-Laplacian inverse power method.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cluster = sub.add_parser("cluster", help="run the full clustering pipeline")
    _add_run_options(p_cluster)
    p_cluster.set_defaults(func=_cmd_cluster)

    p_baseline = sub.add_parser("baseline", help="random-walk 2-Laplacian baseline")
    _add_run_options(p_baseline)
    p_baseline.set_defaults(func=_cmd_baseline)

    p_sweep = sub.add_parser("sweep", help="grid of clustering runs over alpha/beta")
    _add_run_options(p_sweep, grids=True)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the brute-force oracle suite")
    p_verify.add_argument("--budget", default="small", choices=["small", "full"])
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=_cmd_verify)

    p_ingest = sub.add_parser("ingest", help="convert raw data to a hypergraph file")
    p_ingest.add_argument("--kind", required=True, choices=["corpus", "features"])
    p_ingest.add_argument("--input", required=True,
                          help="corpus: directory of .txt or one document per line; "
                               "features: CSV of numeric columns")
    p_ingest.add_argument("--output", required=True, help="hypergraph file to write")
    p_ingest.add_argument("--labels", default=None,
                          help="file with one integer label per input row/document")
    p_ingest.add_argument("--stopwords", default=None, help="stopword file (corpus)")
    p_ingest.add_argument("--top-k", type=int, default=100)
    p_ingest.add_argument("--max-df", type=float, default=0.10)
    p_ingest.add_argument("--min-df", type=float, default=0.002)
    p_ingest.add_argument("--min-len", type=int, default=20)
    p_ingest.add_argument("--min-hits", type=int, default=5)
    p_ingest.add_argument("--bins", type=int, default=20)
    p_ingest.add_argument("--header", action="store_true",
                          help="feature CSV has a header row")
    p_ingest.add_argument("--base-alpha", type=float, default=1.0,
                          help="exponent baked into the stored weights")
    p_ingest.set_defaults(func=_cmd_ingest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ContractError, ParseError, IngestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
