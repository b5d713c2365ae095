"""Clustering reports, evaluation metrics, and delimited output.

Report CSVs have the fixed column order
``alpha,beta,solver,seed,ncc,error,lambda,iters,wall_ms``.  Wall time is
recorded on the report object but written as zero unless timing output is
requested, keeping the files byte-identical across repeated runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Sequence

import numpy as np

from .config import RunConfig
from .errors import ContractError
from .ipm import Partition

CSV_HEADER = "alpha,beta,solver,seed,ncc,error,lambda,iters,wall_ms"


def clustering_error(side_a: Collection[int], labels: Sequence[int]) -> float:
    """Fraction of misassigned vertices, minimized over the two ways of
    matching partition sides to the two label classes."""
    labels = np.asarray(labels)
    classes = np.unique(labels)
    if classes.size != 2:
        raise ContractError("clustering error needs exactly 2 label classes")
    n = labels.size
    in_a = np.zeros(n, dtype=bool)
    in_a[list(set(int(v) for v in side_a))] = True
    predicted = np.where(in_a, classes[0], classes[1])
    mismatch = float(np.mean(predicted != labels))
    return min(mismatch, 1.0 - mismatch)


@dataclass(frozen=True)
class ClusteringReport:
    """End-to-end result of one clustering run."""

    partition: Partition
    ncc: float
    error: float | None
    lambda_trace: tuple[float, ...]
    iterations: int
    wall_ms: float
    config: RunConfig
    eigenvector: np.ndarray
    degenerate: bool = False
    notes: tuple[str, ...] = ()


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def report_row(report: ClusteringReport, *, timing: bool = False) -> str:
    cfg = report.config
    final_lambda = report.lambda_trace[-1] if report.lambda_trace else float("nan")
    wall = report.wall_ms if timing else 0.0
    cells = [
        _fmt(cfg.alpha),
        _fmt(cfg.beta),
        cfg.solver,
        _fmt(cfg.seed),
        _fmt(report.ncc),
        _fmt(report.error),
        _fmt(final_lambda),
        _fmt(report.iterations),
        _fmt(float(wall)),
    ]
    return ",".join(cells)


def write_report_csv(
    path: str | Path, reports: Sequence[ClusteringReport], *, timing: bool = False
) -> None:
    lines = [CSV_HEADER] + [report_row(r, timing=timing) for r in reports]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_eigenvector_csv(path: str | Path, x: np.ndarray) -> None:
    lines = ["vertex,value"] + [f"{v},{float(val)!r}" for v, val in enumerate(x)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_solver_trace_csv(
    path: str | Path, trace: Sequence[tuple[int, float, float]]
) -> None:
    lines = ["iteration,objective,residual"] + [
        f"{i},{obj!r},{res!r}" for i, obj, res in trace
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
