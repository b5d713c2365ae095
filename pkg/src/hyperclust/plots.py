"""Figure rendering for the report path.

Figures are drawn straight onto matplotlib Figure objects (no pyplot global
state) and written as PNG next to the delimited output.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np
from matplotlib.figure import Figure

from .report import ClusteringReport

_DPI = 150


def save_lambda_trace(trace: Sequence[float], path: str | Path) -> None:
    """Objective value per outer iteration of the eigenvector loop."""
    fig = Figure(figsize=(5.0, 3.2))
    ax = fig.subplots()
    ax.plot(range(len(trace)), trace, marker="o", markersize=3)
    ax.set_xlabel("outer iteration")
    ax.set_ylabel("objective value")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)


def save_eigenvector(x: np.ndarray, threshold: float, path: str | Path) -> None:
    """Sorted eigenvector entries with the chosen threshold marked."""
    fig = Figure(figsize=(5.0, 3.2))
    ax = fig.subplots()
    ax.plot(np.sort(np.asarray(x, dtype=float)), marker=".", linestyle="none", markersize=3)
    ax.axhline(threshold, color="tab:red", linewidth=1, label="threshold")
    ax.set_xlabel("vertex (sorted)")
    ax.set_ylabel("eigenvector entry")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)


def save_sweep(
    reports: Sequence[ClusteringReport], varying: str, path: str | Path
) -> None:
    """Clustering error and NCC as functions of the swept parameter."""
    xs = [getattr(r.config, varying) for r in reports]
    errors = [r.error for r in reports]
    nccs = [r.ncc for r in reports]
    fig = Figure(figsize=(8.0, 3.2))
    ax_err, ax_ncc = fig.subplots(1, 2)
    if any(e is not None for e in errors):
        ax_err.plot(xs, errors, marker="o", markersize=3)
    ax_err.set_xlabel(varying)
    ax_err.set_ylabel("clustering error")
    ax_err.grid(True, alpha=0.3)
    ax_ncc.plot(xs, nccs, marker="o", markersize=3, color="tab:orange")
    ax_ncc.set_xlabel(varying)
    ax_ncc.set_ylabel("NCC")
    ax_ncc.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
