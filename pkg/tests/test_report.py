"""Metrics and CSV emission."""

import numpy as np
import pytest

from hyperclust.config import RunConfig
from hyperclust.errors import ContractError
from hyperclust.ipm import Partition
from hyperclust.report import (
    CSV_HEADER,
    ClusteringReport,
    clustering_error,
    report_row,
    write_eigenvector_csv,
    write_report_csv,
    write_solver_trace_csv,
)


class TestClusteringError:
    def test_perfect_partition(self):
        assert clustering_error([0, 1], [0, 0, 1, 1]) == 0.0

    def test_inverted_partition(self):
        assert clustering_error([2, 3], [0, 0, 1, 1]) == 0.0

    def test_one_of_ten_misplaced(self):
        labels = [0] * 5 + [1] * 5
        side = [0, 1, 2, 3, 9]  # vertex 9 swapped in for 4
        assert clustering_error(side, labels) == pytest.approx(0.2)
        side = [0, 1, 2, 3, 4, 9]
        assert clustering_error(side, labels) == pytest.approx(0.1)

    def test_capped_at_half(self):
        rng = np.random.default_rng(0)
        labels = rng.integers(0, 2, size=12)
        for _ in range(20):
            side = [v for v in range(12) if rng.random() < 0.5]
            assert clustering_error(side, labels) <= 0.5

    def test_more_than_two_classes_rejected(self):
        with pytest.raises(ContractError):
            clustering_error([0], [0, 1, 2])


def make_report(**overrides):
    fields = dict(
        partition=Partition((0, 1), (2, 3), 0.25, 0.0),
        ncc=0.25,
        error=0.1,
        lambda_trace=(0.5, 0.3, 0.25),
        iterations=3,
        wall_ms=123.456,
        config=RunConfig(seed=7),
        eigenvector=np.array([0.5, 0.4, -0.4, -0.5]),
    )
    fields.update(overrides)
    return ClusteringReport(**fields)


class TestCsv:
    def test_header_column_order(self):
        assert CSV_HEADER == "alpha,beta,solver,seed,ncc,error,lambda,iters,wall_ms"

    def test_row_values(self):
        row = report_row(make_report())
        assert row == "1.0,0.2,pdhg,7,0.25,0.1,0.25,3,0.0"

    def test_timing_flag_reveals_wall_time(self):
        row = report_row(make_report(), timing=True)
        assert row.endswith(",123.456")

    def test_missing_error_is_empty_cell(self):
        row = report_row(make_report(error=None))
        assert ",,0.25," in row

    def test_report_file(self, tmp_path):
        path = tmp_path / "report.csv"
        write_report_csv(path, [make_report()])
        lines = path.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 2

    def test_eigenvector_file(self, tmp_path):
        path = tmp_path / "vec.csv"
        write_eigenvector_csv(path, np.array([0.25, -1.5]))
        assert path.read_text() == "vertex,value\n0,0.25\n1,-1.5\n"

    def test_solver_trace_file(self, tmp_path):
        from hyperclust.reduction import make_digraph
        from hyperclust.solvers import solve_inner_pdhg

        g = make_digraph(2, 0, [(0, 1, 1.0)])
        sol = solve_inner_pdhg(g, np.array([1.0, -0.5]), record_trace=True)
        assert sol.trace and sol.trace[0][0] == 1
        path = tmp_path / "trace.csv"
        write_solver_trace_csv(path, sol.trace)
        lines = path.read_text().splitlines()
        assert lines[0] == "iteration,objective,residual"
        assert len(lines) == len(sol.trace) + 1
