"""Random-walk baseline: chain, stationary law, adjacency, embedding."""

import numpy as np
import pytest

from hyperclust.baseline import (
    baseline_eigenvector,
    edge_kappa_totals,
    normalized_laplacian_embedding,
    random_walk_adjacency,
    random_walk_cut,
    random_walk_splitting_penalty,
    stationary_distribution,
    transition_matrix,
)
from hyperclust.errors import ContractError
from hyperclust.hypergraph import EdvwHypergraph, Hyperedge, lovasz_extension
from hyperclust.synthetic import random_connected_hypergraph


@pytest.fixture
def single_edge_walk():
    """One hyperedge over three vertices with weights (1, 1, 2)."""
    edge = Hyperedge((0, 1, 2), 1.0, np.array([1.0, 1.0, 2.0]))
    return EdvwHypergraph(3, (edge,), np.ones(3))


class TestTransitionMatrix:
    def test_single_edge_rows(self, single_edge_walk):
        p = transition_matrix(single_edge_walk)
        for row in p:
            assert row.tolist() == [0.25, 0.25, 0.5]

    def test_rows_sum_to_one(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            h = random_connected_hypergraph(rng)
            p = transition_matrix(h)
            assert np.abs(p.sum(axis=1) - 1.0).max() <= 1e-12
            assert p.min() >= 0.0

    def test_row_support_is_co_membership(self):
        edges = (
            Hyperedge((0, 1), 1.0, np.ones(2)),
            Hyperedge((1, 2), 1.0, np.ones(2)),
        )
        h = EdvwHypergraph(3, edges, np.ones(3))
        p = transition_matrix(h)
        assert p[0, 2] == 0.0 and p[2, 0] == 0.0
        assert p[0, 1] > 0 and p[1, 2] > 0

    def test_disconnected_rejected(self):
        edges = (Hyperedge((0, 1), 1.0, np.ones(2)),)
        h = EdvwHypergraph(3, edges, np.ones(3))
        with pytest.raises(ContractError):
            transition_matrix(h)


class TestStationaryDistribution:
    def test_identical_rows_fixed_point(self):
        row = np.array([0.25, 0.25, 0.5])
        p = np.tile(row, (3, 1))
        pi = stationary_distribution(p)
        assert np.abs(pi - row).max() <= 1e-10

    def test_doubly_stochastic_gives_uniform(self):
        p = np.array([[0.0, 1.0], [1.0, 0.0]])  # periodic chain, lazy walk fixes it
        pi = stationary_distribution(p)
        assert np.abs(pi - 0.5).max() <= 1e-10

    def test_residual_contract(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            h = random_connected_hypergraph(rng)
            p = transition_matrix(h)
            pi = stationary_distribution(p)
            assert np.abs(p.T @ pi - pi).sum() <= 1e-10
            assert pi.min() > 0
            assert pi.sum() == pytest.approx(1.0, abs=1e-12)


class TestAdjacency:
    def test_single_edge_value(self, single_edge_walk):
        p = transition_matrix(single_edge_walk)
        pi = stationary_distribution(p)
        a = random_walk_adjacency(p, pi)
        assert a[0, 1] == pytest.approx(1.0 / 16.0, abs=1e-10)

    def test_symmetry_exact(self):
        rng = np.random.default_rng(2)
        h = random_connected_hypergraph(rng)
        p = transition_matrix(h)
        pi = stationary_distribution(p)
        a = random_walk_adjacency(p, pi)
        assert np.array_equal(a, a.T)

    def test_diagonal_is_self_flow(self, single_edge_walk):
        p = transition_matrix(single_edge_walk)
        pi = stationary_distribution(p)
        a = random_walk_adjacency(p, pi)
        assert np.abs(np.diag(a) - pi * np.diag(p)).max() <= 1e-12


class TestWalkSplitting:
    def test_empty_subset(self, single_edge_walk):
        p = transition_matrix(single_edge_walk)
        pi = stationary_distribution(p)
        assert random_walk_splitting_penalty(single_edge_walk, 0, pi, []) == 0.0

    def test_symmetric_in_complement(self, single_edge_walk):
        p = transition_matrix(single_edge_walk)
        pi = stationary_distribution(p)
        members = single_edge_walk.hyperedges[0].members
        for mask in range(1 << 3):
            s = [v for v in members if mask >> v & 1]
            rest = [v for v in members if not mask >> v & 1]
            assert random_walk_splitting_penalty(
                single_edge_walk, 0, pi, s
            ) == pytest.approx(
                random_walk_splitting_penalty(single_edge_walk, 0, pi, rest), abs=1e-12
            )

    def test_cut_matches_graph_cut_exhaustively(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            h = random_connected_hypergraph(rng)
            p = transition_matrix(h)
            pi = stationary_distribution(p)
            a = random_walk_adjacency(p, pi)
            n = h.num_vertices
            for mask in range(1 << n):
                inside = np.array([(mask >> v) & 1 == 1 for v in range(n)])
                graph_cut = float(a[np.ix_(inside, ~inside)].sum())
                subset = [v for v in range(n) if inside[v]]
                assert abs(random_walk_cut(h, pi, subset) - graph_cut) <= 1e-9

    def test_extension_matches_graph_extension(self):
        rng = np.random.default_rng(4)
        for _ in range(5):
            h = random_connected_hypergraph(rng)
            p = transition_matrix(h)
            pi = stationary_distribution(p)
            a = random_walk_adjacency(p, pi)
            totals = edge_kappa_totals(h)
            n = h.num_vertices
            for _ in range(20):
                x = rng.standard_normal(n)
                graph_ext = float(
                    np.sum(a * np.maximum(x[:, None] - x[None, :], 0.0))
                )
                hyper_ext = sum(
                    lovasz_extension(
                        lambda s, j=j: random_walk_splitting_penalty(
                            h, j, pi, s, totals
                        ),
                        x,
                    )
                    for j in range(len(h.hyperedges))
                )
                assert abs(hyper_ext - graph_ext) <= 1e-9


class TestEmbedding:
    def two_cliques(self, eps=0.01):
        n = 8
        adj = np.zeros((n, n))
        for i in range(4):
            for j in range(4):
                if i != j:
                    adj[i, j] = 1.0
                    adj[i + 4, j + 4] = 1.0
        adj[3, 4] = adj[4, 3] = eps
        return adj

    def test_two_cliques_split_by_sign(self):
        result = normalized_laplacian_embedding(self.two_cliques())
        signs = np.sign(result.vector)
        assert set(signs[:4]) == {1.0}
        assert set(signs[4:]) == {-1.0}
        assert not result.ill_defined

    def test_matches_dense_eigensolver(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            n = int(rng.integers(4, 12))
            raw = rng.uniform(0.0, 1.0, size=(n, n))
            adj = (raw + raw.T) / 2
            adj[adj < 0.3] = 0.0
            np.fill_diagonal(adj, 0.0)
            for i in range(n):  # ring keeps the graph connected
                j = (i + 1) % n
                adj[i, j] = adj[j, i] = max(adj[i, j], 0.4)
            deg = adj.sum(axis=1)
            lap = np.eye(n) - adj / np.sqrt(deg)[:, None] / np.sqrt(deg)[None, :]
            eigvals, eigvecs = np.linalg.eigh(lap)
            if eigvals[2] - eigvals[1] < 1e-6:
                continue
            expected = eigvecs[:, 1] / np.sqrt(deg)
            result = normalized_laplacian_embedding(adj)
            got = result.vector / np.linalg.norm(result.vector)
            expected = expected / np.linalg.norm(expected)
            if float(got @ expected) < 0:
                expected = -expected
            assert np.abs(got - expected).max() <= 1e-6
            assert result.eigenvalue == pytest.approx(eigvals[1], abs=1e-7)

    def test_orthogonality_and_residual(self):
        adj = self.two_cliques()
        result = normalized_laplacian_embedding(adj)
        deg = adj.sum(axis=1)
        weighted = np.sqrt(deg) * (np.sqrt(deg) * result.vector)
        # the normalized eigenvector is deflated against the trivial direction
        assert abs(float(weighted.sum())) <= 1e-6
        assert result.residual <= 1e-8

    def test_degenerate_spectrum_flagged(self, single_edge_walk):
        # one hyperedge covering everything: the non-trivial eigenvalues tie
        result = baseline_eigenvector(single_edge_walk)
        assert result.ill_defined

    def test_full_baseline_separates_planted_blocks(self):
        edges = []
        for block in (range(0, 4), range(4, 8)):
            block = list(block)
            for i in range(len(block)):
                for j in range(i + 1, len(block)):
                    edges.append(Hyperedge((block[i], block[j]), 1.0, np.ones(2)))
        edges.append(Hyperedge((3, 4), 0.05, np.ones(2)))
        h = EdvwHypergraph(8, tuple(edges), np.ones(8))
        result = baseline_eigenvector(h)
        signs = np.sign(result.vector)
        assert set(signs[:4]) == {1.0} or set(signs[:4]) == {-1.0}
        assert set(signs[4:]) == {-signs[0]}
