"""Shared fixtures: small hand-checkable hypergraphs."""

import numpy as np
import pytest

from hyperclust.hypergraph import EdvwHypergraph, Hyperedge, SubmodularHypergraph
from hyperclust.splitting import ALL_OR_NOTHING, EDVW, SplittingSpec


@pytest.fixture
def weighted_edge():
    """Three vertices, kappa 1, gamma (1, 1, 2)."""
    return Hyperedge((0, 1, 2), 1.0, np.array([1.0, 1.0, 2.0]))


@pytest.fixture
def half_capped():
    return SplittingSpec(EDVW, beta=0.5)


@pytest.fixture
def weighted_triple(weighted_edge, half_capped):
    """The single weighted edge as a hypergraph with unit vertex weights."""
    base = EdvwHypergraph(3, (weighted_edge,), np.ones(3))
    return SubmodularHypergraph(base, half_capped)


@pytest.fixture
def path_hypergraph():
    """Pair edges (0,1), (1,2), (2,3), all-or-nothing weight 1, mu (1,2,2,1)."""
    edges = tuple(Hyperedge((i, i + 1), 1.0, np.ones(2)) for i in range(3))
    base = EdvwHypergraph(4, edges, np.array([1.0, 2.0, 2.0, 1.0]))
    return SubmodularHypergraph(base, SplittingSpec(ALL_OR_NOTHING))


@pytest.fixture
def triangle_pair():
    """Two pair-edge triangles joined by one bridge edge; mu = vertex degree."""
    pairs = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
    edges = tuple(Hyperedge(p, 1.0, np.ones(2)) for p in pairs)
    degree = np.zeros(6)
    for p in pairs:
        degree[list(p)] += 1
    base = EdvwHypergraph(6, edges, degree)
    return SubmodularHypergraph(base, SplittingSpec(ALL_OR_NOTHING))
