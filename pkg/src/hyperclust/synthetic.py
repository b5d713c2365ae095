"""Random hypergraph generators for tests, verification runs, and demos."""

from __future__ import annotations

import numpy as np

from .hypergraph import EdvwHypergraph, Hyperedge, RawEdge, RawHypergraph


def random_connected_hypergraph(
    rng: np.random.Generator,
    *,
    min_vertices: int = 4,
    max_vertices: int = 7,
    max_edges: int = 3,
    max_edge_size: int = 5,
    gamma_values: tuple[int, ...] = (1, 2, 3, 4),
    integer_kappa: bool = True,
) -> EdvwHypergraph:
    """A small connected hypergraph with random integer-valued weights.

    Resamples until the vertex/hyperedge incidence graph is connected and
    every vertex is covered.
    """
    while True:
        n = int(rng.integers(min_vertices, max_vertices + 1))
        num_edges = int(rng.integers(1, max_edges + 1))
        edges = []
        for _ in range(num_edges):
            size = int(rng.integers(2, min(max_edge_size, n) + 1))
            members = tuple(sorted(rng.choice(n, size=size, replace=False).tolist()))
            gamma = rng.choice(gamma_values, size=size).astype(float)
            kappa = float(rng.integers(1, 4)) if integer_kappa else float(rng.uniform(0.5, 2.0))
            edges.append(Hyperedge(members, kappa, gamma))
        mu = rng.integers(1, 5, size=n).astype(float)
        h = EdvwHypergraph(n, tuple(edges), mu)
        covered = set()
        for e in edges:
            covered.update(e.members)
        if len(covered) == n and h.is_connected:
            return h


def planted_two_block(
    rng: np.random.Generator,
    *,
    block_size: int = 50,
    num_edges: int = 40,
    edge_size_range: tuple[int, int] = (4, 6),
    out_members_range: tuple[int, int] = (1, 2),
    in_gamma: tuple[float, float] = (2.0, 3.0),
    out_gamma: tuple[float, float] = (0.05, 0.2),
) -> tuple[RawHypergraph, np.ndarray]:
    """Two planted blocks whose boundary is visible only through the weights.

    Every hyperedge has a home block contributing most members with large
    edge-dependent weights, plus a few members from the other block with
    small ones.  Counting members alone makes the planted cut expensive;
    weighing them makes it cheap.  Returns the raw hypergraph (weights to be
    derived) and the block labels.
    """
    n = 2 * block_size
    blocks = (np.arange(block_size), np.arange(block_size, n))
    edges: list[RawEdge] = []
    for j in range(num_edges):
        home = blocks[j % 2]
        away = blocks[1 - j % 2]
        k_in = int(rng.integers(edge_size_range[0], edge_size_range[1] + 1))
        k_out = int(rng.integers(out_members_range[0], out_members_range[1] + 1))
        inside = rng.choice(home, size=k_in, replace=False)
        outside = rng.choice(away, size=k_out, replace=False)
        members = tuple(int(v) for v in np.concatenate([inside, outside]))
        gamma = np.concatenate(
            [rng.uniform(*in_gamma, size=k_in), rng.uniform(*out_gamma, size=k_out)]
        )
        edges.append(RawEdge(members, tuple(float(g) for g in gamma)))

    # every vertex needs a strong membership in some edge of its own block,
    # otherwise splitting it off is nearly free and beats the planted cut
    strongly_covered = set()
    for e in edges:
        for v, g in zip(e.members, e.gamma):
            if g >= in_gamma[0]:
                strongly_covered.add(v)
    for v in range(n):
        if v in strongly_covered:
            continue
        home_parity = 0 if v < block_size else 1
        j = int(rng.integers(0, num_edges))
        while j % 2 != home_parity or v in edges[j].members:
            j = int(rng.integers(0, num_edges))
        e = edges[j]
        edges[j] = RawEdge(
            e.members + (v,), e.gamma + (float(rng.uniform(*in_gamma)),), e.kappa
        )

    labels = np.zeros(n, dtype=int)
    labels[block_size:] = 1
    return RawHypergraph(n, tuple(edges)), labels
