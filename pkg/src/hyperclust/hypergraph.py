"""Hypergraph data model with edge-dependent vertex weights.

Vertices are the integers ``0 .. N-1``.  Every hyperedge carries a positive
weight ``kappa`` and a positive per-member weight vector ``gamma`` expressing
how strongly each member belongs to the edge.  Attaching a splitting function
to every edge produces a submodular hypergraph on which cuts, normalized
Cheeger cuts and the convex cut extension are evaluated.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Collection, Sequence

import numpy as np

from .constants import QUANTIZE_DENOMINATOR
from .errors import ContractError
from .splitting import (
    SplittingSpec,
    max_splitting_penalty,
    penalty_from_mass,
    splitting_penalty,
)


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.asarray(arr, dtype=float).copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Hyperedge:
    """One hyperedge: member vertices, weight kappa, per-member weights gamma."""

    members: tuple[int, ...]
    kappa: float
    gamma: np.ndarray
    gamma_total: float = field(init=False)

    def __post_init__(self) -> None:
        members = tuple(int(v) for v in self.members)
        object.__setattr__(self, "members", members)
        if len(members) < 2:
            raise ContractError("a hyperedge needs at least 2 member vertices")
        if len(set(members)) != len(members):
            raise ContractError(f"duplicate vertices in hyperedge {members}")
        if not self.kappa > 0:
            raise ContractError("hyperedge weight kappa must be positive")
        gamma = _readonly(self.gamma)
        if gamma.shape != (len(members),):
            raise ContractError("gamma must provide one weight per member")
        if not np.all(gamma > 0):
            raise ContractError("gamma must be positive for every member")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "gamma_total", float(math.fsum(gamma)))

    def gamma_of(self, subset: Collection[int]) -> float:
        """Total gamma mass of the members in ``subset``."""
        s = set(subset)
        return float(sum(g for v, g in zip(self.members, self.gamma) if v in s))


@dataclass(frozen=True)
class EdvwHypergraph:
    """Finalized hypergraph: positive vertex weights, validated hyperedges."""

    num_vertices: int
    hyperedges: tuple[Hyperedge, ...]
    vertex_weights: np.ndarray
    is_connected: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.num_vertices < 1:
            raise ContractError("a hypergraph needs at least one vertex")
        object.__setattr__(self, "hyperedges", tuple(self.hyperedges))
        mu = _readonly(self.vertex_weights)
        if mu.shape != (self.num_vertices,):
            raise ContractError("vertex_weights must have one entry per vertex")
        if not np.all(mu > 0):
            raise ContractError("vertex weights must be positive")
        object.__setattr__(self, "vertex_weights", mu)
        for idx, e in enumerate(self.hyperedges):
            if min(e.members) < 0 or max(e.members) >= self.num_vertices:
                raise ContractError(f"hyperedge {idx} has out-of-range vertices")
        object.__setattr__(self, "is_connected", self._connected())

    def _connected(self) -> bool:
        # Connectivity of the bipartite vertex/hyperedge incidence graph.
        n = self.num_vertices
        if n == 1:
            return True
        incident: list[list[int]] = [[] for _ in range(n)]
        for j, e in enumerate(self.hyperedges):
            for v in e.members:
                incident[v].append(j)
        seen_v = [False] * n
        seen_e = [False] * len(self.hyperedges)
        queue = deque([0])
        seen_v[0] = True
        while queue:
            v = queue.popleft()
            for j in incident[v]:
                if seen_e[j]:
                    continue
                seen_e[j] = True
                for u in self.hyperedges[j].members:
                    if not seen_v[u]:
                        seen_v[u] = True
                        queue.append(u)
        return all(seen_v)

    def volume(self, subset: Collection[int]) -> float:
        idx = _validated_subset(subset, self.num_vertices)
        return float(self.vertex_weights[idx].sum()) if idx.size else 0.0

    def total_volume(self) -> float:
        return float(self.vertex_weights.sum())


@dataclass(frozen=True)
class SubmodularHypergraph:
    """A hypergraph plus one splitting function per hyperedge.

    ``theta`` holds the per-edge maximum splitting penalty, materialized at
    construction; it normalizes the per-edge cut extensions and defines the
    derived vertex degrees.
    """

    base: EdvwHypergraph
    splitting: SplittingSpec
    theta: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        theta = np.array(
            [max_splitting_penalty(e, self.splitting) for e in self.base.hyperedges]
        )
        if theta.size and not np.all(theta > 0):
            raise ContractError("every hyperedge must have a positive maximum penalty")
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @property
    def num_vertices(self) -> int:
        return self.base.num_vertices

    @property
    def hyperedges(self) -> tuple[Hyperedge, ...]:
        return self.base.hyperedges

    @property
    def vertex_weights(self) -> np.ndarray:
        return self.base.vertex_weights

    def edge_penalty(self, edge_index: int, subset: Collection[int]) -> float:
        """Penalty of edge ``edge_index`` for the (already intersected) subset."""
        return splitting_penalty(self.hyperedges[edge_index], self.splitting, subset)


def _validated_subset(subset: Collection[int], n: int) -> np.ndarray:
    idx = np.asarray(sorted(set(int(v) for v in subset)), dtype=int)
    if idx.size and (idx[0] < 0 or idx[-1] >= n):
        raise ContractError("subset contains out-of-range vertex indices")
    return idx


def cut_weight(h: SubmodularHypergraph, subset: Collection[int]) -> float:
    """Total splitting penalty incurred by separating ``subset`` from the rest."""
    idx = _validated_subset(subset, h.num_vertices)
    s = set(idx.tolist())
    total = 0.0
    for e in h.hyperedges:
        inside = [v for v in e.members if v in s]
        total += splitting_penalty(e, h.splitting, inside)
    return total


def ncc(h: SubmodularHypergraph, subset: Collection[int]) -> float:
    """Normalized Cheeger cut: cut weight over the smaller side's volume."""
    idx = _validated_subset(subset, h.num_vertices)
    if idx.size == 0 or idx.size == h.num_vertices:
        raise ContractError("the subset must be a proper non-empty part of the vertices")
    vol = h.base.volume(idx)
    vol_rest = h.base.total_volume() - vol
    return cut_weight(h, idx) / min(vol, vol_rest)


def lovasz_extension(set_fn: Callable[[frozenset[int]], float], x: Sequence[float]) -> float:
    """Piecewise-linear extension of a set function with F(empty) = 0.

    Entries of ``x`` are visited in non-increasing order (ties broken by
    index, which does not change the value) and the prefix sets are charged
    by the corresponding gaps.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    order = np.argsort(-x, kind="stable")
    value = 0.0
    prefix: set[int] = set()
    for j in range(n - 1):
        prefix.add(int(order[j]))
        gap = float(x[order[j]] - x[order[j + 1]])
        if gap != 0.0:
            value += set_fn(frozenset(prefix)) * gap
    value += set_fn(frozenset(range(n))) * float(x[order[-1]])
    return value


def edge_extension(edge: Hyperedge, spec: SplittingSpec, x: np.ndarray) -> float:
    """Extension of one edge's splitting penalty, evaluated on x[members]."""
    xs = x[list(edge.members)]
    order = np.argsort(-xs, kind="stable")
    gamma_sorted = edge.gamma[order]
    size = len(edge.members)
    value = 0.0
    mass = 0.0
    for j in range(size - 1):
        mass += float(gamma_sorted[j])
        gap = float(xs[order[j]] - xs[order[j + 1]])
        if gap != 0.0:
            value += gap * penalty_from_mass(
                spec, edge.kappa, edge.gamma_total, mass, j + 1, size
            )
    return value  # the full edge has zero penalty, so the last term vanishes


def dirichlet_energy(h: SubmodularHypergraph, x: Sequence[float], p: float) -> float:
    """Sum over edges of theta_e times the normalized edge extension to power p.

    At p = 1 this is exactly the extension of the hypergraph cut function.
    """
    if p < 1:
        raise ContractError("the exponent p must be at least 1")
    x = np.asarray(x, dtype=float)
    if x.shape != (h.num_vertices,):
        raise ContractError("x must have one entry per vertex")
    total = 0.0
    for e, theta in zip(h.hyperedges, h.theta):
        f_e = edge_extension(e, h.splitting, x) / theta
        total += theta * f_e**p
    return total


@dataclass(frozen=True)
class RawEdge:
    """Hyperedge prior to weight finalization; kappa may still be unset."""

    members: tuple[int, ...]
    gamma: tuple[float, ...]
    kappa: float | None = None


@dataclass(frozen=True)
class RawHypergraph:
    """Parsed or generated hypergraph whose kappa/mu may await derivation."""

    num_vertices: int
    edges: tuple[RawEdge, ...]
    vertex_weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.vertex_weights is not None:
            object.__setattr__(self, "vertex_weights", _readonly(self.vertex_weights))


def power_gamma(
    raw: RawHypergraph, alpha: float, quantize: bool = False
) -> RawHypergraph:
    """Raise every edge-dependent weight to ``alpha`` (alpha = 0 gives ones).

    Derived hyperedge weights stay derived so they are recomputed from the
    transformed values.  With ``quantize`` the results are rounded to
    rationals of a fixed denominator, keeping the balanced-split search exact
    for large edges.
    """
    if alpha < 0:
        raise ContractError("the weight exponent must be non-negative")
    edges = []
    for e in raw.edges:
        gamma = np.asarray(e.gamma, dtype=float) ** alpha if alpha != 0 else np.ones(len(e.gamma))
        if quantize:
            gamma = quantize_gamma(gamma)
        edges.append(RawEdge(e.members, tuple(float(g) for g in gamma), e.kappa))
    return RawHypergraph(raw.num_vertices, tuple(edges), raw.vertex_weights)


def quantize_gamma(gamma: np.ndarray) -> np.ndarray:
    """Round to rationals with the shared fixed denominator; never to zero."""
    q = np.round(np.asarray(gamma, dtype=float) * QUANTIZE_DENOMINATOR)
    q = np.maximum(q, 1.0)
    return q / QUANTIZE_DENOMINATOR


def derive_weights(raw: RawHypergraph, spec: SplittingSpec) -> SubmodularHypergraph:
    """Finalize a raw hypergraph under ``spec``.

    Missing hyperedge weights become the population standard deviation of
    the edge's weight vector scattered over all vertices (zeros included);
    missing vertex weights become the sum of the incident edges' maximum
    penalties.  Both must come out strictly positive.
    """
    n = raw.num_vertices
    edges = []
    for idx, e in enumerate(raw.edges):
        kappa = e.kappa
        if kappa is None:
            scattered = np.zeros(n)
            scattered[list(e.members)] = e.gamma
            kappa = float(scattered.std())
            if kappa <= 0:
                raise ContractError(
                    f"hyperedge {idx} has constant scattered weights; "
                    "its derived weight would be zero"
                )
        edges.append(Hyperedge(e.members, kappa, np.asarray(e.gamma, dtype=float)))

    mu = raw.vertex_weights
    if mu is None:
        theta = [max_splitting_penalty(e, spec) for e in edges]
        mu = np.zeros(n)
        for e, th in zip(edges, theta):
            mu[list(e.members)] += th
        uncovered = np.nonzero(mu <= 0)[0]
        if uncovered.size:
            raise ContractError(
                f"vertices {uncovered.tolist()} belong to no hyperedge; "
                "the hypergraph is disconnected"
            )
    base = EdvwHypergraph(n, tuple(edges), mu)
    return SubmodularHypergraph(base, spec)


def finalized_raw(h: EdvwHypergraph) -> RawHypergraph:
    """View a finalized hypergraph as raw input (for re-derivation sweeps)."""
    edges = tuple(
        RawEdge(e.members, tuple(float(g) for g in e.gamma), e.kappa) for e in h.hyperedges
    )
    return RawHypergraph(h.num_vertices, edges, h.vertex_weights)
