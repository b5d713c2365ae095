"""Plain-text hypergraph file format.

Layout::

    H <num_vertices> <num_hyperedges>
    e <kappa or -> v:gamma v:gamma ...
    mu <vertex> <weight>        (optional; all vertices or none)
    label <vertex> <class>      (optional)

A ``-`` for kappa means "derive from the weight vector at load time"; absent
``mu`` lines mean "derive the vertex degrees from the splitting function".
Vertices are 0-based.  Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ParseError
from .hypergraph import RawEdge, RawHypergraph


def parse_hypergraph_text(text: str) -> tuple[RawHypergraph, np.ndarray | None]:
    """Parse the format above; returns the raw hypergraph and labels if any."""
    num_vertices: int | None = None
    num_edges: int | None = None
    edges: list[RawEdge] = []
    mu_entries: dict[int, float] = {}
    label_entries: dict[int, int] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        tag = fields[0]
        if tag == "H":
            if num_vertices is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: header must be 'H <N> <E>'")
            num_vertices, num_edges = _parse_int(fields[1], lineno), _parse_int(fields[2], lineno)
            if num_vertices < 1 or num_edges < 0:
                raise ParseError(f"line {lineno}: invalid counts in header")
        elif tag == "e":
            if num_vertices is None:
                raise ParseError(f"line {lineno}: hyperedge before header")
            edges.append(_parse_edge(fields, lineno, num_vertices))
        elif tag == "mu":
            if num_vertices is None:
                raise ParseError(f"line {lineno}: vertex weight before header")
            v = _parse_int(fields[1], lineno)
            if len(fields) != 3 or not 0 <= v < num_vertices:
                raise ParseError(f"line {lineno}: invalid vertex weight line")
            if v in mu_entries:
                raise ParseError(f"line {lineno}: duplicate weight for vertex {v}")
            w = _parse_float(fields[2], lineno)
            if w <= 0:
                raise ParseError(f"line {lineno}: vertex weight must be positive")
            mu_entries[v] = w
        elif tag == "label":
            if num_vertices is None:
                raise ParseError(f"line {lineno}: label before header")
            v = _parse_int(fields[1], lineno)
            if len(fields) != 3 or not 0 <= v < num_vertices:
                raise ParseError(f"line {lineno}: invalid label line")
            label_entries[v] = _parse_int(fields[2], lineno)
        else:
            raise ParseError(f"line {lineno}: unknown record {tag!r}")

    if num_vertices is None:
        raise ParseError("line 1: missing 'H <N> <E>' header")
    if len(edges) != num_edges:
        raise ParseError(
            f"header declares {num_edges} hyperedges but {len(edges)} were found"
        )
    mu = None
    if mu_entries:
        if len(mu_entries) != num_vertices:
            missing = sorted(set(range(num_vertices)) - set(mu_entries))
            raise ParseError(f"vertex weights missing for vertices {missing}")
        mu = np.array([mu_entries[v] for v in range(num_vertices)])
    labels = None
    if label_entries:
        if len(label_entries) != num_vertices:
            missing = sorted(set(range(num_vertices)) - set(label_entries))
            raise ParseError(f"labels missing for vertices {missing}")
        labels = np.array([label_entries[v] for v in range(num_vertices)], dtype=int)
    return RawHypergraph(num_vertices, tuple(edges), mu), labels


def _parse_edge(fields: list[str], lineno: int, num_vertices: int) -> RawEdge:
    if len(fields) < 4:
        raise ParseError(f"line {lineno}: a hyperedge needs at least 2 members")
    kappa = None if fields[1] == "-" else _parse_float(fields[1], lineno)
    if kappa is not None and kappa <= 0:
        raise ParseError(f"line {lineno}: hyperedge weight must be positive")
    members: list[int] = []
    gammas: list[float] = []
    for token in fields[2:]:
        if ":" not in token:
            raise ParseError(f"line {lineno}: expected 'vertex:gamma', got {token!r}")
        v_str, g_str = token.split(":", 1)
        v = _parse_int(v_str, lineno)
        g = _parse_float(g_str, lineno)
        if not 0 <= v < num_vertices:
            raise ParseError(f"line {lineno}: vertex {v} out of range")
        if v in members:
            raise ParseError(f"line {lineno}: duplicate vertex {v} in hyperedge")
        if g <= 0:
            raise ParseError(f"line {lineno}: gamma must be positive for vertex {v}")
        members.append(v)
        gammas.append(g)
    return RawEdge(tuple(members), tuple(gammas), kappa)


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {token!r}") from None


def _parse_float(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"line {lineno}: expected a number, got {token!r}") from None


def serialize_hypergraph(raw: RawHypergraph, labels: np.ndarray | None = None) -> str:
    """Inverse of the parser; floats use shortest round-trip formatting."""
    lines = [f"H {raw.num_vertices} {len(raw.edges)}"]
    for e in raw.edges:
        kappa = "-" if e.kappa is None else repr(float(e.kappa))
        pairs = " ".join(f"{v}:{float(g)!r}" for v, g in zip(e.members, e.gamma))
        lines.append(f"e {kappa} {pairs}")
    if raw.vertex_weights is not None:
        for v, w in enumerate(raw.vertex_weights):
            lines.append(f"mu {v} {float(w)!r}")
    if labels is not None:
        for v, c in enumerate(labels):
            lines.append(f"label {v} {int(c)}")
    return "\n".join(lines) + "\n"


def read_hypergraph_file(path: str | Path) -> tuple[RawHypergraph, np.ndarray | None]:
    return parse_hypergraph_text(Path(path).read_text(encoding="utf-8"))


def write_hypergraph_file(
    path: str | Path, raw: RawHypergraph, labels: np.ndarray | None = None
) -> None:
    Path(path).write_text(serialize_hypergraph(raw, labels), encoding="utf-8")
