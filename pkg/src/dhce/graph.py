"""Undirected simple-graph representation and edge-list parsing.

Graphs are unweighted and undirected with no self-loops or duplicate
edges. Nodes are dense 0-based integers so that the iterative kernels can
index arrays directly; the parser returns the original labels alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from .errors import ParseError

__all__ = ["Graph", "from_edges", "parse_edge_list", "degrees", "to_edge_list_text"]


@dataclass(frozen=True)
class Graph:
    """Immutable adjacency-list graph.

    ``adjacency[i]`` is the sorted tuple of neighbors of node ``i``.
    Symmetry, absence of self-loops, and absence of duplicates are
    established at construction time by :func:`from_edges`.
    """

    node_count: int
    adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        if len(self.adjacency) != self.node_count:
            raise ValueError("adjacency length must equal node_count")

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> Iterable[Tuple[int, int]]:
        """Yield each undirected edge once as (u, v) with u < v."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v


def from_edges(node_count: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """Build a Graph from an edge iterable, dropping self-loops and duplicates."""
    neighbor_sets = [set() for _ in range(node_count)]
    for u, v in edges:
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise ValueError(f"edge ({u}, {v}) outside node range 0..{node_count - 1}")
        if u == v:
            continue
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)
    return Graph(node_count, tuple(tuple(sorted(s)) for s in neighbor_sets))


def parse_edge_list(text: str | Iterable[str]) -> Tuple[Graph, Tuple[str, ...]]:
    """Parse whitespace-separated ``u v`` edge lines into a Graph.

    Labels are arbitrary tokens, remapped to 0..n-1 in order of first
    appearance. Lines starting with ``#`` are comments; blank lines are
    skipped. Self-loops and duplicate edges are dropped silently (a
    self-loop still registers its label, which lets edge-list files carry
    isolated nodes). Returns the graph and the label of each node id.

    Raises ParseError (with the 1-based line number) for any other line
    that does not have exactly two tokens.
    """
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = text

    ids: dict[str, int] = {}
    edges: list[Tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(lineno, f"expected 2 tokens, got {len(tokens)}: {line!r}")
        u, v = (ids.setdefault(tok, len(ids)) for tok in tokens)
        edges.append((u, v))

    graph = from_edges(len(ids), edges)
    labels = tuple(sorted(ids, key=ids.get))
    return graph, labels


def degrees(g: Graph) -> np.ndarray:
    """Per-node degree vector (int64)."""
    return np.array([len(nbrs) for nbrs in g.adjacency], dtype=np.int64)


def to_edge_list_text(g: Graph, labels: Iterable[str] | None = None) -> str:
    """Render a Graph as edge-list text.

    Parsing the text back yields the same graph up to node relabeling
    (the parser assigns ids by first appearance); the returned labels
    recover the original names. Isolated nodes are written as self-loop
    lines: the parser drops the loop but keeps the label, so node count
    round-trips.
    """
    if labels is None:
        names = [str(i) for i in range(g.node_count)]
    else:
        names = [str(x) for x in labels]
        if len(names) != g.node_count:
            raise ValueError("labels length must equal node_count")
    lines = []
    for u in range(g.node_count):
        if not g.adjacency[u]:
            lines.append(f"{names[u]} {names[u]}")
    for u, v in g.edges():
        lines.append(f"{names[u]} {names[v]}")
    return "\n".join(lines) + ("\n" if lines else "")
