"""Seeded synthetic graph generators: ER, BA, and WS models.

All randomness comes from numpy's PCG64 stream seeded per spec, so the
same GeneratorSpec always yields the same edge set, on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .graph import Graph, from_edges

__all__ = ["GeneratorSpec", "generate"]

MODELS = ("ER", "BA", "WS")


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one synthetic graph.

    ER: edge probability ``p`` in [0, 1].
    BA: seed clique of ``m`` nodes, then ``m`` preferential-attachment
        edges per new node (1 <= m < n).
    WS: ring lattice of even degree ``k`` (2 <= k < n), each clockwise
        lattice edge rewired with probability ``beta``.
    """

    model: str
    n: int
    seed: int
    p: float | None = None
    m: int | None = None
    k: int | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ParameterError(f"unknown model {self.model!r}, expected one of {MODELS}")
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.model == "ER":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ParameterError(f"ER requires p in [0, 1], got {self.p}")
        elif self.model == "BA":
            if self.m is None or self.m < 1:
                raise ParameterError(f"BA requires m >= 1, got {self.m}")
            if self.m >= self.n:
                raise ParameterError(f"BA requires m < n, got m={self.m}, n={self.n}")
        elif self.model == "WS":
            if self.k is None or self.k < 2 or self.k % 2 != 0:
                raise ParameterError(f"WS requires even k >= 2, got {self.k}")
            if self.k >= self.n:
                raise ParameterError(f"WS requires k < n, got k={self.k}, n={self.n}")
            if self.beta is None or not 0.0 <= self.beta <= 1.0:
                raise ParameterError(f"WS requires beta in [0, 1], got {self.beta}")


def generate(spec: GeneratorSpec) -> Graph:
    """Generate the graph described by ``spec``; pure in (spec, seed)."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if spec.model == "ER":
        return _erdos_renyi(spec.n, spec.p, rng)
    if spec.model == "BA":
        return _barabasi_albert(spec.n, spec.m, rng)
    return _watts_strogatz(spec.n, spec.k, spec.beta, rng)


def _erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    # Each unordered pair independently with probability p.
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def _barabasi_albert(n: int, m: int, rng: np.random.Generator) -> Graph:
    # Seed clique on nodes 0..m-1, then each new node attaches m edges to
    # distinct existing nodes chosen proportionally to current degree
    # (uniformly while all degrees are zero, which only happens for m=1).
    degree = np.zeros(n, dtype=np.int64)
    edges: list[tuple[int, int]] = []
    for u in range(m):
        for v in range(u + 1, m):
            edges.append((u, v))
            degree[u] += 1
            degree[v] += 1
    for v in range(m, n):
        total = int(degree[:v].sum())
        chosen: set[int] = set()
        while len(chosen) < m:
            if total == 0:
                u = int(rng.integers(v))
            else:
                r = rng.random() * total
                u = int(np.searchsorted(np.cumsum(degree[:v]), r, side="right"))
            chosen.add(u)
        for u in sorted(chosen):
            edges.append((u, v))
            degree[u] += 1
            degree[v] += 1
    return from_edges(n, edges)


def _watts_strogatz(n: int, k: int, beta: float, rng: np.random.Generator) -> Graph:
    # Ring lattice, then rewire the far endpoint of each clockwise lattice
    # edge with probability beta, avoiding self-loops and duplicates.
    neighbor_sets: list[set[int]] = [set() for _ in range(n)]
    for j in range(1, k // 2 + 1):
        for i in range(n):
            v = (i + j) % n
            neighbor_sets[i].add(v)
            neighbor_sets[v].add(i)
    for j in range(1, k // 2 + 1):
        for i in range(n):
            if rng.random() >= beta:
                continue
            if len(neighbor_sets[i]) >= n - 1:
                continue  # node saturated, nothing valid to rewire to
            w = int(rng.integers(n))
            while w == i or w in neighbor_sets[i]:
                w = int(rng.integers(n))
            v = (i + j) % n
            neighbor_sets[i].discard(v)
            neighbor_sets[v].discard(i)
            neighbor_sets[i].add(w)
            neighbor_sets[w].add(i)
    return Graph(n, tuple(tuple(sorted(s)) for s in neighbor_sets))
