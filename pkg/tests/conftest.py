"""Shared fixtures: hand-built graphs and a seeded random corpus."""

import numpy as np
import pytest

from dhce import Graph, GeneratorSpec, from_edges, generate


@pytest.fixture
def k4() -> Graph:
    return from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def s4_star() -> Graph:
    return from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


@pytest.fixture
def p3() -> Graph:
    return from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def c5() -> Graph:
    return from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


@pytest.fixture
def empty_graph() -> Graph:
    return from_edges(0, [])


@pytest.fixture
def single_node() -> Graph:
    return from_edges(1, [])


def random_corpus(master_seed: int, per_model: int, n_max: int = 120) -> list[Graph]:
    """Mixed ER/BA/WS graphs drawn deterministically from the master seed."""
    rng = np.random.Generator(np.random.PCG64(master_seed))
    graphs = []
    for _ in range(per_model):
        n = int(rng.integers(5, n_max + 1))
        seed = int(rng.integers(2**63))
        graphs.append(generate(GeneratorSpec("ER", n, seed=seed, p=float(rng.uniform(0.02, 0.3)))))
    for _ in range(per_model):
        n = int(rng.integers(5, n_max + 1))
        seed = int(rng.integers(2**63))
        graphs.append(generate(GeneratorSpec("BA", n, seed=seed, m=int(rng.integers(1, min(5, n))))))
    for _ in range(per_model):
        n = int(rng.integers(8, n_max + 1))
        seed = int(rng.integers(2**63))
        k = int(rng.choice([2, 4, 6]))
        graphs.append(generate(GeneratorSpec("WS", n, seed=seed, k=k, beta=float(rng.uniform(0, 0.5)))))
    return graphs


def assert_valid_graph(g: Graph) -> None:
    """Assert symmetry, no self-loops, no duplicates, sorted adjacency."""
    assert len(g.adjacency) == g.node_count
    for u, nbrs in enumerate(g.adjacency):
        assert list(nbrs) == sorted(set(nbrs)), f"node {u}: unsorted or duplicated"
        assert u not in nbrs, f"node {u}: self-loop"
        for v in nbrs:
            assert 0 <= v < g.node_count
            assert u in g.adjacency[v], f"edge {u}->{v} not symmetric"
