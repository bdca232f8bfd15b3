import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dhce import (
    coreness,
    degrees,
    dhc_step,
    dhc_trace,
    from_edges,
    h_operator,
)

from conftest import random_corpus


def brute_force_h(values) -> int:
    """Direct scan over every candidate h."""
    values = list(values)
    best = 0
    for h in range(len(values) + 1):
        if sum(v >= h for v in values) >= h:
            best = h
    return best


def to_networkx(g) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.node_count))
    nxg.add_edges_from(g.edges())
    return nxg


class TestHOperator:
    def test_descending_run(self):
        assert h_operator([5, 4, 3, 2, 1]) == 3

    def test_empty(self):
        assert h_operator([]) == 0

    def test_pair_of_twos(self):
        assert h_operator([2, 2]) == 2

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            h_operator([1, -1])

    @given(st.lists(st.integers(min_value=0, max_value=50), max_size=40))
    @settings(max_examples=300)
    def test_matches_brute_force(self, values):
        assert h_operator(values) == brute_force_h(values)

    @given(st.lists(st.integers(min_value=0, max_value=50), max_size=40))
    @settings(max_examples=300)
    def test_definitional_property(self, values):
        h = h_operator(values)
        assert sum(v >= h for v in values) >= h
        assert sum(v >= h + 1 for v in values) < h + 1


class TestDhcStep:
    def test_star_degree_state(self, s4_star):
        assert dhc_step(s4_star, [4, 1, 1, 1, 1]).tolist() == [1, 1, 1, 1, 1]

    def test_k4_fixed_point(self, k4):
        assert dhc_step(k4, [3, 3, 3, 3]).tolist() == [3, 3, 3, 3]

    def test_path_degree_state(self, p3):
        assert dhc_step(p3, [1, 2, 1]).tolist() == [1, 1, 1]

    def test_length_mismatch(self, p3):
        with pytest.raises(ValueError):
            dhc_step(p3, [1, 2])

    def test_matches_per_node_h_operator(self):
        rng = np.random.Generator(np.random.PCG64(77))
        for g in random_corpus(7, per_model=4, n_max=60):
            values = rng.integers(0, 20, size=g.node_count)
            expected = [h_operator([values[v] for v in g.adjacency[u]])
                        for u in range(g.node_count)]
            assert dhc_step(g, values).tolist() == expected

    def test_isolated_node_gets_zero(self):
        g = from_edges(3, [(0, 1)])
        assert dhc_step(g, [5, 5, 5]).tolist() == [1, 1, 0]


class TestDhcTrace:
    def test_k4_single_state(self, k4):
        trace = dhc_trace(k4)
        assert len(trace.states) == 1
        assert trace.states[0].tolist() == [3, 3, 3, 3]
        assert trace.converged_in == 1

    def test_star_two_states(self, s4_star):
        trace = dhc_trace(s4_star)
        assert [s.tolist() for s in trace.states] == [[4, 1, 1, 1, 1], [1, 1, 1, 1, 1]]
        assert trace.converged_in == 2

    def test_empty_graph(self, empty_graph):
        trace = dhc_trace(empty_graph)
        assert len(trace.states) == 1
        assert trace.states[0].size == 0
        assert trace.converged_in == 1

    def test_first_state_is_degrees(self):
        for g in random_corpus(41, per_model=3, n_max=50):
            assert np.array_equal(dhc_trace(g).states[0], degrees(g))

    def test_states_are_distinct(self):
        for g in random_corpus(43, per_model=3, n_max=50):
            states = [tuple(s) for s in dhc_trace(g).states]
            assert len(states) == len(set(states))

    def test_monotone_and_bounded(self):
        for g in random_corpus(47, per_model=5, n_max=80):
            trace = dhc_trace(g)
            deg = degrees(g)
            core = coreness(g)
            for m, state in enumerate(trace.states):
                assert (state <= deg).all()
                assert (state >= core).all()
                if m:
                    assert (state <= trace.states[m - 1]).all()

    def test_converges_to_coreness(self):
        for g in random_corpus(53, per_model=8, n_max=100):
            assert np.array_equal(dhc_trace(g).states[-1], coreness(g))

    def test_isolated_nodes_zero_throughout(self):
        g = from_edges(5, [(0, 1), (1, 2)])  # nodes 3, 4 isolated
        for state in dhc_trace(g).states:
            assert state[3] == 0 and state[4] == 0


class TestCoreness:
    def test_cycle(self, c5):
        assert coreness(c5).tolist() == [2, 2, 2, 2, 2]

    def test_star(self, s4_star):
        assert coreness(s4_star).tolist() == [1, 1, 1, 1, 1]

    def test_k4(self, k4):
        assert coreness(k4).tolist() == [3, 3, 3, 3]

    def test_empty(self, empty_graph):
        assert coreness(empty_graph).size == 0

    def test_isolated(self, single_node):
        assert coreness(single_node).tolist() == [0]

    def test_matches_networkx(self):
        for g in random_corpus(59, per_model=6, n_max=80):
            expected = nx.core_number(to_networkx(g))
            assert coreness(g).tolist() == [expected[i] for i in range(g.node_count)]
