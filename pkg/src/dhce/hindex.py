"""Iterated H-index updating and k-core decomposition.

The update operator takes each node's value to the largest h such that at
least h of its neighbors currently hold a value >= h. Iterating from the
degree vector is monotone non-increasing and reaches a fixed point equal
to the coreness vector; :func:`coreness` implements k-core peeling
independently so the two routes can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .graph import Graph, degrees
from .validation import as_value_vector, check_node_values

__all__ = ["DhcTrace", "h_operator", "dhc_step", "dhc_trace", "coreness"]


@dataclass(frozen=True)
class DhcTrace:
    """Distinct node-value states from the degree vector to the fixed point.

    ``states[0]`` is the degree vector, ``states[m]`` the m-th order
    H-indices, and the last state is the first fixed point reached.
    ``converged_in`` counts update steps applied, including the one that
    reproduced its input.
    """

    states: Tuple[np.ndarray, ...]
    converged_in: int


def h_operator(values) -> int:
    """Largest h such that at least h of the values are >= h.

    Counting-sort formulation: values are clipped at the multiset size
    (larger ones cannot raise h further), histogrammed, and the reverse
    cumulative histogram scanned for the crossing point. Empty input
    yields 0.
    """
    arr = as_value_vector(values)
    if arr.size == 0:
        return 0
    clipped = np.minimum(arr, arr.size)
    counts = np.bincount(clipped, minlength=arr.size + 1)
    count_ge = np.cumsum(counts[::-1])[::-1]
    candidates = np.flatnonzero(count_ge >= np.arange(arr.size + 1))
    return int(candidates[-1])


def _csr(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Flattened adjacency: (indptr, indices) with indptr of length n+1."""
    deg = degrees(g)
    indptr = np.zeros(g.node_count + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    if indptr[-1]:
        indices = np.concatenate([np.asarray(nbrs, dtype=np.int64)
                                  for nbrs in g.adjacency if nbrs])
    else:
        indices = np.zeros(0, dtype=np.int64)
    return indptr, indices


def _step_kernel(indptr: np.ndarray, indices: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Apply the H operator to every node's neighbor multiset at once.

    For neighbor values sorted descending, h = max over positions t of
    min(t+1, value at t); sorting all neighbor segments with one lexsort
    keeps the step linear-ish instead of per-node Python loops.
    """
    n = indptr.size - 1
    out = np.zeros(n, dtype=np.int64)
    if indices.size == 0:
        return out
    deg = np.diff(indptr)
    segment = np.repeat(np.arange(n), deg)
    neighbor_vals = values[indices]
    order = np.lexsort((-neighbor_vals, segment))
    sorted_vals = neighbor_vals[order]
    rank = np.arange(indices.size) - np.repeat(indptr[:-1], deg)
    contrib = np.minimum(rank + 1, sorted_vals)
    nonempty = np.flatnonzero(deg > 0)
    out[nonempty] = np.maximum.reduceat(contrib, indptr[nonempty])
    return out


def dhc_step(g: Graph, values) -> np.ndarray:
    """One synchronous update: out[i] = h_operator(values of i's neighbors)."""
    vals = as_value_vector(values)
    check_node_values(g.node_count, vals)
    indptr, indices = _csr(g)
    return _step_kernel(indptr, indices, vals)


def dhc_trace(g: Graph) -> DhcTrace:
    """Iterate dhc_step from the degree vector until a fixed point.

    Termination is guaranteed: states are integer vectors, monotone
    non-increasing per node, and bounded below by zero.
    """
    indptr, indices = _csr(g)
    state = degrees(g)
    states = [state]
    steps = 0
    while True:
        updated = _step_kernel(indptr, indices, state)
        steps += 1
        if np.array_equal(updated, state):
            break
        states.append(updated)
        state = updated
    return DhcTrace(tuple(states), steps)


def coreness(g: Graph) -> np.ndarray:
    """Coreness of every node via k-core peeling.

    For ascending k, repeatedly removes nodes whose remaining degree is
    <= k; a node's coreness is the k at which it gets removed. Kept free
    of any H-index code so it can serve as the convergence oracle.
    """
    n = g.node_count
    deg = [len(nbrs) for nbrs in g.adjacency]
    core = np.zeros(n, dtype=np.int64)
    alive = [True] * n
    remaining = n
    k = 0
    while remaining:
        pending = [v for v in range(n) if alive[v] and deg[v] <= k]
        if not pending:
            k += 1
            continue
        while pending:
            v = pending.pop()
            if not alive[v]:
                continue
            alive[v] = False
            core[v] = k
            remaining -= 1
            for u in g.adjacency[v]:
                if alive[u]:
                    deg[u] -= 1
                    if deg[u] <= k:
                        pending.append(u)
    return core
