"""Input validation helpers used by the public entry points."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def as_float_matrix(X, name: str = "X") -> np.ndarray:
    """Coerce to a 2-D float64 array, rejecting NaN/inf."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains NaN or infinite values")
    return arr


def as_value_vector(values, name: str = "values") -> np.ndarray:
    """Coerce a multiset of non-negative integers to a 1-D int64 array."""
    arr = np.asarray(values)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        as_int = arr.astype(np.int64)
        if not np.array_equal(as_int, arr):
            raise ValueError(f"{name} must contain integers")
        arr = as_int
    arr = arr.astype(np.int64, copy=False)
    if arr.size and arr.min() < 0:
        raise ValueError(f"{name} must be non-negative")
    return arr


def check_lengths_match(a: Sequence, b: Sequence, what: str) -> None:
    if len(a) != len(b):
        raise ValueError(f"{what}: lengths differ ({len(a)} vs {len(b)})")


def check_node_values(node_count: int, values: np.ndarray) -> None:
    if values.shape != (node_count,):
        raise ValueError(
            f"value vector has length {values.shape[0] if values.ndim == 1 else values.shape},"
            f" expected {node_count}"
        )
