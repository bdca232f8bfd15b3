"""Entropy-sequence whole-graph embeddings.

A graph's embedding is the Shannon entropy (bits) of each node-value
state along its H-index updating trace, starting with the degree state.
Embeddings of different graphs differ in length; :func:`align` pads each
one with its own final entropy up to the longest, producing a matrix
ready for downstream classifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .graph import Graph
from .hindex import dhc_trace

__all__ = [
    "shannon_entropy",
    "embed_graph",
    "align",
    "EmbeddingMatrix",
    "DhcEmbedding",
]


def shannon_entropy(values) -> float:
    """Shannon entropy, base 2, of the value multiset's distribution.

    H = -sum_v p_v log2 p_v with p_v = count(v) / len(values). The empty
    multiset yields 0 by convention, as does 0 * log 0.
    """
    arr = values if isinstance(values, np.ndarray) else np.asarray(list(values))
    if arr.size == 0:
        return 0.0
    _, counts = np.unique(arr, return_counts=True)
    p = counts / arr.size
    return float(-(p * np.log2(p)).sum()) + 0.0  # normalize -0.0


def embed_graph(g: Graph, include_degree_entropy: bool = True) -> np.ndarray:
    """Entropy sequence of a graph's H-index updating trace.

    Element m is the entropy of the m-th recorded state; element 0
    belongs to the degree state. With ``include_degree_entropy=False``
    the degree-state entropy is omitted (indexing from the first update
    instead), except that a trace with a single state keeps its one
    entry so the embedding is never empty.
    """
    states = dhc_trace(g).states
    entropies = np.array([shannon_entropy(s) for s in states], dtype=np.float64)
    if not include_degree_entropy and entropies.size > 1:
        entropies = entropies[1:]
    return entropies


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Dimension-aligned embeddings for a set of graphs, row-labeled."""

    rows: np.ndarray  # (n_graphs, width) float64
    row_labels: Tuple[str, ...]
    class_labels: Tuple[str, ...] | None = None

    def __post_init__(self):
        if self.rows.ndim != 2:
            raise ValueError("rows must be a 2-D array")
        if len(self.row_labels) != self.rows.shape[0]:
            raise ValueError("row_labels length must match row count")
        if self.class_labels is not None and len(self.class_labels) != self.rows.shape[0]:
            raise ValueError("class_labels length must match row count")

    @property
    def width(self) -> int:
        return self.rows.shape[1]


def _pad_rows(embeddings: Sequence[np.ndarray], width: int) -> np.ndarray:
    rows = np.empty((len(embeddings), width), dtype=np.float64)
    for i, emb in enumerate(embeddings):
        m = min(emb.size, width)
        rows[i, :m] = emb[:m]
        rows[i, m:] = emb[m - 1]
    return rows


def align(
    embeddings: Sequence[np.ndarray],
    row_labels: Iterable[str] | None = None,
    class_labels: Iterable[str] | None = None,
) -> EmbeddingMatrix:
    """Pad every embedding with its final value up to the longest one.

    Row order follows input order; existing entries are never changed.
    Raises ValueError for an empty set or any empty embedding.
    """
    embeddings = [np.asarray(e, dtype=np.float64).reshape(-1) for e in embeddings]
    if not embeddings:
        raise ValueError("cannot align an empty set of embeddings")
    if any(e.size == 0 for e in embeddings):
        raise ValueError("cannot align an empty embedding")
    width = max(e.size for e in embeddings)
    if row_labels is None:
        row_labels = (str(i) for i in range(len(embeddings)))
    labels = tuple(str(x) for x in row_labels)
    classes = None if class_labels is None else tuple(str(x) for x in class_labels)
    return EmbeddingMatrix(_pad_rows(embeddings, width), labels, classes)


class DhcEmbedding(TransformerMixin, BaseEstimator):
    """Transformer from graphs to aligned entropy-sequence feature rows.

    ``fit`` records the alignment width (the longest entropy sequence in
    the fitted set); ``transform`` embeds each graph and pads it to that
    width. The evaluation protocol is transductive: call
    ``fit_transform`` on the whole graph set so all rows share one
    alignment. A graph transformed later whose sequence is longer than
    the fitted width is truncated to it.
    """

    def __init__(self, include_degree_entropy: bool = True):
        self.include_degree_entropy = include_degree_entropy

    def fit(self, X: Sequence[Graph], y=None):
        self._fit(X)
        return self

    def transform(self, X: Sequence[Graph]) -> np.ndarray:
        if not hasattr(self, "width_"):
            raise NotFittedError("DhcEmbedding must be fitted before transform")
        return _pad_rows(self._embed_all(X), self.width_)

    def fit_transform(self, X: Sequence[Graph], y=None) -> np.ndarray:
        return _pad_rows(self._fit(X), self.width_)

    def _fit(self, X: Sequence[Graph]) -> list[np.ndarray]:
        embeddings = self._embed_all(X)
        if not embeddings:
            raise ValueError("cannot fit on an empty graph set")
        self.width_ = max(e.size for e in embeddings)
        return embeddings

    def get_feature_names_out(self, input_features=None):
        if not hasattr(self, "width_"):
            raise NotFittedError("DhcEmbedding must be fitted first")
        return np.array([f"e{i}" for i in range(self.width_)], dtype=object)

    def _embed_all(self, X: Sequence[Graph]) -> list[np.ndarray]:
        return [embed_graph(g, self.include_degree_entropy) for g in X]
