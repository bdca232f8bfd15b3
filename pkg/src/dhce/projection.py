"""Two-component PCA for morphospace visualization of embedding matrices.

PCA runs on the column-centered matrix via SVD (no variance scaling; the
features share units). Signs follow a fixed convention so repeated runs
and plots reproduce exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .embedding import EmbeddingMatrix
from .validation import as_float_matrix

__all__ = ["Projection2D", "pca_2d", "PcaProjector"]


@dataclass(frozen=True)
class Projection2D:
    """Per-row (PC1, PC2) coordinates with explained-variance ratios."""

    coords: np.ndarray  # (n_rows, 2)
    explained_variance_ratio: Tuple[float, float]
    row_labels: Tuple[str, ...]
    class_labels: Tuple[str, ...] | None = None


class PcaProjector(TransformerMixin, BaseEstimator):
    """Top-2 principal components of centered data, SVD-based.

    Sign convention: each component's largest-magnitude loading is
    positive. Inputs narrower than two columns project onto PC2 = 0 with
    an explained ratio of 0; zero-variance data maps everything to the
    origin with ratios (0, 0).
    """

    def fit(self, X, y=None):
        X = as_float_matrix(X)
        if X.shape[0] < 2:
            raise ValueError(f"PCA requires at least 2 rows, got {X.shape[0]}")
        if X.shape[1] < 1:
            raise ValueError("PCA requires at least 1 column")
        self.mean_ = X.mean(axis=0)
        centered = X - self.mean_
        _, s, vt = np.linalg.svd(centered, full_matrices=False)
        total = float((s**2).sum())
        components = np.zeros((2, X.shape[1]))
        ratios = [0.0, 0.0]
        available = min(2, vt.shape[0])
        for j in range(available):
            comp = vt[j]
            if comp[np.argmax(np.abs(comp))] < 0:
                comp = -comp
            components[j] = comp
            if total > 0.0:
                ratios[j] = float(s[j] ** 2 / total)
        self.components_ = components
        self.explained_variance_ratio_ = (ratios[0], ratios[1])
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "components_"):
            raise NotFittedError("PcaProjector must be fitted before transform")
        X = as_float_matrix(X)
        if X.shape[1] != self.components_.shape[1]:
            raise ValueError(
                f"width {X.shape[1]} != fitted width {self.components_.shape[1]}"
            )
        return (X - self.mean_) @ self.components_.T


def pca_2d(m: EmbeddingMatrix) -> Projection2D:
    """Project an embedding matrix onto its top-2 principal components."""
    projector = PcaProjector().fit(m.rows)
    coords = projector.transform(m.rows)
    return Projection2D(
        coords=coords,
        explained_variance_ratio=projector.explained_variance_ratio_,
        row_labels=m.row_labels,
        class_labels=m.class_labels,
    )
