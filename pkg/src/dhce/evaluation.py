"""KNN graph classification with repeated stratified cross-validation.

Everything here is deterministic given the seed: each run draws its fold
assignment from an independent PCG64 stream derived from (seed, run
index), so runs could be evaluated in any order, or in parallel, and
still reduce to the same report.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import NotFittedError

from .errors import DataError
from .validation import as_float_matrix, check_lengths_match

__all__ = [
    "knn_predict",
    "accuracy",
    "macro_f1",
    "cross_validate",
    "EvalReport",
    "KnnClassifier",
]


def knn_predict(train_rows, train_labels: Sequence[str], query, k: int) -> str:
    """Majority label among the k training rows nearest to ``query``.

    Distance is Euclidean. Vote ties are broken by the smallest mean
    distance among the tied labels' chosen neighbors, then by sorted
    label order. Equal distances at the k-th position are resolved by
    label order as well, keeping the result independent of row order.
    """
    X = as_float_matrix(train_rows, "train_rows")
    if X.shape[0] == 0:
        raise ValueError("training set must be non-empty")
    labels = [str(l) for l in train_labels]
    check_lengths_match(labels, X, "train labels vs rows")
    if not 1 <= k <= X.shape[0]:
        raise ValueError(f"k must be in 1..{X.shape[0]}, got {k}")
    q = np.asarray(query, dtype=np.float64).reshape(-1)
    if q.size != X.shape[1]:
        raise ValueError(f"query length {q.size} != matrix width {X.shape[1]}")

    dists = np.sqrt(((X - q) ** 2).sum(axis=1))
    label_order = {lab: i for i, lab in enumerate(sorted(set(labels)))}
    ranks = np.array([label_order[l] for l in labels])
    chosen = np.lexsort((ranks, dists))[:k]

    votes = Counter(labels[i] for i in chosen)
    top = max(votes.values())
    tied = [lab for lab, c in votes.items() if c == top]
    if len(tied) == 1:
        return tied[0]
    mean_dist = {
        lab: dists[[i for i in chosen if labels[i] == lab]].mean() for lab in tied
    }
    return min(tied, key=lambda lab: (mean_dist[lab], lab))


def accuracy(predicted: Sequence[str], truth: Sequence[str]) -> float:
    """Fraction of exact matches."""
    check_lengths_match(predicted, truth, "predicted vs truth")
    if len(truth) == 0:
        raise ValueError("labels must be non-empty")
    return sum(p == t for p, t in zip(predicted, truth)) / len(truth)


def macro_f1(predicted: Sequence[str], truth: Sequence[str]) -> float:
    """Unweighted mean of per-class F1 over all observed classes.

    Classes are the union of labels in ``truth`` and ``predicted``;
    a class with precision + recall = 0 contributes F1 = 0.
    """
    check_lengths_match(predicted, truth, "predicted vs truth")
    if len(truth) == 0:
        raise ValueError("labels must be non-empty")
    classes = sorted(set(truth) | set(predicted))
    f1s = []
    for c in classes:
        tp = sum(p == c and t == c for p, t in zip(predicted, truth))
        fp = sum(p == c and t != c for p, t in zip(predicted, truth))
        fn = sum(p != c and t == c for p, t in zip(predicted, truth))
        denom = 2 * tp + fp + fn  # equals (P+R) scaled; zero iff P+R == 0
        f1s.append(2 * tp / denom if denom else 0.0)
    return float(np.mean(f1s))


@dataclass(frozen=True)
class EvalReport:
    """ACC / macro-F1 means and population standard deviations over runs."""

    acc_mean: float
    acc_std: float
    f1_mean: float
    f1_std: float
    runs: int
    folds: int
    k_neighbors: int
    per_run_scores: Tuple[Tuple[float, float], ...] = field(repr=False, default=())

    def to_dict(self, digits: int = 6) -> dict:
        return {
            "acc_mean": round(self.acc_mean, digits),
            "acc_std": round(self.acc_std, digits),
            "f1_mean": round(self.f1_mean, digits),
            "f1_std": round(self.f1_std, digits),
            "runs": self.runs,
            "folds": self.folds,
            "k": self.k_neighbors,
        }


def _stratified_fold_assignment(
    labels: Sequence[str], folds: int, rng: np.random.Generator
) -> np.ndarray:
    """Deal each class's shuffled members round-robin across folds.

    The dealer position carries over between classes so fold sizes stay
    balanced; per class, fold counts differ by at most one.
    """
    by_class: dict[str, list[int]] = {}
    for i, lab in enumerate(labels):
        by_class.setdefault(str(lab), []).append(i)
    for lab in sorted(by_class):
        if len(by_class[lab]) < folds:
            raise DataError(
                f"class {lab!r} has {len(by_class[lab])} members,"
                f" fewer than folds={folds}: stratification infeasible"
            )
    assignment = np.empty(len(labels), dtype=np.int64)
    next_fold = 0
    for lab in sorted(by_class):
        members = np.asarray(by_class[lab])
        for idx in members[rng.permutation(members.size)]:
            assignment[idx] = next_fold
            next_fold = (next_fold + 1) % folds
    return assignment


def cross_validate(
    X,
    y: Sequence[str],
    k_neighbors: int = 5,
    folds: int = 10,
    runs: int = 500,
    seed: int = 0,
) -> EvalReport:
    """Repeated stratified k-fold cross-validation of the KNN classifier.

    Each run shuffles a stratified fold assignment from its own RNG
    stream, evaluates every fold against the remaining folds, and pools
    all fold predictions into one run-level accuracy and macro-F1.
    Reported standard deviations are population (divide by ``runs``).
    """
    X = as_float_matrix(X)
    labels = [str(l) for l in y]
    check_lengths_match(labels, X, "labels vs rows")
    if folds < 2:
        raise ValueError(f"folds must be >= 2, got {folds}")
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if len(set(labels)) < 2:
        raise DataError("classification requires at least 2 distinct classes")
    if k_neighbors < 1:
        raise ValueError(f"k_neighbors must be >= 1, got {k_neighbors}")

    per_run: list[tuple[float, float]] = []
    for run in range(runs):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, run))))
        assignment = _stratified_fold_assignment(labels, folds, rng)
        predicted: list[str] = [""] * len(labels)
        for f in range(folds):
            test_idx = np.flatnonzero(assignment == f)
            train_idx = np.flatnonzero(assignment != f)
            train_X = X[train_idx]
            train_y = [labels[i] for i in train_idx]
            for i in test_idx:
                predicted[i] = knn_predict(train_X, train_y, X[i], k_neighbors)
        per_run.append((accuracy(predicted, labels), macro_f1(predicted, labels)))

    accs = np.array([a for a, _ in per_run])
    f1s = np.array([f for _, f in per_run])
    return EvalReport(
        acc_mean=float(accs.mean()),
        acc_std=float(accs.std()),
        f1_mean=float(f1s.mean()),
        f1_std=float(f1s.std()),
        runs=runs,
        folds=folds,
        k_neighbors=k_neighbors,
        per_run_scores=tuple(per_run),
    )


class KnnClassifier(ClassifierMixin, BaseEstimator):
    """Plain KNN estimator exposing the package's prediction rule."""

    def __init__(self, n_neighbors: int = 5):
        self.n_neighbors = n_neighbors

    def fit(self, X, y):
        self.X_ = as_float_matrix(X)
        self.y_ = [str(l) for l in y]
        check_lengths_match(self.y_, self.X_, "y vs X")
        self.classes_ = np.array(sorted(set(self.y_)))
        return self

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "X_"):
            raise NotFittedError("KnnClassifier must be fitted before predict")
        X = as_float_matrix(X)
        return np.array(
            [knn_predict(self.X_, self.y_, row, self.n_neighbors) for row in X]
        )
