import json

import numpy as np
import pytest

from dhce import EmbeddingMatrix, PcaProjector, pca_2d


def make_matrix(rows, labels=None) -> EmbeddingMatrix:
    rows = np.asarray(rows, dtype=np.float64)
    ids = tuple(f"g{i}" for i in range(rows.shape[0]))
    return EmbeddingMatrix(rows, ids, labels)


def eig_oracle(rows):
    """Brute-force covariance eigendecomposition for variance ratios."""
    X = np.asarray(rows, dtype=np.float64)
    centered = X - X.mean(axis=0)
    cov = centered.T @ centered
    eigvals = np.linalg.eigvalsh(cov)[::-1]
    eigvals = np.clip(eigvals, 0.0, None)
    total = eigvals.sum()
    return eigvals / total if total > 0 else eigvals


class TestPca2d:
    def test_isotropic_square(self):
        square = [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]
        proj = pca_2d(make_matrix(square))
        assert sum(proj.explained_variance_ratio) == pytest.approx(1.0)
        # rigid up to rotation/sign: pairwise distances preserved
        orig = np.asarray(square)
        for i in range(4):
            for j in range(i + 1, 4):
                expected = np.linalg.norm(orig[i] - orig[j])
                got = np.linalg.norm(proj.coords[i] - proj.coords[j])
                assert got == pytest.approx(expected, abs=1e-9)

    def test_identical_rows_degenerate(self):
        proj = pca_2d(make_matrix([[2.0, 3.0]] * 5))
        assert np.allclose(proj.coords, 0.0)
        assert proj.explained_variance_ratio == (0.0, 0.0)

    def test_rank_one_data(self):
        rng = np.random.Generator(np.random.PCG64(3))
        direction = np.array([1.0, 2.0, -0.5, 3.0])
        rows = np.outer(rng.normal(size=12), direction)
        proj = pca_2d(make_matrix(rows))
        oracle = eig_oracle(rows)
        assert proj.explained_variance_ratio[0] == pytest.approx(1.0, abs=1e-9)
        assert proj.explained_variance_ratio[1] == pytest.approx(0.0, abs=1e-9)
        assert proj.explained_variance_ratio[0] == pytest.approx(oracle[0], abs=1e-9)

    def test_width_one_input(self):
        proj = pca_2d(make_matrix([[1.0], [2.0], [4.0]]))
        assert proj.coords.shape == (3, 2)
        assert np.allclose(proj.coords[:, 1], 0.0)
        assert proj.explained_variance_ratio[0] == pytest.approx(1.0)
        assert proj.explained_variance_ratio[1] == 0.0

    def test_fewer_than_two_rows_rejected(self):
        with pytest.raises(ValueError):
            pca_2d(make_matrix([[1.0, 2.0]]))

    def test_ratios_match_eigendecomposition_oracle(self):
        rng = np.random.Generator(np.random.PCG64(7))
        for _ in range(20):
            rows = rng.normal(size=(int(rng.integers(3, 15)), int(rng.integers(1, 8))))
            proj = pca_2d(make_matrix(rows))
            oracle = eig_oracle(rows)
            expect_pc2 = oracle[1] if oracle.size > 1 else 0.0
            assert proj.explained_variance_ratio[0] == pytest.approx(oracle[0], abs=1e-9)
            assert proj.explained_variance_ratio[1] == pytest.approx(expect_pc2, abs=1e-9)
            assert proj.explained_variance_ratio[0] >= proj.explained_variance_ratio[1] >= 0
            assert sum(proj.explained_variance_ratio) <= 1.0 + 1e-9

    def test_translation_invariance_of_distances(self):
        rng = np.random.Generator(np.random.PCG64(11))
        rows = rng.normal(size=(10, 5))
        shifted = rows + rng.normal(size=5) * 50
        a = pca_2d(make_matrix(rows)).coords
        b = pca_2d(make_matrix(shifted)).coords
        da = np.linalg.norm(a[:, None] - a[None, :], axis=-1)
        db = np.linalg.norm(b[:, None] - b[None, :], axis=-1)
        assert np.allclose(da, db, atol=1e-9)

    def test_projection_idempotent_up_to_sign(self):
        rng = np.random.Generator(np.random.PCG64(13))
        rows = rng.normal(size=(8, 6))
        first = pca_2d(make_matrix(rows)).coords
        second = pca_2d(make_matrix(first)).coords
        for j in range(2):
            col, ref = second[:, j], first[:, j]
            assert np.allclose(col, ref, atol=1e-9) or np.allclose(col, -ref, atol=1e-9)

    def test_sign_convention(self):
        rng = np.random.Generator(np.random.PCG64(17))
        rows = rng.normal(size=(10, 4))
        proj = PcaProjector().fit(rows)
        for comp in proj.components_:
            if np.any(comp):
                assert comp[np.argmax(np.abs(comp))] > 0

    def test_labels_carried_through(self):
        m = make_matrix([[0.0, 1.0], [1.0, 0.0]], labels=("x", "y"))
        proj = pca_2d(m)
        assert proj.class_labels == ("x", "y")
        assert proj.row_labels == ("g0", "g1")


class TestPcaProjectorEstimator:
    def test_transform_requires_fit(self):
        from sklearn.exceptions import NotFittedError

        with pytest.raises(NotFittedError):
            PcaProjector().transform([[1.0, 2.0]])

    def test_width_mismatch_rejected(self):
        est = PcaProjector().fit(np.zeros((3, 4)))
        with pytest.raises(ValueError):
            est.transform(np.zeros((2, 3)))

    def test_new_points_share_fitted_frame(self):
        rng = np.random.Generator(np.random.PCG64(19))
        rows = rng.normal(size=(20, 3))
        est = PcaProjector().fit(rows)
        fitted = est.transform(rows)
        subset = est.transform(rows[:5])
        assert np.allclose(fitted[:5], subset)
