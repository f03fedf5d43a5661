"""Jacobi 3x3 eigensolver against the dense numpy decompositions."""

import numpy as np
import pytest

from orthoglide.linalg3 import det3, eigh3, eigvalsh3, singular_values3


def random_symmetric(rng, n=1):
    a = rng.standard_normal((n, 3, 3))
    return (a + np.swapaxes(a, -1, -2)) / 2


def test_eigvals_match_numpy_on_random_batch(rng):
    mats = random_symmetric(rng, 500)
    got = eigvalsh3(mats)
    want = np.linalg.eigvalsh(mats)
    assert np.allclose(got, want, rtol=0, atol=1e-12)


def test_eigenvectors_diagonalize(rng):
    mats = random_symmetric(rng, 100)
    w, v = eigh3(mats)
    for a, wi, vi in zip(mats, w, v):
        assert np.allclose(a @ vi, vi * wi, atol=1e-12)
        assert np.allclose(vi.T @ vi, np.eye(3), atol=1e-12)


def test_identity_is_exact():
    w, v = eigh3(np.eye(3))
    assert np.array_equal(w, np.ones(3))
    assert np.array_equal(v @ v.T, np.eye(3))


def test_diagonal_matrix():
    w = eigvalsh3(np.diag([3.0, -1.0, 2.0]))
    assert np.array_equal(w, [-1.0, 2.0, 3.0])


def test_clustered_eigenvalues_stay_accurate():
    # the binding-pose product matrix: eigenvalues (0.25, 0.25, 4), a double
    # root where closed-form cubic formulas lose ~1e-8
    a = 0.5
    jinv = np.full((3, 3), a) + np.eye(3) * (1 - a)
    w = eigvalsh3(jinv.T @ jinv)
    assert np.allclose(w, [0.25, 0.25, 4.0], rtol=0, atol=1e-13)


def test_singular_values_match_numpy(rng):
    mats = rng.standard_normal((200, 3, 3))
    got = singular_values3(mats)
    want = np.sort(np.linalg.svd(mats, compute_uv=False), axis=-1)
    assert np.allclose(got, want, atol=1e-11)


def test_singular_matrix_has_zero_singular_value():
    # the normal-matrix route squares the condition number, so vanishing
    # singular values are only accurate to ~sqrt(eps) * ||m||
    m = np.outer([1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
    s = singular_values3(m)
    scale = np.linalg.norm(m)
    assert s[0] <= 1e-7 * scale
    assert s[1] <= 1e-7 * scale
    assert s[2] == pytest.approx(scale, rel=1e-12)


def test_det3_matches_numpy(rng):
    mats = rng.standard_normal((200, 3, 3))
    assert np.allclose(det3(mats), np.linalg.det(mats), atol=1e-12)


def test_batched_equals_scalar(rng):
    mats = random_symmetric(rng, 10)
    batch = eigvalsh3(mats)
    for k in range(10):
        assert np.array_equal(eigvalsh3(mats[k]), batch[k])


def test_rejects_wrong_shape():
    with pytest.raises(ValueError):
        eigh3(np.eye(4))
