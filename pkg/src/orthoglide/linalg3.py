"""Dense 3x3 symmetric eigen-decomposition via cyclic Jacobi rotations.

The fixed 3x3 size makes a general-purpose decomposition unnecessary: a few
cyclic sweeps of Givens rotations annihilate the off-diagonal entries to
machine precision, including for clustered eigenvalues where closed-form
cubic formulas lose accuracy.  All routines broadcast over a leading batch
dimension so grid sweeps stay vectorized.
"""

from __future__ import annotations

import numpy as np

# Quadratic convergence: 3x3 reaches machine precision well within 6 sweeps.
_SWEEPS = 6
_PAIRS = ((0, 1), (0, 2), (1, 2))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Apply one batched Jacobi rotation zeroing a[..., p, q] in place."""
    apq = a[..., p, q]
    app = a[..., p, p]
    aqq = a[..., q, q]

    active = np.abs(apq) > 0.0
    # tan(2*theta) = 2*apq / (aqq - app); smaller-angle root for stability.
    # Huge tau overflows to an infinite denominator and t collapses to 0,
    # the correct negligible-rotation limit, so overflow is benign.
    with np.errstate(over="ignore", invalid="ignore"):
        tau = np.where(active, (aqq - app) / np.where(active, 2.0 * apq, 1.0), 0.0)
        t = np.where(
            active,
            np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau)),
            0.0,
        )
    t = np.where(active & (tau == 0.0), 1.0, t)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    rows_p = a[..., p, :].copy()
    rows_q = a[..., q, :].copy()
    a[..., p, :] = c[..., None] * rows_p - s[..., None] * rows_q
    a[..., q, :] = s[..., None] * rows_p + c[..., None] * rows_q
    cols_p = a[..., :, p].copy()
    cols_q = a[..., :, q].copy()
    a[..., :, p] = c[..., None] * cols_p - s[..., None] * cols_q
    a[..., :, q] = s[..., None] * cols_p + c[..., None] * cols_q
    # force exact symmetry of the annihilated pair
    a[..., p, q] = 0.0
    a[..., q, p] = 0.0

    vcols_p = v[..., :, p].copy()
    vcols_q = v[..., :, q].copy()
    v[..., :, p] = c[..., None] * vcols_p - s[..., None] * vcols_q
    v[..., :, q] = s[..., None] * vcols_p + c[..., None] * vcols_q


def eigh3(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of symmetric 3x3.

    `mat` has shape (..., 3, 3); returns (..., 3) eigenvalues and (..., 3, 3)
    eigenvectors as columns, paired with the sorted eigenvalues.
    """
    a = np.array(mat, dtype=float, copy=True)
    if a.shape[-2:] != (3, 3):
        raise ValueError(f"expected (..., 3, 3) matrix, got {a.shape}")
    v = np.broadcast_to(np.eye(3), a.shape).copy()

    for _ in range(_SWEEPS):
        for p, q in _PAIRS:
            _rotate(a, v, p, q)

    w = np.diagonal(a, axis1=-2, axis2=-1).copy()
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    return w, v


def eigvalsh3(mat: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a symmetric 3x3 (batched)."""
    return eigh3(mat)[0]


def singular_values3(mat: np.ndarray) -> np.ndarray:
    """Ascending singular values of a (not necessarily symmetric) 3x3.

    Computed from the eigenvalues of mat^T mat; negatives from rounding are
    clipped before the square root.
    """
    m = np.asarray(mat, dtype=float)
    mtm = np.swapaxes(m, -1, -2) @ m
    w = eigvalsh3(mtm)
    return np.sqrt(np.clip(w, 0.0, None))


def det3(mat: np.ndarray) -> np.ndarray:
    """Determinant of a 3x3 (batched), by cofactor expansion."""
    m = np.asarray(mat, dtype=float)
    return (
        m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
        - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
        + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0])
    )
