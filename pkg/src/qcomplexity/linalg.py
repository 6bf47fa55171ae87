"""Cyclic Jacobi eigensolver for small real symmetric matrices."""
from __future__ import annotations

import math

import numpy as np

from .errors import NotSymmetric

SYMMETRY_TOL = 1e-10
OFF_DIAGONAL_TOL = 1e-13
MAX_SWEEPS = 200


def jacobi_eigh(a, tol: float = OFF_DIAGONAL_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decomposition ``a = Q diag(w) Q^T`` by cyclic Jacobi rotations.

    Sweeps over every off-diagonal pair until the off-diagonal Frobenius
    norm drops below ``tol`` (relative to ``max(1, ||a||_F)``).

    Returns
    -------
    w : ndarray
        Eigenvalues in descending order.
    Q : ndarray
        Orthogonal matrix whose columns are the matching eigenvectors.
    """
    A = np.array(a, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NotSymmetric("matrix has non-finite entries")
    if A.size and np.max(np.abs(A - A.T)) > SYMMETRY_TOL:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    Q = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(A)))

    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(A, 1) ** 2)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(A[p, q])
                if apq == 0.0:
                    continue
                diff = float(A[q, q] - A[p, p])
                if abs(apq) < abs(diff) * 1e-36:
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J with J the (p, q) plane rotation
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                A[p, q] = A[q, p] = 0.0
                qp, qq = Q[:, p].copy(), Q[:, q].copy()
                Q[:, p] = c * qp - s * qq
                Q[:, q] = s * qp + c * qq

    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], Q[:, order]


def symmetric_eigenvalues(a) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, descending."""
    return jacobi_eigh(a)[0]
