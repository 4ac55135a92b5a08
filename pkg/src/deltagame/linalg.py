"""Small dense symmetric matrix kernel.

Everything here is sized for matrices of dimension at most about ten:
pivoted Cholesky for semidefiniteness tests, cyclic Jacobi for the
eigendecomposition, and Gram factors built from the latter.
"""

from __future__ import annotations

import numpy as np

from .game import DomainError


class NumericError(ArithmeticError):
    """Raised when an iterative kernel fails to converge."""


def as_symmetric(M, rtol: float = 1e-12) -> np.ndarray:
    """Return ``M`` as a float array, checking it is square and symmetric."""
    M = np.array(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    scale = 1.0 + (np.abs(M).max() if M.size else 0.0)
    if np.abs(M - M.T).max(initial=0.0) > rtol * scale:
        raise ValueError("matrix is not symmetric")
    return M


def pivoted_cholesky(M, tol: float = 0.0):
    """Diagonally pivoted Cholesky factorisation of ``M + shift * I``.

    ``shift = tol * (1 + max|diag M|)``.  Factorisation stops early once the
    largest remaining pivot is not positive.

    Returns
    -------
    L : ndarray
        Lower-trapezoidal factor with ``rank`` columns, rows in original order.
    rank : int
    residual : ndarray
        Schur complement left over when the factorisation stopped
        (empty when it ran to completion).
    """
    A = as_symmetric(M)
    n = A.shape[0]
    shift = tol * (1.0 + (np.abs(np.diag(A)).max() if n else 0.0))
    A = A + shift * np.eye(n)
    perm = np.arange(n)
    L = np.zeros((n, n))
    k = 0
    while k < n:
        j = k + int(np.argmax(np.diag(A)[k:]))
        if A[j, j] <= 0.0:
            break
        if j != k:
            A[[k, j], :] = A[[j, k], :]
            A[:, [k, j]] = A[:, [j, k]]
            L[[k, j], :] = L[[j, k], :]
            perm[[k, j]] = perm[[j, k]]
        piv = np.sqrt(A[k, k])
        L[k, k] = piv
        L[k + 1:, k] = A[k + 1:, k] / piv
        A[k + 1:, k + 1:] -= np.outer(L[k + 1:, k], L[k + 1:, k])
        k += 1
    out = np.empty_like(L)
    out[perm] = L
    return out[:, :k], k, A[k:, k:]


def psd_check(M, tol: float = 1e-12) -> bool:
    """True when ``M`` is positive semidefinite up to a diagonal shift of
    ``tol * (1 + max|diag M|)``.

    The shifted matrix is run through pivoted Cholesky.  A run that stops
    early is accepted only if the leftover Schur complement vanishes to
    rounding level, which is how exactly rank-deficient matrices pass.
    """
    A = as_symmetric(M)
    if A.size == 0:
        return True
    _, rank, rest = pivoted_cholesky(A, tol)
    if rank == A.shape[0]:
        return True
    floor = 64 * np.finfo(float).eps * (1.0 + np.abs(A).max()) * A.shape[0]
    return bool(np.abs(rest).max() <= floor)


def eigen_sym(M, max_sweeps: int = 100):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, Q)`` with ``w`` ascending and ``M @ Q = Q @ diag(w)``.
    """
    A = as_symmetric(M)
    n = A.shape[0]
    Q = np.eye(n)
    scale = max(np.abs(A).max(initial=0.0), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(A, -1) ** 2))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                # Rotation angle chosen so the (p, q) entry vanishes; the
                # small-root form of tan keeps |t| <= 1.
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, tau) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                R = np.array([[c, s], [-s, c]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ R
                A[idx, :] = R.T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                Q[:, idx] = Q[:, idx] @ R
    else:
        raise NumericError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], Q[:, order]


def gram_vectors(M, tol: float = 1e-9) -> np.ndarray:
    """Vectors whose pairwise inner products reproduce ``M``.

    Row ``k`` of the result is the vector attached to index ``k``.  Negative
    eigenvalues inside the tolerance band, and positive ones at rounding
    level, are set to zero first.
    """
    A = as_symmetric(M)
    if not psd_check(A, tol):
        raise DomainError("matrix is not positive semidefinite within tolerance")
    w, Q = eigen_sym(A)
    floor = 16 * np.finfo(float).eps * A.shape[0] * max(np.abs(w).max(initial=0.0), 1.0)
    w = np.where(w <= floor, 0.0, w)
    return Q * np.sqrt(w)
