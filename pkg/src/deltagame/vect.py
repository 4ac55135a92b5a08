"""Synchronous vector correlations of the Delta game.

A symmetrised vector strategy is fixed by ``theta = <x_v, h> = |x_v|^2`` and
the edge overlap ``beta = <x_v, x_{v+1}>``.  Its seven vectors
``h, x_0, x_1, x_2, y_0, y_1, y_2`` (with ``y_v = h - x_v``) have a Gram
matrix that depends only on these two numbers, so feasibility in the
``(theta, beta)`` plane is a semidefiniteness question.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .game import Correlation, DomainError

BISECTION_TOL = 1e-8
BISECTION_MAX_ITER = 60


def _check_theta(theta):
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta={theta} outside [0, 1]")


def build_gram(theta: float, beta: float) -> np.ndarray:
    """7x7 Gram matrix of ``(h, x_0, x_1, x_2, y_0, y_1, y_2)``."""
    th, b = theta, beta
    G = np.empty((7, 7))
    G[0, 0] = 1.0
    G[0, 1:4] = G[1:4, 0] = th
    G[0, 4:7] = G[4:7, 0] = 1.0 - th
    G[1:4, 1:4] = b + (th - b) * np.eye(3)
    G[1:4, 4:7] = G[4:7, 1:4] = (th - b) * (1.0 - np.eye(3))
    G[4:7, 4:7] = (1.0 + b - 2.0 * th) + (b - th) * (-np.eye(3))
    return G


def circulant_block(a: float, x: float) -> np.ndarray:
    """3x3 matrix with ``a`` on the diagonal and ``x`` elsewhere."""
    return x * np.ones((3, 3)) + (a - x) * np.eye(3)


def reduce_gram(theta: float, beta: float) -> np.ndarray:
    """Schur complement of ``build_gram`` after eliminating the unit vector ``h``.

    It has the block form ``[[A, -A], [-A, A]]`` with ``A`` circulant,
    diagonal ``theta - theta**2`` and off-diagonal ``beta - theta**2``.
    """
    A = circulant_block(theta - theta**2, beta - theta**2)
    return np.block([[A, -A], [-A, A]])


def beta_range_closed(theta: float) -> tuple[float, float]:
    _check_theta(theta)
    lo = max((3.0 * theta**2 - theta) / 2.0, 2.0 * theta - 1.0, 0.0)
    return lo, theta


def is_feasible(theta: float, beta: float, tol: float = 1e-12) -> bool:
    """Numeric feasibility: Gram matrix PSD and all output overlaps nonnegative."""
    entries_ok = beta >= -tol and theta - beta >= -tol and 1.0 + beta - 2.0 * theta >= -tol
    return entries_ok and linalg.psd_check(build_gram(theta, beta), tol)


def beta_min_numeric(theta: float, tol: float = BISECTION_TOL, psd_tol: float = 1e-12) -> float:
    """Smallest feasible ``beta`` found by bisection on :func:`is_feasible`.

    The feasible set in ``beta`` is an interval ending at ``beta = theta``
    (the Gram matrix is affine in ``beta``), so plain bisection applies.
    """
    _check_theta(theta)
    lo, hi = max(0.0, 2.0 * theta - 1.0), theta
    if not is_feasible(theta, hi, psd_tol):
        raise RuntimeError(f"beta=theta infeasible at theta={theta}")
    if is_feasible(theta, lo, psd_tol):
        return lo
    for _ in range(BISECTION_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if is_feasible(theta, mid, psd_tol):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class Bounds:
    lower: float
    upper: float
    lower_attained: bool = True
    upper_attained: bool = True

    def __iter__(self):
        return iter((self.lower, self.upper))


def f_vect(theta: float) -> Bounds:
    """Lower and upper edge of the attainable ``theta_tilde`` range."""
    _check_theta(theta)
    if theta <= 1.0 / 3.0:
        upper = 0.5 + theta
    elif theta <= 2.0 / 3.0:
        upper = (1.0 + 3.0 * theta - 3.0 * theta**2) / 2.0
    else:
        upper = 1.5 - theta
    return Bounds(0.5, upper)


@dataclass(frozen=True)
class VectWitness:
    theta: float
    beta: float
    h: np.ndarray
    x: np.ndarray
    y: np.ndarray
    correlation: Correlation

    @property
    def vectors(self) -> np.ndarray:
        return np.vstack([self.h, self.x, self.y])


def vect_witness(theta: float, beta: float, tol: float = 1e-9) -> VectWitness:
    """Explicit vectors realising ``(theta, beta)`` and their correlation.

    ``p(0,0|v,w) = <x_v, x_w>``, ``p(0,1|v,w) = <x_v, y_w>`` and so on.
    """
    _check_theta(theta)
    lo, hi = beta_range_closed(theta)
    if not lo - tol <= beta <= hi + tol:
        raise DomainError(f"(theta, beta)=({theta}, {beta}) is not feasible")
    V = linalg.gram_vectors(build_gram(theta, beta), tol)
    h, x, y = V[0], V[1:4], V[4:7]
    outs = np.stack([x, y])  # outs[i, v] is the vector for output i on input v
    p = np.einsum("ivk,jwk->ijvw", outs, outs)
    # Entries that vanish exactly in the Gram matrix come back as +-1e-16.
    p = np.where(np.abs(p) < 1e-13, 0.0, p)
    return VectWitness(theta, beta, h, x, y, Correlation(p))
