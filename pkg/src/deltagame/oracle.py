"""Brute-force and randomised cross-checks that do not go through the
closed forms: classical strategy enumeration and explicit qubit strategies
mixed with one classical block.

Randomness always comes from ``numpy.random.Generator(PCG64(seed))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .game import Correlation, ThetaPoint, delta_game, deterministic_correlation, exact_value, theta_point_of


@dataclass(frozen=True)
class DeterministicPoint:
    assignment: tuple
    point: ThetaPoint
    value: Fraction


def enumerate_deterministic():
    """All ``2**3`` classical assignments with their exact values."""
    g = delta_game()
    out = []
    for assignment in itertools.product(range(2), repeat=3):
        point = theta_point_of(deterministic_correlation(assignment))
        out.append(DeterministicPoint(assignment, point, exact_value(g, assignment)))
    return out


@dataclass(frozen=True)
class QubitStrategy:
    """Rank-one projections onto ``(cos phi_v, sin phi_v)`` in ``M_2``."""

    angles: tuple

    def projections(self) -> np.ndarray:
        u = np.stack([np.cos(self.angles), np.sin(self.angles)], axis=-1)
        return np.einsum("vi,vj->vij", u, u)


def _pvms(strategy: QubitStrategy, aux):
    P = strategy.projections()
    qubit = np.stack([P, np.eye(2) - P], axis=1)  # qubit[v, i]
    det = np.zeros((3, 2))
    for v, a in enumerate(aux):
        det[v, a] = 1.0
    return qubit, det


def qubit_correlation(strategy: QubitStrategy, mix: float, aux=(1, 1, 1)) -> Correlation:
    """Correlation of the direct sum ``M_2 + C`` with trace weights
    ``(mix, 1 - mix)``; the scalar block plays the classical assignment ``aux``."""
    qubit, det = _pvms(strategy, aux)
    q = 0.5 * np.einsum("vkab,wlba->klvw", qubit, qubit)
    d = np.einsum("vk,wl->klvw", det, det)
    return Correlation(mix * q + (1.0 - mix) * d)


def _moments(angles, mix, aux):
    """Vectorised ``(theta, beta)`` over leading axes of ``angles``."""
    aux = np.asarray(aux)
    on = (aux == 0).astype(float)
    theta_det = on.mean(axis=-1)
    beta_det = (on * np.roll(on, -1, axis=-1)).mean(axis=-1)
    diff = angles - np.roll(angles, -1, axis=-1)
    beta_q = ((1.0 + np.cos(2.0 * diff)) / 4.0).mean(axis=-1)
    theta = mix * 0.5 + (1.0 - mix) * theta_det
    beta = mix * beta_q + (1.0 - mix) * beta_det
    return theta, beta


def qubit_value(strategy: QubitStrategy, mix: float, aux=(1, 1, 1)):
    """``(ThetaPoint, value)`` using the overlap formula
    ``tau(P_v P_w) = (1 + cos 2(phi_v - phi_w)) / 4`` on the qubit block."""
    theta, beta = _moments(np.asarray(strategy.angles, dtype=float), mix, aux)
    point = ThetaPoint.from_beta(float(theta), float(beta))
    return point, point.theta_tilde


def random_search_max(theta_target: float, iterations: int = 100_000, seed: int = 42,
                      window: float = 1e-3, batch: int = 20_000) -> float:
    """Best value over random qubit strategies whose ``theta`` lies within
    ``window`` of the target.

    Each draw picks three angles and a classical assignment, then solves for
    the mixing weight that puts ``theta`` on the target; draws needing a
    weight outside ``[0, 1]`` are rejected.  Returns ``-inf`` if every draw
    was rejected.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    assignments = np.array(list(itertools.product(range(2), repeat=3)))
    best = -np.inf
    done = 0
    while done < iterations:
        k = min(batch, iterations - done)
        done += k
        angles = rng.uniform(0.0, np.pi, size=(k, 3))
        aux = assignments[rng.integers(0, 8, size=k)]
        theta_det = (aux == 0).mean(axis=1)
        denom = 0.5 - theta_det  # never zero: theta_det is a multiple of 1/3
        mix = (theta_target - theta_det) / denom
        ok = (mix >= 0.0) & (mix <= 1.0)
        if not ok.any():
            continue
        theta, beta = _moments(angles[ok], mix[ok], aux[ok])
        ok2 = np.abs(theta - theta_target) <= window
        if ok2.any():
            best = max(best, float((0.5 + theta - beta)[ok2].max()))
    return best
