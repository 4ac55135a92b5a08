"""Synchronous nonlocal games, correlation tensors and the Delta game.

Correlations are stored as real arrays ``p[i, j, v, w]`` giving the joint
probability of outputs ``(i, j)`` on inputs ``(v, w)``.  Input indices on the
triangle are always taken mod 3.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

DEFAULT_TOL = 1e-9


class DimensionError(ValueError):
    """Raised when a tensor does not have the shape a game expects."""


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class Game:
    """A two-player game with shared input and output alphabets.

    Attributes
    ----------
    n, m
        Number of inputs and outputs.
    rule
        0/1 array indexed ``[v, w, i, j]``.
    input_dist
        Dense array ``pi[v, w]`` summing to one.
    """

    n: int
    m: int
    rule: np.ndarray
    input_dist: np.ndarray

    def __post_init__(self):
        rule = np.asarray(self.rule, dtype=int)
        pi = np.asarray(self.input_dist, dtype=float)
        if rule.shape != (self.n, self.n, self.m, self.m):
            raise DimensionError(f"rule has shape {rule.shape}")
        if pi.shape != (self.n, self.n):
            raise DimensionError(f"input_dist has shape {pi.shape}")
        if np.any(pi < 0) or abs(pi.sum() - 1.0) > 1e-12:
            raise DomainError("input_dist must be a probability distribution")
        rule.setflags(write=False)
        pi.setflags(write=False)
        object.__setattr__(self, "rule", rule)
        object.__setattr__(self, "input_dist", pi)

    def wins(self, v: int, w: int, i: int, j: int) -> int:
        return int(self.rule[v, w, i, j])

    def is_synchronous(self) -> bool:
        return all(
            self.rule[v, v, i, j] == 0
            for v in range(self.n)
            for i in range(self.m)
            for j in range(self.m)
            if i != j
        )


# The six edges of the triangle carrying input mass.
EDGES = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)]


def delta_game() -> Game:
    """Three inputs, two outputs; equal inputs need equal outputs, and the
    cyclic successor pairs ``(v, v+1)`` need different outputs."""
    rule = np.ones((3, 3, 2, 2), dtype=int)
    for v in range(3):
        for i, j in itertools.product(range(2), repeat=2):
            rule[v, v, i, j] = int(i == j)
            rule[v, (v + 1) % 3, i, j] = int(i != j)
    pi = np.zeros((3, 3))
    for v, w in EDGES:
        pi[v, w] = 1.0 / 6.0
    return Game(n=3, m=2, rule=rule, input_dist=pi)


@dataclass(frozen=True)
class Correlation:
    """Conditional output distribution ``p[i, j, v, w]``."""

    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 4 or p.shape[0] != p.shape[1] or p.shape[2] != p.shape[3]:
            raise DimensionError(f"correlation tensor has shape {p.shape}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def m(self) -> int:
        return self.p.shape[0]

    @property
    def n(self) -> int:
        return self.p.shape[2]

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "p": self.p.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "Correlation":
        corr = cls(np.asarray(data["p"], dtype=float))
        if (corr.n, corr.m) != (data["n"], data["m"]):
            raise DimensionError("declared n, m disagree with the tensor shape")
        return corr

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Correlation":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class CorrelationFlags:
    valid: bool
    synchronous: bool


@dataclass(frozen=True)
class ThetaPoint:
    """Coordinates ``(theta, theta_tilde)`` plus the mean edge overlap ``beta``.

    ``theta_tilde = 1/2 + theta - beta``.
    """

    theta: float
    theta_tilde: float
    beta: float | None = None

    @classmethod
    def from_beta(cls, theta, beta) -> "ThetaPoint":
        return cls(theta=theta, theta_tilde=0.5 + theta - beta, beta=beta)


def _check_shape(g: Game, p: Correlation):
    if p.p.shape != (g.m, g.m, g.n, g.n):
        raise DimensionError(
            f"correlation shape {p.p.shape} does not match game ({g.m},{g.m},{g.n},{g.n})"
        )


def validate_correlation(p: Correlation, tol: float = DEFAULT_TOL, n=None, m=None):
    """Check nonnegativity, row normalisation and synchronicity.

    ``n`` and ``m`` optionally pin the expected shape.
    """
    if n is not None and p.n != n or m is not None and p.m != m:
        raise DimensionError(f"expected n={n}, m={m}; got n={p.n}, m={p.m}")
    t = p.p
    valid = bool(np.all(t >= -tol) and np.all(np.abs(t.sum(axis=(0, 1)) - 1.0) <= tol))
    off_diag = ~np.eye(p.m, dtype=bool)
    diag_blocks = np.stack([t[:, :, v, v] for v in range(p.n)])
    synchronous = bool(np.all(diag_blocks[:, off_diag] <= tol))
    return CorrelationFlags(valid=valid, synchronous=synchronous)


def value(g: Game, p: Correlation) -> float:
    """Winning probability ``sum lambda(v,w,i,j) pi(v,w) p(i,j|v,w)``."""
    _check_shape(g, p)
    return float(np.einsum("vwij,vw,ijvw->", g.rule, g.input_dist, p.p))


def deterministic_correlation(assignment: Callable[[int], int] | Sequence[int], n=3, m=2):
    """Correlation of the classical strategy answering ``assignment(v)`` on input ``v``."""
    f = assignment if callable(assignment) else assignment.__getitem__
    p = np.zeros((m, m, n, n))
    for v, w in itertools.product(range(n), repeat=2):
        p[f(v), f(w), v, w] = 1.0
    return Correlation(p)


def theta_point_of(p: Correlation, tol: float = DEFAULT_TOL) -> ThetaPoint:
    """Read ``theta`` and ``beta`` off the output-0 entries of a synchronous
    three-input correlation."""
    if p.n != 3 or p.m != 2:
        raise DimensionError("theta coordinates are defined for n=3, m=2")
    if not validate_correlation(p, tol).synchronous:
        raise DomainError("correlation is not synchronous")
    t = p.p
    theta = sum(t[0, 0, v, v] for v in range(3)) / 3.0
    beta = sum(t[0, 0, v, (v + 1) % 3] for v in range(3)) / 3.0
    return ThetaPoint.from_beta(float(theta), float(beta))


def exact_value(g: Game, assignment: Sequence[int]) -> Fraction:
    """Value of a deterministic strategy in exact rational arithmetic."""
    total = Fraction(0)
    for v, w in itertools.product(range(g.n), repeat=2):
        pi = Fraction(g.input_dist[v, w]).limit_denominator(10**6)
        total += pi * g.wins(v, w, assignment[v], assignment[w])
    return total
