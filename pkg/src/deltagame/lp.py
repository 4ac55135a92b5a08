"""Dense two-phase simplex for small linear programs, and the overlap program.

Programs are written as::

    minimize    c . x
    subject to  A x >= b,  x >= 0

The solver works on a full tableau with Bland's rule, which is enough for the
handful of variables used here and never cycles on the degenerate vertices
that appear at the breakpoints of the overlap program.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .game import DomainError
from .vect import Bounds

PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class LinearProgram:
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=float).reshape(-1)
        A = np.array(self.A, dtype=float).reshape(-1, c.size)
        b = np.array(self.b, dtype=float).reshape(-1)
        if A.shape[0] != b.size:
            raise ValueError("A and b disagree on the number of constraints")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("linear program has non-finite entries")
        for arr in (c, A, b):
            arr.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def n_vars(self) -> int:
        return self.c.size

    def to_dict(self) -> dict:
        return {"c": self.c.tolist(), "A": self.A.tolist(), "b": self.b.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "LinearProgram":
        return cls(c=data["c"], A=data["A"], b=data["b"])


@dataclass(frozen=True)
class LpSolution:
    """Solver outcome.

    ``dual`` holds one multiplier per row of ``A`` (only for optimal runs);
    ``basis`` lists the basic columns of ``[A, -I]`` at the final vertex.
    """

    status: str
    x: np.ndarray
    objective_value: float
    dual: np.ndarray | None = None
    basis: tuple = field(default=())
    iterations: int = 0


class _Tableau:
    """Rows ``[T | rhs]`` for ``T z = rhs`` plus one cost row per phase."""

    def __init__(self, T, rhs, basis):
        self.T = T
        self.rhs = rhs
        self.basis = list(basis)
        self.iterations = 0

    def pivot(self, r, k, cost_rows):
        piv = self.T[r, k]
        self.T[r] /= piv
        self.rhs[r] /= piv
        for i in range(self.T.shape[0]):
            if i != r and self.T[i, k] != 0.0:
                f = self.T[i, k]
                self.T[i] -= f * self.T[r]
                self.rhs[i] -= f * self.rhs[r]
        for row in cost_rows:
            f = row[0][k]
            if f != 0.0:
                row[0] -= f * self.T[r]
                row[1][0] -= f * self.rhs[r]
        self.basis[r] = k
        self.iterations += 1

    def run(self, cost, allowed, max_iter):
        """Bland's rule on ``cost = (reduced costs, [-objective])``.

        Returns False when the objective is unbounded below.
        """
        for _ in range(max_iter):
            enter = next((k for k in allowed if cost[0][k] < -PIVOT_TOL), None)
            if enter is None:
                return True
            col = self.T[:, enter]
            rows = np.flatnonzero(col > PIVOT_TOL)
            if rows.size == 0:
                return False
            ratios = self.rhs[rows] / col[rows]
            ties = rows[ratios <= ratios.min() + PIVOT_TOL]
            leave = min(ties, key=lambda i: self.basis[i])
            self.pivot(leave, enter, [cost])
        raise RuntimeError("simplex iteration limit reached")


def solve(prog: LinearProgram, feas_tol: float = 1e-9, max_iter: int = 10_000) -> LpSolution:
    """Two-phase simplex with Bland's anti-cycling rule.

    Infeasible and unbounded programs are reported through ``status``.
    """
    A, b, c = prog.A, prog.b, prog.c
    m, n = A.shape
    # Columns: x (n), surplus (m), artificial (m).
    T = np.hstack([A, -np.eye(m), np.zeros((m, m))])
    rhs = b.copy()
    neg = rhs < 0
    T[neg] *= -1.0
    rhs[neg] *= -1.0
    T[:, n + m:] = np.eye(m)
    tab = _Tableau(T, rhs, range(n + m, n + 2 * m))
    n_real = n + m

    # Phase one minimises the sum of artificials.
    w = np.zeros(n + 2 * m)
    w[n + m:] = 1.0
    phase1 = [w - T.sum(axis=0), np.array([-rhs.sum()])]
    phase1[0][n + m:] = 0.0
    tab.run(phase1, range(n + 2 * m), max_iter)
    scale = 1.0 + np.abs(b).max(initial=0.0)
    if -phase1[1][0] > feas_tol * scale:
        return LpSolution("infeasible", np.full(n, np.nan), np.nan, iterations=tab.iterations)

    # Drive artificials out of the basis; rows where that fails are redundant.
    for r, k in enumerate(list(tab.basis)):
        if k >= n_real:
            cand = np.flatnonzero(np.abs(tab.T[r, :n_real]) > 1e-9)
            if cand.size:
                tab.pivot(r, int(cand[0]), [])

    cost = np.zeros(n + 2 * m)
    cost[:n] = c
    obj = [cost.copy(), np.array([0.0])]
    for r, k in enumerate(tab.basis):
        if obj[0][k] != 0.0:
            f = obj[0][k]
            obj[0] -= f * tab.T[r]
            obj[1][0] -= f * tab.rhs[r]
    if not tab.run(obj, range(n_real), max_iter):
        return LpSolution("unbounded", np.full(n, np.nan), -np.inf, iterations=tab.iterations)

    z = np.zeros(n + 2 * m)
    z[tab.basis] = tab.rhs
    x = np.where(np.abs(z[:n]) < 1e-14, 0.0, z[:n])
    basis = tuple(sorted(k for k in tab.basis if k < n_real))
    return LpSolution(
        status="optimal",
        x=x,
        objective_value=float(c @ x),
        dual=_dual_multipliers(prog, basis),
        basis=basis,
        iterations=tab.iterations,
    )


def _dual_multipliers(prog: LinearProgram, basis) -> np.ndarray:
    """Solve ``M_B^T y = c_B`` for the standard-form matrix ``M = [A, -I]``."""
    m, n = prog.A.shape
    M = np.hstack([prog.A, -np.eye(m)])
    cost = np.concatenate([prog.c, np.zeros(m)])
    B = M[:, list(basis)]
    y, *_ = np.linalg.lstsq(B.T, cost[list(basis)], rcond=None)
    return y


def check_optimality(prog: LinearProgram, sol: LpSolution, tol: float = 1e-9) -> dict:
    """Primal feasibility, dual feasibility and complementary slackness residuals."""
    A, b, c, x, y = prog.A, prog.b, prog.c, sol.x, sol.dual
    slack = A @ x - b
    reduced = c - A.T @ y
    return {
        "primal": float(max(0.0, -slack.min(initial=0.0), -x.min(initial=0.0))),
        "dual": float(max(0.0, -y.min(initial=0.0), -reduced.min(initial=0.0))),
        "slackness": float(max(np.abs(y * slack).max(initial=0.0), np.abs(x * reduced).max(initial=0.0))),
        "gap": float(abs(c @ x - b @ y)),
    }


def _check_theta(theta):
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta={theta} outside [0, 1]")


def beta0_program(theta: float) -> LinearProgram:
    """Smallest mean overlap of three projections with trace ``theta``.

    Variables ``(beta, s, t)``: the overlap, the weight of the 2x2 block and
    the weight of the all-ones scalar summand.  Each row keeps one family of
    scalar weights nonnegative.
    """
    _check_theta(theta)
    return LinearProgram(
        c=[1.0, 0.0, 0.0],
        A=[
            [3.0, 1.0 / 8.0, -1.0],
            [-2.0, -1.0 / 4.0, 1.0],
            [1.0, -1.0 / 8.0, -1.0],
        ],
        b=[3.0 * theta - 1.0, -theta, 0.0],
    )


def beta0_closed(theta: float) -> float:
    _check_theta(theta)
    if theta <= 1.0 / 3.0:
        return 0.0
    if theta <= 0.5:
        return (3.0 * theta - 1.0) / 4.0
    if theta <= 2.0 / 3.0:
        return (5.0 * theta - 2.0) / 4.0
    return 2.0 * theta - 1.0


def f_t(theta: float):
    """Edges of the attainable ``theta_tilde`` range for the quantum models.

    The lower edge comes from commuting copies of one projection
    (overlap equal to ``theta``); the upper edge from the minimal overlap.
    """
    _check_theta(theta)
    return Bounds(0.5, 0.5 + theta - beta0_closed(theta))
