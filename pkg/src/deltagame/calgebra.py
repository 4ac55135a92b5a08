"""Arithmetic in the algebra C^8 + M_2 generated by three projections.

The three projections ``A, B, C`` satisfy ``[A, B+C] = [B, A+C] = [C, A+B] = 0``
and every algebra they generate is a quotient of ``C^8 + M_2``.  The eight
scalar summands hold the eight 0/1 patterns of ``(A, B, C)``; the 2x2 block
holds the unique irreducible noncommuting representation.  Tracial states are
weights ``t_1..t_8`` on the scalars plus ``s`` times the normalised trace on
the block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lp
from .game import Correlation, DomainError

_SQRT3 = np.sqrt(3.0)


@dataclass(frozen=True)
class AlgebraElement:
    """``scalars[0..7]`` direct-summed with the 2x2 ``block``."""

    scalars: np.ndarray
    block: np.ndarray

    def __post_init__(self):
        sc = np.array(self.scalars, dtype=complex).reshape(8)
        bl = np.array(self.block, dtype=complex).reshape(2, 2)
        sc.setflags(write=False)
        bl.setflags(write=False)
        object.__setattr__(self, "scalars", sc)
        object.__setattr__(self, "block", bl)

    @classmethod
    def identity(cls):
        return cls(np.ones(8), np.eye(2))

    @classmethod
    def zero(cls):
        return cls(np.zeros(8), np.zeros((2, 2)))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, c):
        return scale(self, c)

    def adjoint(self):
        return adjoint(self)

    def max_abs(self) -> float:
        return float(max(np.abs(self.scalars).max(), np.abs(self.block).max()))

    def allclose(self, other, atol=1e-12) -> bool:
        return (self - other).max_abs() <= atol

    def is_hermitian(self, atol=1e-12) -> bool:
        return self.allclose(self.adjoint(), atol)

    def is_projection(self, atol=1e-12) -> bool:
        return self.is_hermitian(atol) and self.allclose(self * self, atol)


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.scalars + y.scalars, x.block + y.block)


def scale(x: AlgebraElement, c) -> AlgebraElement:
    return AlgebraElement(c * x.scalars, c * x.block)


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.scalars * y.scalars, x.block @ y.block)


def adjoint(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(np.conj(x.scalars), x.block.conj().T)


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return mul(x, y) - mul(y, x)


def universal_generators():
    """The projections ``A, B, C``.

    Scalar summand ``k`` carries the bit pattern of ``k`` read as
    ``(A, B, C)`` from the most significant bit.
    """
    bits = np.array([[(k >> s) & 1 for k in range(8)] for s in (2, 1, 0)], dtype=float)
    A = AlgebraElement(bits[0], [[1.0, 0.0], [0.0, 0.0]])
    B = AlgebraElement(bits[1], [[0.25, _SQRT3 / 4], [_SQRT3 / 4, 0.75]])
    C = AlgebraElement(bits[2], [[0.25, -_SQRT3 / 4], [-_SQRT3 / 4, 0.75]])
    return A, B, C


def central_element() -> AlgebraElement:
    """``Y = 2(B+C) - (B+C)^2``, which commutes with all three generators."""
    _, B, C = universal_generators()
    S = B + C
    return 2.0 * S - S * S


@dataclass(frozen=True)
class TracialState:
    """Weights ``t[0..7]`` on the scalar summands and ``s`` on the block."""

    t: np.ndarray
    s: float

    def __post_init__(self):
        t = np.array(self.t, dtype=float).reshape(8)
        if np.any(t < 0) or self.s < 0:
            raise DomainError("tracial state weights must be nonnegative")
        if abs(t.sum() + self.s - 1.0) > 1e-12:
            raise DomainError("tracial state weights must sum to one")
        t.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", float(self.s))

    @classmethod
    def pure_block(cls):
        return cls(np.zeros(8), 1.0)

    @classmethod
    def point(cls, k: int):
        t = np.zeros(8)
        t[k] = 1.0
        return cls(t, 0.0)

    def is_faithful(self) -> bool:
        return bool(np.all(self.t > 0) and self.s > 0)


def trace(st: TracialState, x: AlgebraElement) -> complex:
    return complex(st.t @ x.scalars + 0.5 * st.s * np.trace(x.block))


@dataclass(frozen=True)
class ConstraintReduction:
    """All states with ``tau(A)=tau(B)=tau(C)=theta`` and pairwise overlaps
    ``beta``, parametrised by the block weight ``s`` and ``t = t_8``."""

    theta: float
    beta: float

    def weights(self, s: float, t: float) -> np.ndarray:
        th, b = self.theta, self.beta
        t1 = 1.0 + 3.0 * b - 3.0 * th + s / 8.0 - t
        single = th - 2.0 * b - s / 4.0 + t  # t_2 = t_3 = t_5
        double = b - s / 8.0 - t  # t_4 = t_6 = t_7
        return np.array([t1, single, single, double, single, double, double, t])

    def is_admissible(self, s: float, t: float, tol: float = 1e-12) -> bool:
        return s >= -tol and t >= -tol and bool(np.all(self.weights(s, t) >= -tol))

    def state(self, s: float, t: float, tol: float = 1e-12) -> TracialState:
        if not self.is_admissible(s, t, tol):
            raise DomainError(f"(s, t)=({s}, {t}) gives negative weights")
        w = np.clip(self.weights(s, t), 0.0, None)
        s = max(s, 0.0)
        # Clipping moves the total by at most ~tol.
        total = w.sum() + s
        return TracialState(w / total, s / total)


def constraint_reduction(theta: float, beta: float) -> ConstraintReduction:
    return ConstraintReduction(theta, beta)


def expi(H: AlgebraElement, t: float) -> AlgebraElement:
    """``exp(i t H)`` for hermitian ``H``.

    The 2x2 block uses ``H = m I + N`` with ``N`` traceless, so that
    ``exp(i t H) = e^{i t m} (cos(r t) I + i sin(r t)/r N)``, ``r^2 = -det N``.
    """
    sc = np.exp(1j * t * H.scalars.real)
    m = 0.5 * np.trace(H.block).real
    N = H.block - m * np.eye(2)
    r = np.sqrt(max(-np.linalg.det(N).real, 0.0))
    sinc = t if r * abs(t) < 1e-12 else np.sin(r * t) / r
    bl = np.exp(1j * t * m) * (np.cos(r * t) * np.eye(2) + 1j * sinc * N)
    return AlgebraElement(sc, bl)


def perturbation_derivative(A: AlgebraElement, P: AlgebraElement, st: TracialState,
                            step: float = 1e-5):
    """Derivative at zero of ``f(t) = tau(A e^{iHt} P e^{-iHt})`` with ``H = i(PA - AP)``.

    Returns ``(analytic, numeric)``: the closed form ``tau(|PA - AP|^2)`` and a
    central difference of ``f``.
    """
    if not (A.is_hermitian() and P.is_hermitian()):
        raise DomainError("A and P must be hermitian")
    K = P * A - A * P
    H = 1j * K

    def f(t):
        return trace(st, A * expi(H, t) * P * expi(H, -t)).real

    analytic = trace(st, K.adjoint() * K).real
    numeric = (f(step) - f(-step)) / (2.0 * step)
    return analytic, numeric


def generator_moments(st: TracialState):
    """``(theta, beta)``: mean trace of the generators and mean edge overlap."""
    gens = universal_generators()
    theta = np.mean([trace(st, g).real for g in gens])
    beta = np.mean([trace(st, gens[v] * gens[(v + 1) % 3]).real for v in range(3)])
    return float(theta), float(beta)


def optimal_state(theta: float):
    """A tracial state minimising the mean overlap at the given ``theta``.

    Among optimal states it takes the largest block weight ``s`` and then the
    smallest ``t_8``.  Returns ``(state, beta0)``.
    """
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta={theta} outside [0, 1]")
    beta0 = lp.beta0_closed(theta)
    st = state_with_moments(theta, beta0, tol=1e-9)
    if st is None:
        raise RuntimeError(f"no tracial state attains beta0={beta0} at theta={theta}")
    return st, beta0


def state_with_moments(theta: float, beta: float, tol: float = 1e-9):
    """A tracial state with ``tau(A_v) = theta`` and ``tau(A_v A_{v+1}) = beta``,
    or ``None`` when there is none.

    The admissible ``(s, t)`` polygon is searched by LP: first for the largest
    ``s``, then for the smallest ``t`` at that ``s``.
    """
    red = constraint_reduction(theta, beta)
    # Rows a.(s, t) >= rhs, one per distinct weight expression.
    rows = np.array([[1.0 / 8.0, -1.0], [-1.0 / 4.0, 1.0], [-1.0 / 8.0, -1.0]])
    rhs = np.array([3.0 * theta - 1.0 - 3.0 * beta, 2.0 * beta - theta, -beta])
    first = lp.solve(lp.LinearProgram(c=[-1.0, 0.0], A=rows, b=rhs), feas_tol=tol)
    if first.status != "optimal":
        return None
    s = float(first.x[0])
    second = lp.solve(lp.LinearProgram(c=[1.0], A=rows[:, 1:], b=rhs - rows[:, 0] * s), feas_tol=tol)
    t = float(second.x[0]) if second.status == "optimal" else float(first.x[1])
    return red.state(s, t, tol=tol)


def generator_pvms():
    """``e[v][i]`` with ``e[v][0]`` the ``v``-th generator and ``e[v][1] = 1 - e[v][0]``."""
    one = AlgebraElement.identity()
    return [(g, one - g) for g in universal_generators()]


def correlation_from_state(st: TracialState) -> Correlation:
    """``p(i,j|v,w) = tau(e_{v,i} e_{w,j})``."""
    e = generator_pvms()
    p = np.zeros((2, 2, 3, 3))
    for i in range(2):
        for j in range(2):
            for v in range(3):
                for w in range(3):
                    p[i, j, v, w] = trace(st, e[v][i] * e[w][j]).real
    p = np.where(np.abs(p) < 1e-15, 0.0, p)
    return Correlation(p)
