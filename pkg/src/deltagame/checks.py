"""Numbered verification criteria shared by the test suite and ``deltagame verify``.

Each criterion returns a :class:`CriterionResult`.  Module functions are
looked up through their modules at call time so that a patched
implementation is what gets checked.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import calgebra, game, lp, oracle, vect

GRID = np.linspace(0.0, 1.0, 101)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(number, name):
    def wrap(fn):
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                passed, detail = fn(*args, **kwargs)
            except Exception as exc:  # a crash is a failed criterion, not an aborted run
                passed, detail = False, f"raised {type(exc).__name__}: {exc}"
            return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - t0)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def gap_closed(theta: float) -> float:
    """Vector minus quantum upper edge, written out independently of both."""
    if 1.0 / 3.0 <= theta <= 0.5:
        return (1.0 - 2.0 * theta) * (3.0 * theta - 1.0) / 4.0
    if 0.5 <= theta <= 2.0 / 3.0:
        return (2.0 * theta - 1.0) * (2.0 - 3.0 * theta) / 4.0
    return 0.0


@_timed(1, "closed-form agreement")
def closed_form_agreement(grid=GRID, bisect_tol=1e-6, lp_tol=1e-9, budget=10.0):
    t0 = time.perf_counter()
    err_b = max(
        abs(vect.beta_min_numeric(th, 1e-8) - max((3 * th**2 - th) / 2, 2 * th - 1, 0.0)) for th in grid
    )
    err_lp = 0.0
    for th in grid:
        sol = lp.solve(lp.beta0_program(th))
        err_lp = max(err_lp, abs(sol.objective_value - lp.beta0_closed(th)) if sol.status == "optimal" else np.inf)
    elapsed = time.perf_counter() - t0
    ok = err_b <= bisect_tol and err_lp <= lp_tol and elapsed <= budget
    return ok, f"bisection err {err_b:.2e} (<= {bisect_tol:g}), LP err {err_lp:.2e} (<= {lp_tol:g}), budget {budget:g}s"


@_timed(2, "game value 7/8 for both models")
def game_value(grid=GRID, tol=1e-12):
    ft = np.array([lp.f_t(th).upper for th in grid])
    fv = np.array([vect.f_vect(th).upper for th in grid])
    it, iv = int(np.argmax(ft)), int(np.argmax(fv))
    ok = (
        abs(ft[it] - 0.875) <= tol
        and abs(fv[iv] - 0.875) <= tol
        and abs(grid[it] - 0.5) <= tol
        and abs(grid[iv] - 0.5) <= tol
        and np.any(np.abs(ft - fv) > 1e-6)
    )
    return ok, f"max f_t^u={ft[it]:.12f} at {grid[it]:g}, max f_vect^u={fv[iv]:.12f} at {grid[iv]:g}"


SEPARATION_EXPECTED = {
    0.4: Fraction(1, 100),
    0.45: Fraction(7, 800),
    0.55: Fraction(7, 800),
    0.6: Fraction(1, 100),
}


@_timed(3, "separation of vector and quantum edges")
def separation(tol=1e-12):
    msgs, ok = [], True
    for th, exact in SEPARATION_EXPECTED.items():
        gap = vect.f_vect(th).upper - lp.f_t(th).upper
        ok &= gap > 0 and abs(gap - gap_closed(th)) <= tol and abs(gap - float(exact)) <= tol
        msgs.append(f"{th:g}:{gap:.6g}")
    for th in (0.2, 1 / 3, 0.5, 2 / 3, 0.8):
        gap = vect.f_vect(th).upper - lp.f_t(th).upper
        ok &= abs(gap) <= tol
    return ok, "gaps " + ", ".join(msgs) + "; zero at 0.2, 1/3, 1/2, 2/3, 0.8"


@_timed(4, "witness round trips")
def witness_round_trips(n_points=21, tol_vect=1e-8, tol_qc=1e-9):
    g = game.delta_game()
    err_v = err_q = 0.0
    flags_ok = True
    for th in np.linspace(0.0, 1.0, n_points):
        bmin, _ = vect.beta_range_closed(th)
        wv = vect.vect_witness(th, bmin)
        err_v = max(err_v, abs(game.value(g, wv.correlation) - vect.f_vect(th).upper))
        st, _ = calgebra.optimal_state(th)
        pq = calgebra.correlation_from_state(st)
        err_q = max(err_q, abs(game.value(g, pq) - lp.f_t(th).upper))
        for p in (wv.correlation, pq):
            f = game.validate_correlation(p)
            flags_ok &= f.valid and f.synchronous
    ok = err_v <= tol_vect and err_q <= tol_qc and flags_ok
    return ok, f"vect err {err_v:.2e}, qc err {err_q:.2e}, all valid+synchronous={flags_ok}"


@_timed(5, "algebra certification")
def algebra_certification(tol=1e-15, corr_tol=1e-12):
    A, B, C = calgebra.universal_generators()
    proj = all(x.is_projection(atol=1e-15) for x in (A, B, C))
    comm = max(
        calgebra.commutator(A, B + C).max_abs(),
        calgebra.commutator(B, A + C).max_abs(),
        calgebra.commutator(C, A + B).max_abs(),
    )
    Y = calgebra.central_element()
    central = max(calgebra.commutator(Y, x).max_abs() for x in (A, B, C))
    st = calgebra.TracialState.pure_block()
    theta, beta = calgebra.generator_moments(st)
    qc = calgebra.correlation_from_state(st).p
    qb = oracle.qubit_correlation(oracle.QubitStrategy((0.0, np.pi / 3, 2 * np.pi / 3)), 1.0).p
    corr_err = float(np.abs(qc - qb).max())
    ok = (
        proj
        and comm < tol
        and central < tol
        and abs(theta - 0.5) <= 1e-15
        and abs(beta - 0.125) <= 1e-15
        and corr_err <= corr_tol
    )
    return ok, (
        f"projections={proj}, max commutator {comm:.1e}, max [Y,.] {central:.1e}, "
        f"(theta,beta)=({theta:g},{beta:g}), qubit vs block {corr_err:.1e}"
    )


def random_hermitian(rng) -> calgebra.AlgebraElement:
    sc = rng.normal(size=8)
    X = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return calgebra.AlgebraElement(sc, (X + X.conj().T) / 2)


def random_state(rng, faithful=True) -> calgebra.TracialState:
    w = rng.dirichlet(np.ones(9))
    if not faithful:
        w[rng.random(9) < 0.3] = 0.0
        w = w / w.sum() if w.sum() > 0 else np.eye(9)[8]
    return calgebra.TracialState(w[:8], w[8])


@_timed(6, "perturbation derivative")
def perturbation(n_pairs=100, seed=42, tol=1e-6):
    rng = np.random.Generator(np.random.PCG64(seed))
    worst = 0.0
    sign_ok = True
    for _ in range(n_pairs):
        A, P, st = random_hermitian(rng), random_hermitian(rng), random_state(rng)
        an, nu = calgebra.perturbation_derivative(A, P, st)
        worst = max(worst, abs(an - nu))
        sign_ok &= an > 0
    Ag, Bg, Cg = calgebra.universal_generators()
    an0, nu0 = calgebra.perturbation_derivative(Ag, Bg + Cg, random_state(rng))
    ok = worst <= tol and sign_ok and an0 == 0.0 and abs(nu0) <= tol
    return ok, f"max |analytic-numeric| {worst:.2e}, positive={sign_ok}, P=B+C gives {an0!r}"


@_timed(7, "classical baseline")
def classical_baseline():
    vals = [d.value for d in oracle.enumerate_deterministic()]
    ok = max(vals) == Fraction(5, 6) and min(vals) == Fraction(1, 2) and Fraction(5, 6) < Fraction(7, 8)
    return ok, f"max {max(vals)}, min {min(vals)}, quantum 7/8"


@_timed(8, "seeded search soundness and sharpness")
def search_oracle(thetas=(0.4, 0.5, 0.6), iterations=100_000, seed=42, budget=60.0):
    t0 = time.perf_counter()
    msgs, ok = [], True
    for th in thetas:
        best = oracle.random_search_max(th, iterations, seed)
        target = lp.f_t(th).upper
        ok &= target - 5e-3 <= best <= target + 1e-3
        msgs.append(f"{th:g}: {best:.6f} vs {target:.6f}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed <= budget
    return ok, "; ".join(msgs) + f", budget {budget:g}s"


def random_bounded_lp(rng, n_vars=3, n_rows=4, box=10.0) -> lp.LinearProgram:
    """Random feasible LP inside ``[0, box]^n``; the box rows keep it bounded."""
    x0 = rng.uniform(0.0, box, size=n_vars)
    G = rng.normal(size=(n_rows, n_vars))
    h = G @ x0 - rng.uniform(0.0, 5.0, size=n_rows)
    A = np.vstack([G, -np.eye(n_vars)])
    b = np.concatenate([h, -box * np.ones(n_vars)])
    return lp.LinearProgram(c=rng.normal(size=n_vars), A=A, b=b)


def vertex_enumeration(prog: lp.LinearProgram, tol=1e-9) -> float:
    """Minimum of ``c.x`` over all basic feasible points, by brute force."""
    n = prog.n_vars
    A = np.vstack([prog.A, np.eye(n)])
    b = np.concatenate([prog.b, np.zeros(n)])
    best = np.inf
    for rows in itertools.combinations(range(A.shape[0]), n):
        M = A[list(rows)]
        if abs(np.linalg.det(M)) < 1e-10:
            continue
        x = np.linalg.solve(M, b[list(rows)])
        if np.all(A @ x - b >= -tol * (1 + np.abs(b))):
            best = min(best, float(prog.c @ x))
    return best


@_timed(9, "simplex correctness")
def simplex_correctness(n_programs=500, seed=42, tol=1e-8):
    rng = np.random.Generator(np.random.PCG64(seed))
    worst = 0.0
    for _ in range(n_programs):
        prog = random_bounded_lp(rng, n_rows=int(rng.integers(1, 6)))
        sol = lp.solve(prog)
        ref = vertex_enumeration(prog)
        worst = max(worst, abs(sol.objective_value - ref) if sol.status == "optimal" else np.inf)
    degenerate = []
    for th in (1 / 3, 0.5, 2 / 3):
        sol = lp.solve(lp.beta0_program(th))
        degenerate.append(sol.status == "optimal" and abs(sol.objective_value - lp.beta0_closed(th)) <= 1e-9)
    ok = worst <= tol and all(degenerate)
    return ok, f"max |simplex - enumeration| {worst:.2e} over {n_programs}; breakpoints ok={all(degenerate)}"


@_timed(10, "symmetry and attainment")
def symmetry_and_attainment(grid=GRID, tol=1e-12):
    sym = max(
        max(abs(lp.f_t(th).upper - lp.f_t(1 - th).upper), abs(vect.f_vect(th).upper - vect.f_vect(1 - th).upper))
        for th in grid
    )
    attained = all(
        b.lower_attained and b.upper_attained for th in grid for b in (lp.f_t(th), vect.f_vect(th))
    )
    return sym <= tol and attained, f"max asymmetry {sym:.1e}, attained everywhere={attained}"


QUICK = [
    closed_form_agreement,
    game_value,
    separation,
    witness_round_trips,
    algebra_certification,
    perturbation,
    classical_baseline,
    simplex_correctness,
    symmetry_and_attainment,
]
FULL = QUICK[:7] + [search_oracle] + QUICK[7:]


SEEDED = {perturbation, search_oracle, simplex_correctness}


def run_all(level: str = "quick", seed: int = 42):
    return [
        check(seed=seed) if check in SEEDED else check()
        for check in (FULL if level == "full" else QUICK)
    ]

