from fractions import Fraction

import numpy as np
import pytest

from deltagame import calgebra, game, lp, oracle
from deltagame.oracle import QubitStrategy


def test_enumerate_deterministic():
    pts = oracle.enumerate_deterministic()
    assert len(pts) == 8
    assert max(p.value for p in pts) == Fraction(5, 6)
    for p in pts:
        assert p.value == Fraction(1, 2) + Fraction(p.point.theta).limit_denominator(6) \
            - Fraction(p.point.beta).limit_denominator(6)
        # classical points never beat the quantum edge
        assert float(p.value) <= lp.f_t(p.point.theta).upper + 1e-12


def test_qubit_value_examples():
    third = QubitStrategy((0.0, np.pi / 3, 2 * np.pi / 3))
    point, val = oracle.qubit_value(third, 1.0)
    assert point.theta == pytest.approx(0.5) and val == pytest.approx(7 / 8, abs=1e-12)
    _, val = oracle.qubit_value(third, 0.0, aux=(0, 1, 1))
    assert val == pytest.approx(5 / 6, abs=1e-12)
    _, val = oracle.qubit_value(QubitStrategy((0.3, 0.3, 0.3)), 1.0)
    assert val == pytest.approx(0.5, abs=1e-12)


def test_qubit_value_matches_correlation(rng):
    g = game.delta_game()
    for _ in range(200):
        s = QubitStrategy(tuple(rng.uniform(0, np.pi, 3)))
        mix, aux = rng.uniform(), tuple(rng.integers(0, 2, 3))
        p = oracle.qubit_correlation(s, mix, aux)
        flags = game.validate_correlation(p)
        assert flags.valid and flags.synchronous
        point, val = oracle.qubit_value(s, mix, aux)
        assert game.value(g, p) == pytest.approx(val, abs=1e-12)
        assert game.theta_point_of(p).beta == pytest.approx(point.beta, abs=1e-12)


def test_qubit_correlation_matches_algebra():
    # The algebra's block generators are the qubit projections at angles
    # 0, pi/3, 2pi/3 and its scalar summand at index 7 plays output 0 everywhere.
    s = QubitStrategy((0.0, np.pi / 3, -np.pi / 3))
    for mix in (0.0, 0.3, 1.0):
        t = np.zeros(8)
        t[7] = 1 - mix
        st = calgebra.TracialState(t, mix)
        p_alg = calgebra.correlation_from_state(st)
        p_q = oracle.qubit_correlation(s, mix, aux=(0, 0, 0))
        assert np.abs(p_alg.p - p_q.p).max() <= 1e-12


def test_random_search_soundness():
    for th in (0.0, 0.25, 0.4, 0.5, 0.6, 0.8):
        best = oracle.random_search_max(th, iterations=20_000, seed=7)
        assert best <= lp.f_t(min(th + 1e-3, 1.0)).upper + 1e-3
    assert oracle.random_search_max(0.0, iterations=5_000) == pytest.approx(0.5, abs=1e-12)


def test_random_search_reproducible():
    a = oracle.random_search_max(0.45, iterations=10_000, seed=3)
    b = oracle.random_search_max(0.45, iterations=10_000, seed=3)
    assert a == b


def test_random_search_sharp_at_half():
    best = oracle.random_search_max(0.5, iterations=100_000, seed=42)
    assert 0.875 - 1e-3 <= best <= 0.875 + 1e-9
