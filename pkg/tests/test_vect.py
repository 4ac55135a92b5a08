import numpy as np
import pytest

from deltagame import game, linalg, vect
from deltagame.game import DomainError

GRID = np.linspace(0.0, 1.0, 101)


def test_build_gram_examples():
    G = vect.build_gram(0.0, 0.0)
    assert np.all(G[1:4] == 0)
    assert np.all(G[np.ix_([0, 4, 5, 6], [0, 4, 5, 6])] == 1)
    assert linalg.psd_check(G)
    G = vect.build_gram(1.0, 1.0)
    assert np.all(G[np.ix_([0, 1, 2, 3], [0, 1, 2, 3])] == 1)
    assert np.all(G[4:] == 0)
    assert linalg.psd_check(G)
    assert vect.build_gram(0.5, 1 / 8)[4, 5] == pytest.approx(1 / 8)


def test_build_gram_is_gram_of_vectors(rng):
    # Independent construction: pick h, x_v with the symmetric overlaps by
    # hand from a feasible witness and compare entries.
    for th in (0.2, 0.4, 0.5, 0.7):
        b = vect.beta_range_closed(th)[0]
        w = vect.vect_witness(th, b)
        V = np.vstack([w.h, w.x, w.h - w.x])
        assert np.abs(V @ V.T - vect.build_gram(th, b)).max() <= 1e-8


def test_reduce_gram_examples():
    Gp = vect.reduce_gram(0.5, 1 / 8)
    A = Gp[:3, :3]
    assert A[0, 0] == pytest.approx(0.25) and A[0, 1] == pytest.approx(-0.125)
    assert np.linalg.eigvalsh(A)[0] == pytest.approx(0.0, abs=1e-15)
    assert np.all(vect.reduce_gram(0.0, 0.0) == 0)
    A = vect.reduce_gram(0.4, 0.2)[:3, :3]
    assert (A[0, 0], A[0, 1]) == pytest.approx((0.24, 0.04))
    assert linalg.psd_check(vect.reduce_gram(0.4, 0.2))


def test_reduce_gram_is_schur_complement():
    for th, b in [(0.3, 0.05), (0.6, 0.3), (0.9, 0.85)]:
        G = vect.build_gram(th, b)
        schur = G[1:, 1:] - np.outer(G[1:, 0], G[0, 1:])
        assert np.allclose(schur, vect.reduce_gram(th, b), atol=1e-15)


def test_gram_and_reduced_agree_on_grid():
    for th in np.linspace(0, 1, 50):
        for b in np.linspace(-0.2, 1.0, 50):
            assert linalg.psd_check(vect.build_gram(th, b), 1e-12) == linalg.psd_check(
                vect.reduce_gram(th, b), 1e-12
            ), (th, b)


def test_circulant_interval_condition():
    # A(a, x) >= 0 iff -a/2 <= x <= a, checked against eigenvalues.
    for a in (0.1, 0.25):
        for x in np.linspace(-a, 1.5 * a, 41):
            lam = np.linalg.eigvalsh(vect.circulant_block(a, x))[0]
            if abs(lam) > 1e-12:
                assert (lam > 0) == (-a / 2 <= x <= a)


@pytest.mark.parametrize(
    "theta, expected",
    [(1 / 3, (0.0, 1 / 3)), (0.5, (1 / 8, 0.5)), (1.0, (1.0, 1.0))],
)
def test_beta_range_closed(theta, expected):
    assert vect.beta_range_closed(theta) == pytest.approx(expected, abs=1e-15)


def test_beta_range_domain():
    with pytest.raises(DomainError):
        vect.beta_range_closed(1.2)
    with pytest.raises(DomainError):
        vect.f_vect(-0.1)


@pytest.mark.parametrize("theta, expected", [(0.5, 0.125), (0.4, 0.04), (0.9, 0.8)])
def test_beta_min_numeric_examples(theta, expected):
    assert vect.beta_min_numeric(theta, 1e-8) == pytest.approx(expected, abs=1e-8)


def test_beta_min_numeric_matches_closed_on_grid():
    for th in GRID:
        assert abs(vect.beta_min_numeric(th, 1e-8) - vect.beta_range_closed(th)[0]) <= 1e-6


def test_f_vect_values():
    assert vect.f_vect(1 / 3).upper == pytest.approx(5 / 6, abs=1e-15)
    assert (1 + 1 - 1 / 3) / 2 == pytest.approx(5 / 6)
    assert vect.f_vect(0.5).upper == 0.875
    assert tuple(vect.f_vect(0.0)) == (0.5, 0.5)
    b = vect.f_vect(0.3)
    assert b.lower_attained and b.upper_attained


def test_f_vect_pieces_continuous():
    mid = lambda th: (1 + 3 * th - 3 * th**2) / 2
    assert 0.5 + 1 / 3 == pytest.approx(mid(1 / 3), abs=1e-15)
    assert 1.5 - 2 / 3 == pytest.approx(mid(2 / 3), abs=1e-15)


def test_f_vect_upper_is_half_plus_theta_minus_beta_min():
    for th in GRID:
        assert vect.f_vect(th).upper == pytest.approx(0.5 + th - vect.beta_range_closed(th)[0], abs=1e-15)


def test_f_vect_symmetry():
    for th in GRID:
        assert vect.f_vect(th).upper == pytest.approx(vect.f_vect(1 - th).upper, abs=1e-12)


def test_symmetry_through_witnesses():
    # Swapping the roles of x_v and y_v maps theta to 1 - theta.
    g = game.delta_game()
    for th in (0.1, 0.35, 0.45):
        w = vect.vect_witness(th, vect.beta_range_closed(th)[0])
        swapped = game.Correlation(w.correlation.p[::-1, ::-1])
        pt = game.theta_point_of(swapped)
        assert pt.theta == pytest.approx(1 - th, abs=1e-8)
        assert game.value(g, swapped) == pytest.approx(vect.f_vect(1 - th).upper, abs=1e-6)


@pytest.mark.parametrize("theta, beta, expected", [(0.5, 1 / 8, 7 / 8), (1 / 3, 0.0, 5 / 6), (1.0, 1.0, 0.5)])
def test_witness_examples(theta, beta, expected):
    w = vect.vect_witness(theta, beta)
    flags = game.validate_correlation(w.correlation)
    assert flags.valid and flags.synchronous
    assert game.value(game.delta_game(), w.correlation) == pytest.approx(expected, abs=1e-8)


def test_witness_vectors_obey_constraints():
    w = vect.vect_witness(0.45, 0.07875)
    assert np.linalg.norm(w.h) == pytest.approx(1.0, abs=1e-9)
    for v in range(3):
        assert w.x[v] @ w.y[v] == pytest.approx(0.0, abs=1e-9)
        assert w.x[v] @ w.h == pytest.approx(0.45, abs=1e-9)
    assert w.vectors.shape[0] == 7


def test_witness_value_over_feasible_region():
    g = game.delta_game()
    for th in np.linspace(0, 1, 21):
        lo, hi = vect.beta_range_closed(th)
        for b in np.linspace(lo, hi, 7):
            w = vect.vect_witness(th, b)
            assert game.value(g, w.correlation) == pytest.approx(0.5 + th - b, abs=1e-8)
            pt = game.theta_point_of(w.correlation)
            assert (pt.theta, pt.beta) == pytest.approx((th, b), abs=1e-8)


def test_witness_rejects_infeasible():
    with pytest.raises(DomainError):
        vect.vect_witness(0.5, 0.1)
