import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltagame import game
from deltagame.game import Correlation, DimensionError, DomainError

from conftest import brute_value

ALLOWED_ON_E = [
    (0, 0, 0, 0), (0, 1, 0, 1), (1, 1, 0, 0), (1, 2, 0, 1), (2, 2, 0, 0), (2, 0, 0, 1),
    (0, 0, 1, 1), (0, 1, 1, 0), (1, 1, 1, 1), (1, 2, 1, 0), (2, 2, 1, 1), (2, 0, 1, 0),
]
DISALLOWED = [
    (0, 0, 0, 1), (0, 1, 0, 0), (1, 1, 0, 1), (1, 2, 0, 0), (2, 2, 0, 1), (2, 0, 0, 0),
    (0, 0, 1, 0), (0, 1, 1, 1), (1, 1, 1, 0), (1, 2, 1, 1), (2, 2, 1, 0), (2, 0, 1, 1),
]


def test_rule_table_matches_listing():
    g = game.delta_game()
    for t in ALLOWED_ON_E:
        assert g.wins(*t) == 1
    for t in DISALLOWED:
        assert g.wins(*t) == 0
    rest = set(itertools.product(range(3), range(3), range(2), range(2))) - set(ALLOWED_ON_E) - set(DISALLOWED)
    assert len(rest) == 12
    assert all(g.wins(*t) == 1 for t in rest)


def test_rule_examples():
    g = game.delta_game()
    assert g.wins(0, 0, 0, 0) == 1
    assert g.wins(0, 1, 0, 0) == 0
    assert g.wins(0, 2, 1, 1) == 1


def test_input_distribution():
    g = game.delta_game()
    assert g.input_dist.sum() == pytest.approx(1.0, abs=1e-12)
    for v, w in itertools.product(range(3), repeat=2):
        expected = 1 / 6 if (v, w) in game.EDGES else 0.0
        assert g.input_dist[v, w] == expected
    assert g.is_synchronous()


def test_game_rejects_bad_distribution():
    g = game.delta_game()
    with pytest.raises(DomainError):
        game.Game(3, 2, g.rule, g.input_dist * 2)
    with pytest.raises(DimensionError):
        game.Game(3, 2, g.rule[:2], g.input_dist)


def test_validate_examples():
    p = np.zeros((2, 2, 3, 3))
    p[0, 0] = 1.0
    f = game.validate_correlation(Correlation(p))
    assert f.valid and f.synchronous

    q = p.copy()
    q[:, :, 1, 1] = 0.0
    q[0, 1, 1, 1] = 1.0
    f = game.validate_correlation(Correlation(q))
    assert f.valid and not f.synchronous

    r = p.copy()
    r[0, 0, 2, 1] = 0.5
    assert not game.validate_correlation(Correlation(r)).valid


def test_validate_shape_errors():
    with pytest.raises(DimensionError):
        Correlation(np.zeros((2, 3, 3, 3)))
    with pytest.raises(DimensionError):
        game.validate_correlation(Correlation(np.zeros((2, 2, 4, 4))), n=3, m=2)
    with pytest.raises(DimensionError):
        game.value(game.delta_game(), Correlation(np.zeros((3, 3, 3, 3))))


# Values below were computed with brute_value (explicit loops), then frozen.
@pytest.mark.parametrize(
    "assignment, expected",
    [((0, 0, 0), 1 / 2), ((0, 1, 1), 5 / 6), ((1, 1, 1), 1 / 2)],
)
def test_deterministic_values(assignment, expected):
    g = game.delta_game()
    p = game.deterministic_correlation(assignment)
    assert brute_value(g.rule, g.input_dist, p.p) == pytest.approx(expected, abs=1e-15)
    assert game.value(g, p) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "assignment, theta, beta, tilde",
    [((0, 0, 0), 1.0, 1.0, 0.5), ((0, 1, 1), 1 / 3, 0.0, 5 / 6), ((1, 1, 1), 0.0, 0.0, 0.5)],
)
def test_theta_points_of_deterministic(assignment, theta, beta, tilde):
    pt = game.theta_point_of(game.deterministic_correlation(assignment))
    assert (pt.theta, pt.beta, pt.theta_tilde) == pytest.approx((theta, beta, tilde), abs=1e-15)
    assert pt.theta_tilde == pytest.approx(0.5 + pt.theta - pt.beta, abs=1e-12)


def test_cyclic_mixture_keeps_theta_point():
    shifts = [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    p = sum(game.deterministic_correlation(a).p for a in shifts) / 3
    pt = game.theta_point_of(Correlation(p))
    assert (pt.theta, pt.beta, pt.theta_tilde) == pytest.approx((1 / 3, 0.0, 5 / 6), abs=1e-15)


def test_theta_point_rejects_nonsynchronous():
    p = np.zeros((2, 2, 3, 3))
    p[0, 1] = 1.0
    with pytest.raises(DomainError):
        game.theta_point_of(Correlation(p))


def test_all_deterministic_values_exact():
    g = game.delta_game()
    vals = []
    for a in itertools.product(range(2), repeat=3):
        exact = game.exact_value(g, a)
        pt = game.theta_point_of(game.deterministic_correlation(a))
        assert (exact * 6).denominator == 1
        assert float(exact) == pytest.approx(pt.theta_tilde, abs=1e-15)
        vals.append(exact)
    assert max(vals) == Fraction(5, 6) and min(vals) == Fraction(1, 2)


@st.composite
def correlations(draw):
    raw = np.array(draw(st.lists(st.floats(0.0, 1.0), min_size=36, max_size=36))).reshape(2, 2, 3, 3)
    raw = raw + 1e-3
    return Correlation(raw / raw.sum(axis=(0, 1)))


@settings(max_examples=200, deadline=None)
@given(correlations())
def test_value_in_unit_interval_and_matches_loops(p):
    g = game.delta_game()
    v = game.value(g, p)
    assert -1e-12 <= v <= 1 + 1e-12
    assert v == pytest.approx(brute_value(g.rule, g.input_dist, p.p), abs=1e-12)


def test_json_round_trip():
    p = game.deterministic_correlation((0, 1, 1))
    doc = json.loads(p.to_json())
    assert doc["n"] == 3 and doc["m"] == 2
    assert np.asarray(doc["p"]).shape == (2, 2, 3, 3)
    q = Correlation.from_json(p.to_json())
    assert np.array_equal(p.p, q.p)
    doc["n"] = 4
    with pytest.raises(DimensionError):
        Correlation.from_dict(doc)
