"""
Classical strategies against qubit strategies
=============================================

Classical players reach at most 5/6.  Three rank-one projections at
angles 60 degrees apart reach 7/8, and a seeded random search over qubit
strategies mixed with a classical block never beats the quantum edge.
"""

import numpy as np

from deltagame import lp, oracle

for pt in oracle.enumerate_deterministic():
    print(pt.assignment, "theta =", round(pt.point.theta, 4), "value =", pt.value)

###############################################################################
# Evenly spread qubit projections.

strategy = oracle.QubitStrategy((0.0, np.pi / 3, 2 * np.pi / 3))
point, value = oracle.qubit_value(strategy, 1.0)
print("qubit strategy:", point, "value", value)

###############################################################################
# Random search near a few theta values.  Below theta = 1/3 the edge needs
# mixtures of several classical assignments, which this family lacks, so
# the search falls short there by design.

for theta in (0.3, 0.4, 0.5, 0.6):
    best = oracle.random_search_max(theta, iterations=50_000, seed=42)
    print(f"theta={theta}: search {best:.5f}, edge {lp.f_t(theta).upper:.5f}")
