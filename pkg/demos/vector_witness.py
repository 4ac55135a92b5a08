"""
Vector strategies from a Gram matrix
====================================

At a feasible ``(theta, beta)`` the 7x7 Gram matrix is positive
semidefinite.  Factoring it gives one vector per projection, and inner
products of those vectors give a synchronous correlation.
"""

import numpy as np

from deltagame import game, linalg, vect

theta = 0.4
beta, beta_max = vect.beta_range_closed(theta)
print(f"feasible overlaps at theta={theta}: [{beta:.4f}, {beta_max:.4f}]")

G = vect.build_gram(theta, beta)
print("Gram matrix:\n", np.round(G, 4))
print("smallest eigenvalue:", linalg.eigen_sym(G)[0][0])

###############################################################################
# The bisection search recovers the same lower end from the PSD test alone.

print("bisection:", vect.beta_min_numeric(theta))

###############################################################################
# Build the witness and score it.

w = vect.vect_witness(theta, beta)
print("max |V V^T - G|:", np.abs(w.vectors @ w.vectors.T - G).max())
print("value:", game.value(game.delta_game(), w.correlation))
print("f_vect upper edge:", vect.f_vect(theta).upper)

###############################################################################
# Slightly below the lower end the matrix stops being PSD.

print("feasible at beta - 1e-4?", vect.is_feasible(theta, beta - 1e-4))
