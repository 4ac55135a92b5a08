"""
Tracial states on a finite-dimensional algebra
==============================================

The algebra ``C^8 + M_2`` carries three projections that realise every
quantum value of the game.  A tracial state is eight scalar weights plus
one weight on the 2x2 block.  Fixing ``theta`` and ``beta`` leaves two
free parameters, and the smallest feasible ``beta`` is a three-variable
linear program.
"""

import numpy as np

from deltagame import calgebra, game, lp

A, B, C = calgebra.universal_generators()
print("A B - B A on the block:\n", np.round(calgebra.commutator(A, B).block, 4))
print("A + B + C on the block:\n", np.round(calgebra.central_element().block, 4))

###############################################################################
# Solve the overlap program for a few values of theta.

for theta in (0.2, 0.4, 0.5, 0.6, 0.8):
    sol = lp.solve(lp.beta0_program(theta))
    print(f"theta={theta}: LP beta0={sol.objective_value:.6f}, closed form={lp.beta0_closed(theta):.6f}")

###############################################################################
# Turn the optimum at theta = 0.4 into a state and a correlation.

st, beta0 = calgebra.optimal_state(0.4)
print("scalar weights:", np.round(st.t, 4), "block weight:", st.s)
p = calgebra.correlation_from_state(st)
print("value:", game.value(game.delta_game(), p))

###############################################################################
# First-order perturbation: conjugating A by exp(i t H) with H = i[P, A]
# moves the overlap at rate tau(K* K) where K = [P, A].

an, nu = calgebra.perturbation_derivative(A, B, calgebra.TracialState.pure_block())
print(f"derivative: analytic {an:.8f}, finite difference {nu:.8f}")
