"""
A small simplex solver
======================

The solver takes ``min c.x`` subject to ``A x >= b`` and ``x >= 0``, runs
two phases with Bland's rule and reports dual multipliers.  Here it is on
a textbook diet problem and on a degenerate program.
"""

import numpy as np

from deltagame import lp

prog = lp.LinearProgram(
    c=[2.0, 3.0],
    A=[[1.0, 2.0], [3.0, 1.0], [1.0, 1.0]],
    b=[4.0, 6.0, 3.0],
)
sol = lp.solve(prog)
print(sol.status, sol.x, sol.objective_value, "pivots:", sol.iterations)
print("duals:", np.round(sol.dual, 6))
print("certificate residuals:", lp.check_optimality(prog, sol))

###############################################################################
# Degenerate vertex: many constraints meet at the origin.

deg = lp.LinearProgram(c=[1, 1], A=[[1, 1], [1, 2], [2, 1], [1, 3]], b=[0, 0, 0, 0])
print(lp.solve(deg).status)

###############################################################################
# Infeasible and unbounded programs.

print(lp.solve(lp.LinearProgram(c=[1], A=[[1], [-1]], b=[2, -1])).status)
print(lp.solve(lp.LinearProgram(c=[-1, 0], A=[[1, -1]], b=[0])).status)
