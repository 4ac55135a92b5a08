"""
Game value as a function of theta
=================================

Tabulate the lower and upper edges of the attainable value for the quantum
models and for the vector relaxation, then draw them on one figure.  The
two upper edges agree outside ``(1/3, 2/3)`` and at ``theta = 1/2``.
"""

import numpy as np

from deltagame import lp, vect

theta = np.linspace(0, 1, 301)
f_q = np.array([lp.f_t(t).upper for t in theta])
f_v = np.array([vect.f_vect(t).upper for t in theta])

print("largest value, quantum models:", f_q.max())
print("largest value, vector model:  ", f_v.max())
print("largest gap:", (f_v - f_q).max(), "at theta =", theta[np.argmax(f_v - f_q)])

###############################################################################
# Plot.  matplotlib is only needed for this part.

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

fig, ax = plt.subplots(figsize=(6, 6))
ax.plot(theta, np.full_like(theta, 0.5), color="black")
ax.plot(theta, f_q, color="black", label="q, qa, qc")
ax.plot(theta, f_v, color="blue", label="vect")
ax.set_xlim(0, 1.1)
ax.set_ylim(0.4, 1.0)
ax.set_xticks([0, 1 / 3, 1 / 2, 2 / 3, 1], ["0", "1/3", "1/2", "2/3", "1"])
ax.set_yticks([0.5, 0.7, 0.9])
ax.set_xlabel("theta")
ax.legend()
fig.savefig("value_curves.png", dpi=120)
print("wrote value_curves.png")
