"""
Characters and the pole-free L-function
=======================================

Characters modulo ``q`` are built from discrete logarithms. For the principal
character the pole at ``s = 1`` is removed by switching to the alternating
series, so ``L*`` is analytic on the whole strip.
"""

import numpy as np

from dirichlet_recurrence import Rectangle, characters_mod, lstar, lstar_l2_distance

for chi in characters_mod(5):
    vals = [chi(k) for k in range(5)]
    print(chi.index, "real" if chi.is_real else "complex",
          np.round(vals, 3).tolist())

chi4 = characters_mod(4)[1]
print("L(2, chi_4) =", lstar(chi4, 2.0).real, "(Catalan's constant)")
print("L*(1) for the principal character =", lstar(characters_mod(1)[0], 1.0).real,
      "(-log 2)")

###############################################################################
# The vertical-shift distance ``||L*(s + it) - L*(s)||`` on ``K`` is the
# quantity the recurrence scan approximates with finite Dirichlet sums.

rect = Rectangle(0.6, 0.8, 1.0)
for t in (0.5, 1.0, 2.0):
    print(f"t={t}: ||L*(. - it) - L*|| = {lstar_l2_distance(rect, chi4, t, tol=1e-6):.6f}")
