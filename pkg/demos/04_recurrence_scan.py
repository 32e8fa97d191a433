"""
Near returns of a twisted sequence
==================================

The sequence ``chi(k) k^{it}`` is mapped into the Hilbert space by the factor
``U_K``. Its distance to the starting point, scanned over ``t``, shows how
often the shifted L-function comes back close to itself.
"""

import numpy as np

from dirichlet_recurrence import Rectangle, characters_mod, density_scan, stabilized_distance

rect = Rectangle(0.6, 0.8, 1.0)
chi = characters_mod(4)[1]

d, n_used = stabilized_distance(rect, chi, 1.0)
print(f"D(1) stabilizes to {d:.6f} at N={n_used}")

###############################################################################
# A modest scan. The ladder is relative to the median distance.

res = density_scan(rect, chi, N=1024, T=50, h=0.05,
                   epsilons=[0.1, 0.25, 0.5, 1.0, 2.0], relative=True)
print(f"median D = {res.median_distance:.4f}, max D = {res.distances.max():.4f}")
for e, dens, run in zip(res.epsilons, res.densities, res.longest_runs):
    print(f"eps {e:.4f}: density {dens:.4f}, longest run {run} steps")

# the closest return away from the origin
away = np.abs(res.grid) > 5.0
i = np.argmin(np.where(away, res.distances, np.inf))
print(f"closest return for |t| > 5: t = {res.grid[i]:.2f}, D = {res.distances[i]:.4f}")
