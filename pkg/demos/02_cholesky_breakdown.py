"""
Cholesky factor and where it breaks
===================================

``A = U^T U`` exists in exact arithmetic at every order, but the pivots shrink
so fast that any fixed precision eventually sees a non-positive pivot. The
breakdown order grows roughly linearly with the number of bits.
"""

import time

from dirichlet_recurrence import Rectangle, breakdown_order, cholesky, gram_matrix
from dirichlet_recurrence.factorize import suggested_precision

rect = Rectangle(0.6, 0.8, 1.0)

for bits in (53, 128, 256, 512, 1024):
    t0 = time.perf_counter()
    n_star = breakdown_order(rect, bits, 200)
    print(f"{bits:5d} bits: first failing pivot {n_star}  ({time.perf_counter() - t0:.2f} s)")

###############################################################################
# With enough bits the factor reconstructs ``A`` to the working precision.

N = 32
P = suggested_precision(N)
A = gram_matrix(rect, N, P)
U = cholesky(A)
print(f"N={N} at {P} bits: max |U^T U - A| = {float(U.residual(A)):.2e}")
print("last pivot:", float(U.diagonal()[-1]))
