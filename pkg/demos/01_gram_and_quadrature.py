"""
Gram matrix of Dirichlet monomials
==================================

The monomials ``e_n(s) = n^{-s}`` span a space of analytic functions on a
rectangle ``K`` of the critical strip. Their pairwise inner products in
``L^2(K)`` have a closed form, checked here against direct quadrature.
"""

import numpy as np

from dirichlet_recurrence import Rectangle, gram_entry, gram_matrix
from dirichlet_recurrence.kernel import gram_matrix_float, inner_product, monomial

rect = Rectangle(0.6, 0.8, 1.0)

# closed form against two-dimensional quadrature
for m, n in [(1, 1), (2, 3), (5, 12)]:
    exact = 2 * float(gram_entry(rect, m, n))
    quad = inner_product(rect, monomial(m), monomial(n), tol=1e-12)
    print(f"<e_{m}, e_{n}>  closed {exact:.15f}  quadrature {quad.value.real:.15f}"
          f"  (est. error {quad.error:.1e})")

###############################################################################
# The matrix is symmetric positive definite, but so badly conditioned that
# double precision already loses its smallest eigenvalue at N=12: the
# computed value sits at rounding level and may even come out negative.

A = gram_matrix_float(rect, 12)
eig = np.linalg.eigvalsh(A)
print("smallest / largest eigenvalue at N=12:", eig[0] / eig[-1])

# the high-precision version carries the same entries to 256 bits
G = gram_matrix(rect, 4, precision=256)
print("a(2, 3) at 256 bits:", G.entry(2, 3))
