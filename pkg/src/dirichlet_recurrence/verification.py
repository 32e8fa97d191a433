"""Oracle checks tying the closed forms, factors and L-values together.

Each check compares two independently computed quantities and returns a
:class:`Check`; ``run_all`` is what ``dirichlet-recurrence verify`` runs.
"""

from dataclasses import dataclass

import numpy as np

from .characters import FiniteSequence
from .factorize import apply_uk, orthonormal_function, u_matrix
from .kernel import gram_entry, inner_product, monomial, norm_squared
from .lfunc import lstar_l2_distance
from .recurrence import stabilized_distance


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    worst: float
    limit: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: worst {self.worst:.3e} (limit {self.limit:.1e})"


def gram_identity(rect, order=8, tol=1e-12, rel=1e-9):
    """Quadrature of ``<e_m, e_n>`` against ``2 a(m, n)``."""
    worst = 0.0
    for m in range(1, order + 1):
        for n in range(m, order + 1):
            exact = 2 * float(gram_entry(rect, m, n))
            q = inner_product(rect, monomial(m), monomial(n), tol).value
            worst = max(worst, abs(q - exact) / abs(exact))
    return Check("gram identity", worst <= rel, worst, rel)


def parseval(rect, U, samples=20, support=None, tol=1e-12, rel=1e-8, seed=0):
    """``||u_K(x)||^2`` against the quadrature of ``||f_x||^2``."""
    rng = np.random.default_rng(seed)
    support = support or U.order
    worst = 0.0
    for _ in range(samples):
        radius = np.sqrt(rng.uniform(size=support))
        coeffs = radius * np.exp(2j * np.pi * rng.uniform(size=support))
        x = FiniteSequence.from_dense(coeffs)
        lhs = float(np.sum(np.abs(apply_uk(U, x)) ** 2))
        rhs = norm_squared(rect, x.as_function(), tol).value.real
        worst = max(worst, abs(lhs - rhs) / rhs)
    return Check("parseval", worst <= rel, worst, rel)


def orthonormality(rect, U, order=8, tol=1e-9, limit=1e-6):
    funcs = [orthonormal_function(U, n) for n in range(1, order + 1)]
    worst = 0.0
    for m in range(order):
        for n in range(m, order):
            q = inner_product(rect, funcs[m], funcs[n], tol).value
            worst = max(worst, abs(q - (m == n)))
    return Check("orthonormality", worst <= limit, worst, limit)


def proof_identity(rect, chi, ts=(0.5, 1.0, 2.0), rel_tol=1e-3, quad_tol=1e-4,
                   limit=2e-3, N0=256):
    """Stabilized ``D(t)`` against ``||L*(s - it) - L*(s)||`` in ``L^2(K)``."""
    worst = 0.0
    for t in ts:
        d, _ = stabilized_distance(rect, chi, t, N0=N0, rel_tol=rel_tol)
        o = lstar_l2_distance(rect, chi, t, quad_tol)
        worst = max(worst, abs(d - o))
    return Check(f"distance vs L* (q={chi.modulus}, index {chi.index})",
                 worst <= limit, worst, limit)


def run_all(rect, chi, precision=256, order=8):
    U = u_matrix(rect, max(order, 16), precision)
    return [
        gram_identity(rect, order),
        parseval(rect, U),
        orthonormality(rect, U, order=min(order, 8)),
        proof_identity(rect, chi, ts=(1.0,)),
    ]
