"""Independent reference computations for the test-suite.

Nothing here imports the package's evaluation paths: sums are brute force,
characters are found by exhaustive search, eta uses repeated averaging.
"""

import itertools
from fractions import Fraction
from math import gcd

import numpy as np


def brute_characters(q):
    """All multiplicative maps units(q) -> roots of unity, by exhaustive search.

    Returned as a set of tuples of rotation numbers (``None`` off the units).
    """
    units = [k for k in range(q) if gcd(k, q) == 1]
    order = len(units)
    found = set()
    for choice in itertools.product(range(order), repeat=order):
        rot = dict(zip(units, (Fraction(c, order) for c in choice)))
        if rot[1 % q] != 0:
            continue
        if all((rot[a] + rot[b]) % 1 == rot[a * b % q] for a in units for b in units):
            found.add(tuple(rot.get(k) for k in range(q)))
    return found


def dirichlet_partial_sum(coeff_of, s, N):
    """``sum_{k<=N} c_k k^{-s}`` with ``coeff_of`` mapping an index array to coefficients."""
    k = np.arange(1, N + 1)
    c = coeff_of(k)
    return complex(np.sum(c * np.exp(-s * np.log(k.astype(float)))))


def partial_summation_tail(B, s, N):
    """Tail bound ``B N^{-sigma} (1 + |s| / sigma)`` for bounded partial sums."""
    return B * N ** -s.real * (1 + abs(s) / s.real)


def eta_by_averaging(s, terms=80, rounds=60):
    """Dirichlet eta by repeated averaging of consecutive partial sums."""
    k = np.arange(1, terms + 1)
    signs = np.where(k % 2 == 1, 1.0, -1.0)
    partial = np.cumsum(signs * np.exp(-s * np.log(k.astype(float))))
    for _ in range(rounds):
        partial = 0.5 * (partial[1:] + partial[:-1])
    return complex(partial[-1])


def gauss_legendre_rect(func, rect, n=40, panels=4):
    """Fixed tensor Gauss-Legendre rule on a ``panels x panels`` split of ``K``."""
    x, w = np.polynomial.legendre.leggauss(n)
    total = 0j
    s_edges = np.linspace(rect.alpha, rect.beta, panels + 1)
    t_edges = np.linspace(-rect.gamma, rect.gamma, panels + 1)
    for s0, s1 in zip(s_edges[:-1], s_edges[1:]):
        for t0, t1 in zip(t_edges[:-1], t_edges[1:]):
            sig = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * x
            tau = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * x
            S, T = np.meshgrid(sig, tau, indexing="ij")
            total += np.sum(np.outer(w, w) * func(S + 1j * T)) * 0.25 * (s1 - s0) * (t1 - t0)
    return total
