"""Evaluation of L*_chi on Re(s) > 0 and of its shifted L^2(K) distance.

``L*_chi`` is the alternating series ``sum (-1)^k k^{-s} = -eta(s)`` when
``chi`` is principal and ``L(s, chi)`` otherwise. Both are entire on the
half-plane, so no pole handling is needed at ``s = 1``:

* principal: Borwein's accelerated alternating sum for ``eta``, never
  dividing by ``1 - 2^{1-s}``;
* non-principal: Euler-Maclaurin on ``sum_a chi(a) zeta(s, a/q)``, with the
  ``1/(s-1)`` parts removed exactly because ``sum_a chi(a) = 0``.
"""

from functools import lru_cache
from math import factorial

import numpy as np
from scipy.special import bernoulli

from .errors import EvaluationFailure, PoleAtOne
from .quadrature import DEFAULT_ORDER, integrate_rectangle

_EPS = np.finfo(float).eps
_MAX_BLOCKS = 1 << 14
_MAX_ETA_TERMS = 300


@lru_cache(maxsize=None)
def _em_coefficients(p):
    """``B_{2j} / (2j)!`` for ``j = 1..p+1``."""
    b = bernoulli(2 * p + 2)
    return np.array([b[2 * j] / factorial(2 * j) for j in range(1, p + 2)])


def _em_tail(s, x, p):
    """Euler-Maclaurin correction at cut point ``x`` and its remainder bound.

    Returns ``(sum_{j=1}^p B_2j/(2j)! (s)_{2j-1} x^{-s-2j+1}, bound)`` where
    ``(s)_r`` is the rising factorial.
    """
    coef = _em_coefficients(p)
    lx = np.log(x)
    term_pow = np.exp(-(s + 1) * lx)  # x^{-s-1}
    rising = s
    total = np.zeros_like(s)
    for j in range(1, p + 1):
        total = total + coef[j - 1] * rising * term_pow
        rising = rising * (s + 2 * j - 1) * (s + 2 * j)
        term_pow = term_pow / (x * x)
    nxt = np.abs(coef[p] * rising * term_pow)
    bound = nxt * np.abs(s + 2 * p + 1) / (s.real + 2 * p + 1)
    return total, bound


def hurwitz_zeta(s, a, terms=32, bernoulli_order=12):
    """Hurwitz zeta ``sum_{k>=0} (k + a)^{-s}`` by Euler-Maclaurin.

    Parameters
    ----------
    s : complex or array of complex
        Evaluation points, ``s != 1``.
    a : float
        Shift in ``(0, 1]``.
    terms : int
        Number of terms summed directly before the cut.
    bernoulli_order : int
        Number of Bernoulli corrections.

    Returns
    -------
    value, error : ndarray
        The sum and a bound on the truncation error of the expansion.
    """
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    s = np.asarray(s, dtype=complex)
    if np.any(np.abs(s - 1) < 1e-14):
        raise PoleAtOne("hurwitz zeta has a pole at s = 1")
    total = np.zeros_like(s)
    for k in range(terms):
        total = total + np.exp(-s * np.log(k + a))
    x = terms + a
    lx = np.log(x)
    total = total + np.exp((1 - s) * lx) / (s - 1) + 0.5 * np.exp(-s * lx)
    corr, bound = _em_tail(s, x, bernoulli_order)
    return total + corr, bound


def _expm1_ratio(z):
    """``expm1(z) / z`` with the limit 1 at ``z = 0``."""
    out = np.ones_like(z)
    nz = z != 0
    out[nz] = np.expm1(z[nz]) / z[nz]
    return out


def _lfunction_em(chi, s, blocks, p):
    """``L(s, chi)`` for non-principal ``chi`` with ``blocks * q`` direct terms."""
    q = chi.modulus
    n = np.arange(1, blocks * q + 1)
    coeff = chi.values(n)
    keep = coeff != 0
    logs = np.log(n[keep].astype(float))
    coeff = coeff[keep]
    head = np.zeros_like(s)
    for c, ln in zip(coeff, logs):
        head = head + c * np.exp(-s * ln)
    tail = np.zeros_like(s)
    bound = np.zeros(s.shape)
    q_pow = np.exp(-s * np.log(q))
    for a in range(1, q + 1):
        c = chi(a)
        if c == 0:
            continue
        x = blocks + a / q
        lx = np.log(x)
        # (x^{1-s} - 1)/(s - 1); the constant drops out since sum chi(a) = 0
        pole_part = -lx * _expm1_ratio((1 - s) * lx)
        corr, b = _em_tail(s, x, p)
        tail = tail + c * (pole_part + 0.5 * np.exp(-s * lx) + corr)
        bound = bound + b
    bound = bound * np.abs(q_pow)
    rounding = 8 * _EPS * (np.abs(head) + np.sum(np.abs(coeff)) + 1.0)
    return head + q_pow * tail, bound + rounding


@lru_cache(maxsize=None)
def _borwein_weights(n):
    """``(d_k - d_n) / d_n`` for ``k = 0..n-1`` with ``d_k`` exact integers."""
    d = []
    acc = 0
    for i in range(n + 1):
        acc += factorial(n + i - 1) * 4 ** i * n // (factorial(n - i) * factorial(2 * i))
        d.append(acc)
    dn = d[n]
    return np.array([(d[k] - dn) / dn for k in range(n)])


def eta_error_bound(s, n):
    """Borwein's bound on the error of the ``n``-term accelerated eta sum."""
    tau = np.abs(np.imag(s))
    return 3.0 * (1 + 2 * tau) * np.exp(np.pi * tau / 2) / (3 + np.sqrt(8)) ** n


def alternating_eta(s, tol=1e-12):
    """Dirichlet eta ``sum_{k>=1} (-1)^{k-1} k^{-s}`` for ``Re(s) > 0``.

    The number of accelerated terms is the smallest meeting ``tol`` under
    :func:`eta_error_bound`.
    """
    s = np.asarray(s, dtype=complex)
    tau_max = float(np.max(np.abs(s.imag), initial=0.0))
    n = 1
    while eta_error_bound(1j * tau_max, n) > tol:
        n += 1
        if n > _MAX_ETA_TERMS:
            raise EvaluationFailure(f"eta needs more than {_MAX_ETA_TERMS} terms "
                                    f"for tol {tol} at |Im s| = {tau_max}")
    w = _borwein_weights(n)
    total = np.zeros_like(s)
    sign = 1.0
    for k in range(n):
        total = total + sign * w[k] * np.exp(-s * np.log(k + 1))
        sign = -sign
    return -total


def lstar(chi, s, tol=1e-12):
    """``L*_chi(s)`` to absolute error ``tol`` on ``Re(s) > 0``.

    Raises
    ------
    EvaluationFailure
        If the error budget cannot be met.
    """
    scalar = np.ndim(s) == 0
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    if np.any(s.real <= 0):
        raise ValueError("lstar is evaluated on Re(s) > 0 only")
    if chi.principal:
        out = -alternating_eta(s, tol)
    else:
        blocks, p = max(2, 64 // chi.modulus), 12
        while True:
            out, err = _lfunction_em(chi, s, blocks, p)
            worst = float(np.max(err))
            if worst <= tol:
                break
            if blocks >= _MAX_BLOCKS or worst > 1e6 * tol and 8 * _EPS * blocks > tol:
                raise EvaluationFailure(
                    f"L(s, chi) error {worst:.3e} above tol {tol:.3e} for q={chi.modulus}")
            blocks *= 2
    return complex(out[0]) if scalar else out


def lstar_l2_distance(rect, chi, t, tol=1e-6, order=DEFAULT_ORDER):
    """``|| L*(s - it) - L*(s) ||`` in ``L^2(K)`` by adaptive quadrature.

    Half of ``tol`` goes to the quadrature (on the squared norm, through
    ``|sqrt(a) - sqrt(b)| <= sqrt(|a - b|)``) and half to pointwise evaluation.
    """
    if t == 0:
        return 0.0
    point_tol = tol / (4.0 * np.sqrt(rect.area))

    def integrand(sigma, tau):
        s = sigma + 1j * tau
        d = lstar(chi, s - 1j * t, point_tol) - lstar(chi, s, point_tol)
        return d.real ** 2 + d.imag ** 2

    res = integrate_rectangle(integrand, rect.sigma_range, rect.tau_range,
                              (tol / 2) ** 2, order=order)
    return float(np.sqrt(max(res.value.real, 0.0)))
