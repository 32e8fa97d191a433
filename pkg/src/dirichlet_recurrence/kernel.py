"""Gram entries of the monomials ``n^{-s}`` over a rectangle in the critical strip.

For ``K = [alpha, beta] x [-gamma, gamma]`` the inner product of ``m^{-s}``
and ``n^{-s}`` in ``L^2(K)`` separates into a real-part integral and an
imaginary-part integral,

    <e_m, e_n> = 2 a(m, n),
    a(m, n) = ((mn)^-alpha - (mn)^-beta) / log(mn) * sin(gamma log(m/n)) / log(m/n),

with the removable singularities filled by ``beta - alpha`` and ``gamma``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _mp
from .errors import ConfigError
from .quadrature import DEFAULT_ORDER, integrate_rectangle

DEFAULT_PRECISION = 256


@dataclass(frozen=True)
class Rectangle:
    """The compact ``alpha <= Re s <= beta, |Im s| <= gamma`` inside the strip."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not 0.5 < self.alpha < self.beta < 1.0:
            raise ConfigError(
                f"need 1/2 < alpha < beta < 1, got alpha={self.alpha}, beta={self.beta}"
            )
        if not self.gamma > 0:
            raise ConfigError(f"need gamma > 0, got {self.gamma}")

    @property
    def area(self):
        return (self.beta - self.alpha) * 2.0 * self.gamma

    @property
    def sigma_range(self):
        return (self.alpha, self.beta)

    @property
    def tau_range(self):
        return (-self.gamma, self.gamma)

    def mp_params(self, ctx):
        return (_mp.to_mpf(ctx, self.alpha), _mp.to_mpf(ctx, self.beta),
                _mp.to_mpf(ctx, self.gamma))

    def as_dict(self):
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}


@dataclass(frozen=True)
class GramTruncation:
    """Leading ``order x order`` block of the Gram family at ``precision`` bits.

    ``entries[i][j]`` holds ``a(i + 1, j + 1)``; the lower triangle shares
    objects with the upper one, so symmetry is exact.
    """

    rect: Rectangle
    order: int
    precision: int
    entries: tuple = field(repr=False)

    def entry(self, m, n):
        """1-based access, mirroring the usual matrix notation."""
        return self.entries[m - 1][n - 1]

    def to_numpy(self):
        return np.array([[float(v) for v in row] for row in self.entries])

    def max_abs(self):
        return max(abs(v) for row in self.entries for v in row)


def decay_factor(L, alpha, beta, precision=DEFAULT_PRECISION):
    """``(exp(-alpha L) - exp(-beta L)) / L`` with value ``beta - alpha`` at 0."""
    ctx = _mp.context(precision)
    L = _mp.to_mpf(ctx, L)
    a = _mp.to_mpf(ctx, alpha)
    b = _mp.to_mpf(ctx, beta)
    return _decay(ctx, L, a, b)


def sinc_factor(x, gamma, precision=DEFAULT_PRECISION):
    """``sin(gamma x) / x`` with value ``gamma`` at 0."""
    ctx = _mp.context(precision)
    return _sinc(ctx, _mp.to_mpf(ctx, x), _mp.to_mpf(ctx, gamma))


def _decay(ctx, L, a, b):
    if not L:
        return b - a
    return -ctx.exp(-a * L) * ctx.expm1((a - b) * L) / L


def _sinc(ctx, x, g):
    if not x:
        return +g
    y = g * x
    if abs(y) < ctx.ldexp(1, -ctx.prec // 4):
        y2 = y * y
        return g * (1 - y2 / 6 * (1 - y2 / 20 * (1 - y2 / 42)))
    return ctx.sin(y) / x


class _IndexCache:
    """Per-index logarithms and powers shared by all entries of a row."""

    def __init__(self, ctx, a):
        self.ctx = ctx
        self.a = a
        self.logs = {}
        self.powers = {}

    def get(self, k):
        if k not in self.logs:
            lk = self.ctx.log(k)
            self.logs[k] = lk
            self.powers[k] = self.ctx.exp(-self.a * lk)
        return self.logs[k], self.powers[k]


def _entry(ctx, cache, a, b, g, m, n):
    lm, pm = cache.get(m)
    ln, pn = cache.get(n)
    L = lm + ln
    if L:
        first = -pm * pn * ctx.expm1((a - b) * L) / L
    else:
        first = b - a
    x = ctx.log1p(ctx.mpf(m - n) / n)
    return first * _sinc(ctx, x, g)


def gram_entry(rect, m, n, precision=DEFAULT_PRECISION):
    """Entry ``a(m, n)`` of the Gram family, as an mpf at ``precision`` bits.

    The entry is symmetric in ``(m, n)`` bit for bit: the arguments are put
    in a canonical order before evaluation.
    """
    if m < 1 or n < 1:
        raise ValueError("indices start at 1")
    ctx = _mp.context(precision)
    a, b, g = rect.mp_params(ctx)
    m, n = min(m, n), max(m, n)
    return _entry(ctx, _IndexCache(ctx, a), a, b, g, m, n)


def gram_matrix(rect, N, precision=DEFAULT_PRECISION):
    if N < 1:
        raise ValueError("N must be positive")
    ctx = _mp.context(precision)
    a, b, g = rect.mp_params(ctx)
    cache = _IndexCache(ctx, a)
    rows = [[None] * N for _ in range(N)]
    for m in range(1, N + 1):
        for n in range(m, N + 1):
            v = _entry(ctx, cache, a, b, g, m, n)
            rows[m - 1][n - 1] = v
            rows[n - 1][m - 1] = v
    return GramTruncation(rect, N, int(precision), tuple(tuple(r) for r in rows))


class GramColumns:
    """Lazy column access to the Gram family, for bordered factorization.

    ``column(n)`` returns ``a(1, n), ..., a(n, n)`` and is identical to the
    corresponding slice of :func:`gram_matrix`.
    """

    def __init__(self, rect, precision=DEFAULT_PRECISION):
        self.rect = rect
        self.precision = int(precision)
        self.ctx = _mp.context(precision)
        self._params = rect.mp_params(self.ctx)
        self._cache = _IndexCache(self.ctx, self._params[0])

    def column(self, n):
        a, b, g = self._params
        return [_entry(self.ctx, self._cache, a, b, g, m, n) for m in range(1, n + 1)]


def gram_block(rect, rows, cols):
    """Double-precision entries ``a(m, n)`` for index arrays ``rows x cols``.

    This is the fast path for quadratic forms at large order; ``rows`` and
    ``cols`` are 1-based integer arrays.
    """
    m = np.asarray(rows, dtype=float)[:, None]
    n = np.asarray(cols, dtype=float)[None, :]
    a, b, g = rect.alpha, rect.beta, rect.gamma
    S = np.log(m) + np.log(n)
    pa = np.outer(m[:, 0] ** -a, n[0] ** -a)
    with np.errstate(invalid="ignore", divide="ignore"):
        first = np.where(S == 0.0, b - a, -pa * np.expm1((a - b) * S) / S)
    # |m - n| / min(m, n) keeps the block exactly symmetric; sinc is even
    x = np.log1p(np.abs(m - n) / np.minimum(m, n))
    second = g * np.sinc(g * x / np.pi)
    return first * second


def gram_matrix_float(rect, N):
    idx = np.arange(1, N + 1)
    G = gram_block(rect, idx, idx)
    # mirror the upper triangle so symmetry is exact
    iu = np.triu_indices(N, 1)
    G.T[iu] = G[iu]
    return G


def monomial(n):
    """The function ``s -> n^{-s}`` on complex arrays."""
    log_n = float(np.log(n))
    return lambda s: np.exp(-log_n * np.asarray(s))


def dirichlet_polynomial(indices, coefficients):
    """The function ``s -> sum_k c_k k^{-s}`` for a finite coefficient list."""
    logs = np.log(np.asarray(indices, dtype=float))
    coefficients = np.asarray(coefficients, dtype=complex)

    def f(s):
        s = np.asarray(s, dtype=complex)
        out = np.zeros(s.shape, dtype=complex)
        for lk, c in zip(logs, coefficients):
            out += c * np.exp(-lk * s)
        return out

    return f


def inner_product(rect, f, g, tol=1e-12, order=DEFAULT_ORDER):
    """``<f, g>`` in ``L^2(K)``, conjugate-linear in ``f``.

    ``f`` and ``g`` take complex arrays ``s = sigma + i tau``. Returns a
    :class:`~dirichlet_recurrence.quadrature.QuadResult` whose ``value`` is
    the integral and ``error`` its estimate.
    """

    def integrand(sigma, tau):
        s = sigma + 1j * tau
        return np.conj(f(s)) * g(s)

    return integrate_rectangle(integrand, rect.sigma_range, rect.tau_range, tol,
                               order=order)


def norm_squared(rect, f, tol=1e-12, order=DEFAULT_ORDER):
    """``||f||^2`` in ``L^2(K)``; the integrand is real and nonnegative."""

    def integrand(sigma, tau):
        v = f(sigma + 1j * tau)
        return v.real ** 2 + v.imag ** 2

    return integrate_rectangle(integrand, rect.sigma_range, rect.tau_range, tol,
                               order=order)
