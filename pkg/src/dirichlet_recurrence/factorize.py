"""Extended-precision Cholesky factors of the Gram family and the map u_K.

The factor is always taken in the natural order ``n = 1, 2, 3, ...``; the
orthonormal family ``e'_n`` is defined with respect to that order, so
pivoting would produce a different object. When a pivot is lost to rounding
the remedy is more precision.

Two scales are distinguished by ``UpperFactor.scale``:

``"A"``
    ``A = U^T U`` for the Gram truncation ``A``.
``"K"``
    ``2A = U_K^T U_K``; the Gram matrix of ``n^{-s}`` in ``L^2(K)`` is ``2A``,
    so ``U_K = sqrt(2) U`` and its ``(m, n)`` entry is ``<e'_m, e_n>``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _mp
from .errors import NotPositiveDefinite, SupportExceedsOrder
from .kernel import DEFAULT_PRECISION, GramColumns, gram_matrix


@dataclass(frozen=True)
class UpperFactor:
    """Upper-triangular factor with positive diagonal, ``entries[i][j]`` 0-based."""

    order: int
    precision: int
    scale: str
    entries: tuple = field(repr=False)

    @property
    def ctx(self):
        return _mp.context(self.precision)

    def entry(self, m, n):
        return self.entries[m - 1][n - 1]

    def diagonal(self):
        return [self.entries[i][i] for i in range(self.order)]

    def to_numpy(self, dtype=float):
        return np.array([[dtype(str(v)) if dtype is not float else float(v) for v in row]
                         for row in self.entries], dtype=dtype)

    def gram(self):
        """``U^T U`` at the working precision."""
        ctx = self.ctx
        N = self.order
        cols = [[self.entries[i][j] for i in range(j + 1)] for j in range(N)]
        out = [[None] * N for _ in range(N)]
        for i in range(N):
            for j in range(i, N):
                v = ctx.fdot(cols[i], cols[j][:i + 1])
                out[i][j] = out[j][i] = v
        return out

    def residual(self, source):
        """``max |U^T U - M|`` where ``M`` is ``A`` or ``2A`` as the scale requires.

        ``source`` is the :class:`GramTruncation` the factor was built from.
        """
        ctx = self.ctx
        mult = 2 if self.scale == "K" else 1
        rebuilt = self.gram()
        return max(abs(rebuilt[i][j] - mult * source.entries[i][j])
                   for i in range(self.order) for j in range(self.order))

    def leading(self, n):
        """The leading ``n x n`` block, itself an :class:`UpperFactor`."""
        return UpperFactor(n, self.precision, self.scale,
                           tuple(tuple(row[:n]) for row in self.entries[:n]))

    def scaled_to_k(self):
        if self.scale == "K":
            return self
        ctx = self.ctx
        r2 = ctx.sqrt(2)
        return UpperFactor(self.order, self.precision, "K",
                           tuple(tuple(r2 * v for v in row) for row in self.entries))


def reconstruction_bound(N, precision, max_abs):
    """Tolerance ``N^2 2^{6 - P} max|A|`` on ``max |U^T U - A|``."""
    return N * N * 2.0 ** (6 - precision) * float(max_abs)


def _pivot(ctx, diag, col, k, precision):
    p = diag - ctx.fdot(col, col)
    if p <= 0:
        raise NotPositiveDefinite(k + 1, p, precision)
    return ctx.sqrt(p)


def cholesky(A, variant="row"):
    """Cholesky factor ``A = U^T U`` of a :class:`GramTruncation`.

    Parameters
    ----------
    A : GramTruncation
        Source matrix; its precision is the working precision.
    variant : {"row", "column"}
        ``"row"`` completes one row of ``U`` per pivot, ``"column"`` borders
        one column at a time. Both compute the same unique factor.

    Raises
    ------
    NotPositiveDefinite
        At the first pivot that is not positive; ``pivot`` is 1-based.
    """
    ctx = _mp.context(A.precision)
    N = A.order
    a = A.entries
    if variant == "row":
        cols = [[] for _ in range(N)]
        for k in range(N):
            d = _pivot(ctx, a[k][k], cols[k], k, A.precision)
            cols[k].append(d)
            ck = cols[k][:k]
            for j in range(k + 1, N):
                cols[j].append((a[k][j] - ctx.fdot(ck, cols[j])) / d)
    elif variant == "column":
        cols = [_border(ctx, cols_so_far, [a[i][j] for i in range(j + 1)], A.precision)
                for j, cols_so_far in _growing(N)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _from_columns(ctx, cols, A.precision, "A")


def _growing(N):
    cols = []
    for j in range(N):
        yield j, cols


def _border(ctx, cols, column, precision):
    """Next column of ``U`` from the previous ones and ``a(1..j+1, j+1)``; appends it."""
    j = len(cols)
    new = []
    for i in range(j):
        new.append((column[i] - ctx.fdot(cols[i][:i], new)) / cols[i][i])
    new.append(_pivot(ctx, column[j], new, j, precision))
    cols.append(new)
    return new


def _from_columns(ctx, cols, precision, scale):
    N = len(cols)
    zero = ctx.zero
    rows = tuple(tuple(cols[j][i] if i <= j else zero for j in range(N)) for i in range(N))
    return UpperFactor(N, int(precision), scale, rows)


def breakdown_order(rect, precision, max_order):
    """First order at which the factor breaks down, or ``None`` up to ``max_order``.

    Borders one column at a time, generating only the Gram entries needed, so
    a breakdown at small order costs little regardless of ``max_order``.
    """
    gen = GramColumns(rect, precision)
    ctx = gen.ctx
    cols = []
    for n in range(1, max_order + 1):
        try:
            _border(ctx, cols, gen.column(n), precision)
        except NotPositiveDefinite as exc:
            return exc.pivot
    return None


def u_matrix(rect, N, precision=DEFAULT_PRECISION):
    """``U_K = sqrt(2) U`` at order ``N``."""
    return cholesky(gram_matrix(rect, N, precision)).scaled_to_k()


def u_matrix_auto(rect, N, precision=DEFAULT_PRECISION, max_precision=1 << 16):
    """:func:`u_matrix` retried at doubled precision until it succeeds."""
    while True:
        try:
            return u_matrix(rect, N, precision)
        except NotPositiveDefinite as exc:
            precision *= 2
            if precision > max_precision:
                raise exc


def _require_k(U):
    if U.scale != "K":
        raise ValueError("expected a factor with scale 'K' (use scaled_to_k())")


def apply_uk(U, x):
    """Coordinates ``u_K(x)`` of a finitely supported sequence.

    ``x`` is a :class:`~dirichlet_recurrence.characters.FiniteSequence` or a
    dense array indexed from 1. The result has length ``U.order``; its
    Euclidean norm is the ``L^2(K)`` norm of ``sum x(k) k^{-s}``.
    """
    _require_k(U)
    if hasattr(x, "to_dense"):
        if x.max_index > U.order:
            raise SupportExceedsOrder(x.max_index, U.order)
        dense = x.to_dense(U.order)
    else:
        dense = np.asarray(x, dtype=complex)
        nz = np.flatnonzero(dense)
        if len(nz) and nz[-1] + 1 > U.order:
            raise SupportExceedsOrder(int(nz[-1]) + 1, U.order)
        dense = np.pad(dense, (0, U.order - len(dense)))[:U.order]
    return _float_factor(U) @ dense


def _float_factor(U):
    # entries are bounded by sqrt(2 a(n, n)), so rounding to doubles is benign
    cache = _FLOAT_CACHE.get(id(U))
    if cache is None or cache[0] is not U:
        cache = (U, U.to_numpy())
        _FLOAT_CACHE[id(U)] = cache
    return cache[1]


_FLOAT_CACHE = {}


def orthonormal_coeffs(U, n):
    """Coefficients ``c_1..c_n`` with ``e'_n = sum_k c_k e_k``.

    Column ``n`` of ``U_K^{-1}`` by back-substitution at working precision;
    ``c_n = 1 / U_K(n, n) > 0``.
    """
    _require_k(U)
    if not 1 <= n <= U.order:
        raise ValueError(f"n must lie in 1..{U.order}")
    ctx = U.ctx
    u = U.entries
    c = [ctx.zero] * n
    c[n - 1] = 1 / u[n - 1][n - 1]
    for i in range(n - 2, -1, -1):
        c[i] = -ctx.fdot(u[i][i + 1:n], c[i + 1:n]) / u[i][i]
    return c


def orthonormal_function(U, n):
    """The function ``s -> e'_n(s)`` on complex arrays.

    Summed in extended precision since the coefficients grow quickly while
    ``e'_n`` stays of unit norm.
    """
    coeffs = np.array([np.longdouble(_mp.to_decimal(U.ctx, c, U.precision))
                       for c in orthonormal_coeffs(U, n)])
    logs = np.log(np.arange(1, n + 1, dtype=np.longdouble))

    def f(s):
        s = np.asarray(s, dtype=np.clongdouble)
        out = np.zeros(s.shape, dtype=np.clongdouble)
        for c, lk in zip(coeffs, logs):
            out += c * np.exp(-lk * s)
        return out.astype(complex)

    return f


def suggested_precision(N):
    """A working precision that comfortably factors order ``N``.

    Pivots of the Gram family shrink by roughly ``2^-13`` to ``2^-18`` per
    step over orders up to a few hundred on rectangles inside the strip.
    """
    return 64 + N * (6 + 2 * int(np.ceil(np.log2(N + 1))))
