"""Near-return distances of x_chi(t) under u_K and their empirical density.

``D_N(t) = || u_K(x_chi(t) - x_chi(0)) ||_2`` restricted to indices ``1..N``.
Two routes compute it: through the Cholesky factor (``"factor"``), or as the
quadratic form ``sqrt(v^H G v)`` with ``G = 2A`` in double precision
(``"quadratic-form"``), which needs no factorization and scales to large N.
"""

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .characters import TwistedSequence, difference_vector, unimodular
from .errors import ConfigError, StabilizationFailure
from .factorize import apply_uk, suggested_precision, u_matrix
from .kernel import DEFAULT_PRECISION, Rectangle, gram_block, gram_matrix_float

METHODS = ("factor", "quadratic-form")
THREADS_ENV = "DIRICHLET_RECURRENCE_THREADS"
_BLOCK = 1024
_CACHE_LIMIT = 4096


def _pair_sum(G, Vl, Vr):
    """``Re(Vl^H G Vr)`` column by column, for real ``G``.

    ``Vl`` and ``Vr`` are contiguous real arrays ``[Re | Im]`` of width ``2B``.
    """
    B = Vr.shape[1] // 2
    prod = Vl * (G @ Vr)
    return prod[:, :B].sum(axis=0) + prod[:, B:].sum(axis=0)


def quadratic_form(rect, V, rows=None, cols=None, G=None):
    """``Re(v_rows^H (2A)[rows, cols] v_cols)`` for each column ``v`` of ``V``.

    ``rows`` and ``cols`` are ``(start, stop)`` 0-based index ranges and
    default to the whole vector. ``G`` may supply a cached ``2A``.
    """
    V = np.asarray(V, dtype=complex)
    single = V.ndim == 1
    if single:
        V = V[:, None]
    r0, r1 = rows or (0, V.shape[0])
    c0, c1 = cols or (0, V.shape[0])
    # strided .real/.imag views would keep the product off BLAS
    W = np.ascontiguousarray(np.concatenate([V.real, V.imag], axis=1))
    total = np.zeros(V.shape[1])
    col_idx = np.arange(c0 + 1, c1 + 1)
    for b0 in range(r0, r1, _BLOCK):
        b1 = min(b0 + _BLOCK, r1)
        if G is not None:
            Gb = G[b0:b1, c0:c1]
        else:
            Gb = 2.0 * gram_block(rect, np.arange(b0 + 1, b1 + 1), col_idx)
        total += _pair_sum(Gb, W[b0:b1], W[c0:c1])
    return total[0] if single else total


def _norm_from_square(sq):
    return np.sqrt(np.maximum(sq, 0.0))


def quadratic_form_distance(rect, chi, t, N):
    v = difference_vector(chi, t, N)
    return float(_norm_from_square(quadratic_form(rect, v)))


def distance(rect, chi, t, N, method="quadratic-form", factor=None,
             precision=DEFAULT_PRECISION):
    """``D_N(t)`` by either route.

    Parameters
    ----------
    method : {"quadratic-form", "factor"}
    factor : UpperFactor, optional
        A ``U_K`` of order at least ``N``; its leading block is used. Built
        at ``precision`` bits when omitted (factor method only).

    Raises
    ------
    NotPositiveDefinite
        If the factor method has to factor at insufficient precision.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if method == "quadratic-form":
        return quadratic_form_distance(rect, chi, t, N)
    if method != "factor":
        raise ValueError(f"method must be one of {METHODS}")
    if factor is None:
        factor = u_matrix(rect, N, precision)
    elif factor.order > N:
        factor = factor.leading(N)
    elif factor.order < N:
        raise ValueError(f"factor order {factor.order} below N={N}")
    v = difference_vector(chi, t, N)
    return float(np.linalg.norm(apply_uk(factor, v)))


def stabilized_distance(rect, chi, t, N0=256, rel_tol=1e-3, N_max=1 << 15, floor=1e-12):
    """Double ``N`` until ``|D_2N - D_N| <= rel_tol * max(D_2N, floor)``.

    Returns ``(value, N_used)`` where ``value = D_{N_used}``. At ``t = 0``
    every truncation is exactly zero and ``(0.0, N0)`` is returned.

    Each doubling reuses the previous squared norm and evaluates only the
    new blocks of the Gram matrix.

    Raises
    ------
    StabilizationFailure
        When doubling past ``N_max`` would be required.
    """
    if N0 < 1 or rel_tol <= 0:
        raise ValueError("need N0 >= 1 and rel_tol > 0")
    if t == 0:
        return 0.0, N0
    N = N0
    v = difference_vector(chi, t, N_max if N_max >= N0 else N0)
    sq = quadratic_form(rect, v[:N])
    prev = float(_norm_from_square(sq))
    while True:
        N2 = 2 * N
        if N2 > N_max:
            raise StabilizationFailure(None, prev, N)
        w = v[:N2]
        sq = (sq + 2.0 * quadratic_form(rect, w, rows=(0, N), cols=(N, N2))
              + quadratic_form(rect, w, rows=(N, N2), cols=(N, N2)))
        cur = float(_norm_from_square(sq))
        if abs(cur - prev) <= rel_tol * max(cur, floor):
            return cur, N2
        prev, N = cur, N2


def partial_sum_bound(chi):
    """Sup of ``|sum_{k<=x} c_k|`` for the ``t = 0`` coefficients ``c_k``."""
    if chi.principal:
        return 1.0
    vals = chi.values(np.arange(1, chi.modulus + 1))
    return float(np.max(np.abs(np.cumsum(vals))))


def truncation_tail_bound(rect, chi, t, N):
    """Bound on ``|D(t) - D_N(t)|`` by partial summation.

    With partial sums of the ``t = 0`` coefficients bounded by ``B``, the
    tail ``sum_{k>N} c_k k^{-w}`` is at most ``B N^{-Re w} (1 + |w| / Re w)``.
    Applied at ``w = s - it`` and ``w = s`` and integrated over ``K``.
    """
    B = partial_sum_bound(chi)
    a, b, g = rect.alpha, rect.beta, rect.gamma
    shifted = np.hypot(b, g + abs(t))
    plain = np.hypot(b, g)
    sup = B * N ** -a * ((1 + shifted / a) + (1 + plain / a))
    return float(sup * np.sqrt(rect.area))


def _longest_run(mask):
    best = run = 0
    for flag in mask:
        run = run + 1 if flag else 0
        best = max(best, run)
    return best


def resolve_threads(threads=None):
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return max(1, int(threads or 1))


def scan_grid(T, h):
    """The arithmetic grid ``-T, -T + h, ..., T`` (``T`` included when ``2T/h`` is whole)."""
    count = int(np.floor(2 * T / h + 1e-9)) + 1
    return -T + h * np.arange(count)


def validate_scan(T, h, epsilons):
    if not T > 0:
        raise ConfigError("T must be positive")
    if not 0 < h <= T:
        raise ConfigError("need 0 < h <= T")
    eps = np.asarray(epsilons, dtype=float)
    if eps.ndim != 1 or len(eps) == 0:
        raise ConfigError("epsilon ladder must be a non-empty list")
    if np.any(eps <= 0) or np.any(np.diff(eps) <= 0):
        raise ConfigError("epsilons must be positive and strictly increasing")
    return eps


@dataclass
class ScanResult:
    """Distances on a symmetric grid and the fraction of near returns per epsilon."""

    rect: Rectangle
    modulus: int
    char_index: int
    order: int
    T: float
    h: float
    grid: np.ndarray = field(repr=False)
    distances: np.ndarray = field(repr=False)
    epsilons: np.ndarray
    densities: np.ndarray
    longest_runs: np.ndarray
    median_distance: float
    stabilization: dict = field(default_factory=dict)
    spot_checks: dict = field(default_factory=dict)
    tail_bound: float = float("nan")

    def check_invariants(self):
        d = self.densities
        assert np.all((d >= 0) & (d <= 1)), "density outside [0, 1]"
        assert np.all(np.diff(d) >= 0), "densities not monotone in epsilon"
        assert np.all(self.distances >= 0), "negative distance"
        zero = np.flatnonzero(self.grid == 0.0)
        assert np.all(self.distances[zero] == 0.0), "nonzero distance at t = 0"

    def to_dict(self):
        return {
            "rect": self.rect.as_dict(),
            "modulus": self.modulus,
            "char_index": self.char_index,
            "order": self.order,
            "T": self.T,
            "h": self.h,
            "grid": self.grid.tolist(),
            "distances": self.distances.tolist(),
            "epsilons": self.epsilons.tolist(),
            "densities": self.densities.tolist(),
            "longest_runs": self.longest_runs.tolist(),
            "median_distance": self.median_distance,
            "stabilization": self.stabilization,
            "spot_checks": self.spot_checks,
            "tail_bound": self.tail_bound,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            rect=Rectangle(**d["rect"]),
            modulus=d["modulus"],
            char_index=d["char_index"],
            order=d["order"],
            T=d["T"],
            h=d["h"],
            grid=np.array(d["grid"], dtype=float),
            distances=np.array(d["distances"], dtype=float),
            epsilons=np.array(d["epsilons"], dtype=float),
            densities=np.array(d["densities"], dtype=float),
            longest_runs=np.array(d["longest_runs"], dtype=int),
            median_distance=d["median_distance"],
            stabilization=d["stabilization"],
            spot_checks=d["spot_checks"],
            tail_bound=d["tail_bound"],
        )

    def __eq__(self, other):
        if not isinstance(other, ScanResult):
            return NotImplemented
        return json.dumps(self.to_dict(), sort_keys=True) == json.dumps(
            other.to_dict(), sort_keys=True)


def distances_on_grid(rect, chi, N, grid, threads=1, chunk=256):
    """``D_N`` at every grid point, merged in grid order."""
    base = TwistedSequence(chi, 0.0).base_coefficients(N)
    G = gram_matrix_float(rect, N) * 2.0 if N <= _CACHE_LIMIT else None
    chunks = [grid[i:i + chunk] for i in range(0, len(grid), chunk)]

    def work(ts):
        V = np.stack([base * (unimodular(t, N) - 1.0) for t in ts], axis=1)
        return _norm_from_square(quadratic_form(rect, V, G=G))

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(ts) for ts in chunks]
    return np.concatenate(parts) if parts else np.zeros(0)


def density_scan(rect, chi, N, T, h, epsilons, relative=False, spot_fraction=0.01,
                 spot_order=24, stabilization_probes=5, threads=None):
    """Empirical near-return density of ``D_N`` over ``[-T, T]``.

    Parameters
    ----------
    epsilons : sequence of float
        Strictly increasing ladder; read as multiples of the median observed
        distance when ``relative`` is true.
    spot_fraction : float
        Fraction of grid points where the factor route is compared with the
        quadratic form, at order ``min(N, spot_order)``.
    stabilization_probes : int
        Number of grid points where ``|D_2N - D_N|`` is measured.

    Returns
    -------
    ScanResult
    """
    eps = validate_scan(T, h, epsilons)
    threads = resolve_threads(threads)
    grid = scan_grid(T, h)
    D = distances_on_grid(rect, chi, N, grid, threads=threads)
    D[grid == 0.0] = 0.0
    median = float(np.median(D))
    if relative:
        eps = eps * median
    below = D[None, :] < eps[:, None]
    densities = below.mean(axis=1)
    runs = np.array([_longest_run(row) for row in below])

    probes = _probe_points(grid, stabilization_probes)
    stab = {"probe_t": [], "D_N": [], "D_2N": [], "max_abs_change": 0.0}
    if len(probes):
        V = np.stack([difference_vector(chi, t, 2 * N) for t in probes], axis=1)
        sq_n = quadratic_form(rect, V[:N])
        sq_2n = (sq_n + 2.0 * quadratic_form(rect, V, rows=(0, N), cols=(N, 2 * N))
                 + quadratic_form(rect, V, rows=(N, 2 * N), cols=(N, 2 * N)))
        dn, d2n = _norm_from_square(sq_n), _norm_from_square(sq_2n)
        stab = {"probe_t": probes.tolist(), "D_N": dn.tolist(), "D_2N": d2n.tolist(),
                "max_abs_change": float(np.max(np.abs(d2n - dn)))}

    spots = _spot_check(rect, chi, N, grid, spot_fraction, spot_order)
    result = ScanResult(
        rect=rect, modulus=chi.modulus, char_index=chi.index, order=N, T=float(T),
        h=float(h), grid=grid, distances=D, epsilons=eps, densities=densities,
        longest_runs=runs, median_distance=median, stabilization=stab,
        spot_checks=spots, tail_bound=truncation_tail_bound(rect, chi, T, N))
    result.check_invariants()
    return result


def refinement_study(rect, chi, N, T, h, epsilons, relative=False, threads=None):
    """Densities on the grid of step ``h`` and on its refinement ``h / 2``.

    No modulus of continuity is known for ``t -> D(t)``, so the effect of the
    grid step is reported rather than bounded.

    Returns
    -------
    dict
        ``epsilons`` (absolute), ``coarse`` and ``fine`` densities, and their
        absolute ``change``.
    """
    eps = validate_scan(T, h, epsilons)
    threads = resolve_threads(threads)
    out = {}
    for name, step in (("coarse", h), ("fine", h / 2)):
        grid = scan_grid(T, step)
        D = distances_on_grid(rect, chi, N, grid, threads=threads)
        D[grid == 0.0] = 0.0
        if name == "coarse" and relative:
            eps = eps * float(np.median(D))
        out[name] = (D[None, :] < eps[:, None]).mean(axis=1)
    return {"epsilons": eps.tolist(), "coarse": out["coarse"].tolist(),
            "fine": out["fine"].tolist(),
            "change": np.abs(out["fine"] - out["coarse"]).tolist()}


def _probe_points(grid, count):
    if count <= 0:
        return np.zeros(0)
    nonzero = grid[grid != 0.0]
    if not len(nonzero):
        return np.zeros(0)
    pick = np.linspace(0, len(nonzero) - 1, min(count, len(nonzero))).round().astype(int)
    return nonzero[np.unique(pick)]


def _spot_check(rect, chi, N, grid, fraction, order):
    if fraction <= 0:
        return {"order": 0, "points": [], "max_abs_diff": 0.0}
    n = min(N, order)
    step = max(1, int(round(1 / fraction)))
    pts = grid[::step]
    U = u_matrix(rect, n, suggested_precision(n))
    diffs = [abs(distance(rect, chi, t, n, "factor", factor=U)
                 - distance(rect, chi, t, n, "quadratic-form")) for t in pts]
    return {"order": n, "precision": U.precision, "points": len(pts),
            "max_abs_diff": float(max(diffs, default=0.0))}
