"""Adaptive tensor-product Gauss-Legendre quadrature on axis-aligned rectangles.

Every panel carries a fixed ``order x order`` Gauss-Legendre rule. A panel's
error is estimated by comparing its rule against the sum of the same rule on
its four quadrants; panels whose estimate exceeds their share of the
tolerance (proportional to area) are split and revisited.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureNonConvergence

DEFAULT_ORDER = 16
DEFAULT_MAX_PANELS = 50_000
_POINTS_PER_BATCH = 1 << 17


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    panels: int

    def __iter__(self):
        yield self.value
        yield self.error


@lru_cache(maxsize=None)
def gauss_legendre(order):
    """Nodes and weights on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def _panel_rule(func, panels, order):
    """Apply the tensor rule to every row ``(s0, s1, t0, t1)`` of ``panels``."""
    x, w = gauss_legendre(order)
    ww = np.outer(w, w)
    out = np.empty(len(panels), dtype=complex)
    per_batch = max(1, _POINTS_PER_BATCH // (order * order))
    for start in range(0, len(panels), per_batch):
        p = panels[start:start + per_batch]
        hs = 0.5 * (p[:, 1] - p[:, 0])
        ht = 0.5 * (p[:, 3] - p[:, 2])
        sig = (0.5 * (p[:, 0] + p[:, 1]))[:, None] + hs[:, None] * x
        tau = (0.5 * (p[:, 2] + p[:, 3]))[:, None] + ht[:, None] * x
        sig, tau = np.broadcast_arrays(sig[:, :, None], tau[:, None, :])
        vals = np.asarray(func(sig, tau))
        vals = np.broadcast_to(vals, sig.shape)
        out[start:start + per_batch] = np.einsum("pij,ij->p", vals, ww) * hs * ht
    return out


def _quarter(panels):
    s0, s1, t0, t1 = panels.T
    sm = 0.5 * (s0 + s1)
    tm = 0.5 * (t0 + t1)
    kids = np.stack([
        np.stack([s0, sm, t0, tm], axis=1),
        np.stack([sm, s1, t0, tm], axis=1),
        np.stack([s0, sm, tm, t1], axis=1),
        np.stack([sm, s1, tm, t1], axis=1),
    ], axis=1)
    return kids.reshape(-1, 4)


def integrate_rectangle(func, sigma_range, tau_range, tol, order=DEFAULT_ORDER,
                        max_panels=DEFAULT_MAX_PANELS):
    """Integrate ``func(sigma, tau)`` over ``sigma_range x tau_range``.

    Parameters
    ----------
    func : callable
        Vectorized integrand; receives two real arrays of equal shape and
        returns a real or complex array of that shape.
    sigma_range, tau_range : tuple of float
        Integration limits for the real and imaginary parts.
    tol : float
        Target absolute error.
    order : int
        Gauss-Legendre nodes per direction on each panel.
    max_panels : int
        Budget on the number of panels evaluated.

    Returns
    -------
    QuadResult
        Integral, error estimate and number of panels evaluated.

    Raises
    ------
    QuadratureNonConvergence
        If the panel budget is exhausted before every panel meets its share
        of ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    root = np.array([[sigma_range[0], sigma_range[1], tau_range[0], tau_range[1]]],
                    dtype=float)
    total_area = (root[0, 1] - root[0, 0]) * (root[0, 3] - root[0, 2])
    active = root
    active_q = _panel_rule(func, active, order)
    evaluated = 1
    value = 0j
    error = 0.0
    while len(active):
        if evaluated + 4 * len(active) > max_panels:
            pending = float(np.abs(active_q).sum())
            raise QuadratureNonConvergence(tol, error + pending, evaluated)
        kids = _quarter(active)
        kids_q = _panel_rule(func, kids, order).reshape(-1, 4)
        evaluated += len(kids)
        refined = kids_q.sum(axis=1)
        est = np.abs(refined - active_q)
        area = (active[:, 1] - active[:, 0]) * (active[:, 3] - active[:, 2])
        ok = est <= tol * area / total_area
        value += refined[ok].sum()
        error += float(est[ok].sum())
        keep = np.repeat(~ok, 4)
        active = kids[keep]
        active_q = kids_q.reshape(-1)[keep]
    return QuadResult(complex(value), error, evaluated)
