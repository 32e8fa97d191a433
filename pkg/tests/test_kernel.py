import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirichlet_recurrence import Rectangle, gram_entry, gram_matrix, inner_product, monomial
from dirichlet_recurrence.errors import ConfigError
from dirichlet_recurrence.kernel import (decay_factor, gram_matrix_float, norm_squared,
                                         sinc_factor)

from oracles import gauss_legendre_rect

RECTS = [Rectangle(0.55, 0.95, 0.5), Rectangle(0.6, 0.8, 1.0), Rectangle(0.51, 0.99, 3.0)]

# <e_2, e_3> on [0.6, 0.8] x [-1, 1]; scipy dblquad, mpmath quad of the
# separated integrals and two quadrature orders agree to 1e-16
E2_E3 = 0.1116116914090215


@pytest.mark.parametrize("bad", [(0.5, 0.8, 1.0), (0.8, 0.6, 1.0), (0.6, 1.0, 1.0),
                                 (0.6, 0.8, 0.0)])
def test_rectangle_validation(bad):
    with pytest.raises(ConfigError):
        Rectangle(*bad)


def test_corner_convention(rect):
    import mpmath
    with mpmath.workprec(256):
        assert abs(gram_entry(rect, 1, 1) - mpmath.mpf("0.2")) < 1e-75


def test_diagonal_value(rect):
    expected = (4 ** -0.6 - 4 ** -0.8) / np.log(4) * 1.0
    assert float(gram_entry(rect, 2, 2)) == pytest.approx(expected, rel=1e-14)
    assert float(gram_entry(rect, 2, 2)) == pytest.approx(0.07603, abs=5e-6)
    q = inner_product(rect, monomial(2), monomial(2), 1e-13).value
    assert q.real / 2 == pytest.approx(float(gram_entry(rect, 2, 2)), rel=1e-12)


def test_symmetry_exact(rect):
    assert gram_entry(rect, 2, 3) == gram_entry(rect, 3, 2)
    A = gram_matrix(rect, 12, 128)
    for m in range(1, 13):
        for n in range(1, 13):
            assert A.entry(m, n) == A.entry(n, m)
            assert A.entry(m, n) == gram_entry(rect, m, n, 128)


def test_small_matrices(rect):
    A1 = gram_matrix(rect, 1)
    assert A1.order == 1 and float(A1.entry(1, 1)) == pytest.approx(0.2)
    A3 = gram_matrix(rect, 3)
    assert all(A3.entry(n, n) > 0 for n in range(1, 4))


def test_positive_decreasing_diagonal(rect):
    diag = np.diag(gram_matrix_float(rect, 10_000))
    assert np.all(diag > 0)
    assert np.all(np.diff(diag) < 0)


def test_float_block_matches_high_precision(rect):
    G = gram_matrix_float(rect, 40)
    A = gram_matrix(rect, 40, 128).to_numpy()
    assert np.max(np.abs(G - A) / np.abs(A)) < 1e-13


def test_convention_continuity():
    for P in (53, 128, 256):
        tol = max(1e-12, 2.0 ** (8 - P))
        for delta in (1e-3, 1e-6, 1e-9, 1e-20):
            L = float(np.log1p(delta))
            ratio = decay_factor(L, 0.6, 0.8, P) / decay_factor(0, 0.6, 0.8, P)
            # first-order drift is -(alpha + beta) L / 2
            assert abs(ratio - 1) <= 0.71 * L + tol
            s = sinc_factor(L, 1.0, P) / sinc_factor(0, 1.0, P)
            assert abs(s - 1) <= L * L / 6 + tol
        assert abs(sinc_factor(1e-30, 2.0, P) - 2) < 1e-12


def test_sinc_taylor_branch_agrees_with_direct():
    # just above and below the switch at 2^{-P/4}
    import mpmath
    for P in (64, 256):
        x0 = 2.0 ** (-P / 4)
        for x in (0.999 * x0, 1.001 * x0):
            with mpmath.workprec(4 * P):
                xm = mpmath.mpf(repr(x))
                exact = mpmath.sin(xm) / xm
                assert abs(sinc_factor(x, 1.0, P) - exact) < 2.0 ** (2 - P)


def test_area_of_constant(rect):
    res = inner_product(rect, monomial(1), monomial(1), 1e-13)
    assert res.value.real == pytest.approx(rect.area, rel=1e-14)


def test_golden_e2_e3(rect):
    res = inner_product(rect, monomial(2), monomial(3), 1e-12)
    assert res.value.real == pytest.approx(E2_E3, abs=1e-14)
    assert 2 * float(gram_entry(rect, 2, 3)) == pytest.approx(E2_E3, abs=1e-15)


def test_conjugate_linear_first_argument(rect):
    f = lambda s: (1 + 2j) * np.exp(-s * np.log(2))
    g = lambda s: np.exp(-s * np.log(3))
    lhs = inner_product(rect, f, g, 1e-13).value
    assert lhs == pytest.approx((1 - 2j) * E2_E3, abs=1e-13)


@pytest.mark.parametrize("r", RECTS)
def test_gram_identity_vs_fixed_rule(r):
    # fixed high-order rule, independent of the adaptive driver
    for m, n in [(1, 7), (5, 16), (16, 16), (3, 11)]:
        q = gauss_legendre_rect(
            lambda s: np.conj(float(m) ** -s) * float(n) ** -s, r)
        assert q.real == pytest.approx(2 * float(gram_entry(r, m, n)), rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(m=st.integers(1, 400), n=st.integers(1, 400))
def test_float_block_symmetric(m, n):
    from dirichlet_recurrence.kernel import gram_block
    r = Rectangle(0.6, 0.8, 1.0)
    assert gram_block(r, [m], [n])[0, 0] == gram_block(r, [n], [m])[0, 0]


def test_norm_squared_matches_gram(rect):
    f = lambda s: np.exp(-s * np.log(5))
    assert norm_squared(rect, f).value.real == pytest.approx(
        2 * float(gram_entry(rect, 5, 5)), rel=1e-13)
