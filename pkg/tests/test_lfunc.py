import mpmath
import numpy as np
import pytest

from dirichlet_recurrence import characters_mod, hurwitz_zeta, lstar, lstar_l2_distance
from dirichlet_recurrence.errors import PoleAtOne
from dirichlet_recurrence.lfunc import alternating_eta

from oracles import dirichlet_partial_sum, eta_by_averaging, partial_summation_tail

# ||L*(s - i) - L*(s)|| on [0.6, 0.8] x [-1, 1] for chi mod 4 non-principal;
# quadrature orders 16 and 24 agree to 3e-17, and the truncated u_K
# distance approaches it as N doubles
CHI4_T1 = 0.159311563627514


def test_hurwitz_zeta_two():
    k = np.arange(1, 10**6 + 1, dtype=float)
    brute = np.sum(1 / k[::-1] ** 2) + 1 / 10**6  # integral tail, error O(N^-2)
    value, err = hurwitz_zeta(2, 1.0)
    assert value.real == pytest.approx(brute, abs=1e-11)
    assert err < 1e-14
    half = np.sum(1 / (k[::-1] - 0.5) ** 2) + 1 / 10**6
    assert hurwitz_zeta(2, 0.5)[0].real == pytest.approx(half, abs=1e-11)
    assert hurwitz_zeta(2, 0.5)[0].real == pytest.approx(np.pi ** 2 / 2, rel=1e-14)


def test_hurwitz_real_on_real_axis():
    value, _ = hurwitz_zeta(np.array([1.5, 3.0, 7.0]), 1.0)
    assert np.all(value.imag == 0)


def test_hurwitz_pole():
    with pytest.raises(PoleAtOne):
        hurwitz_zeta(1.0, 0.5)


def test_hurwitz_strip_against_mpmath():
    rng = np.random.default_rng(7)
    for _ in range(20):
        s = complex(rng.uniform(0.5, 1.0), rng.uniform(-4, 4))
        a = rng.uniform(0.05, 1.0)
        value, err = hurwitz_zeta(s, a)
        assert abs(value - complex(mpmath.zeta(s, a))) < 1e-12
        assert err < 1e-12


def test_principal_at_two(principal):
    k = np.arange(1, 10**6 + 1)
    brute = np.sum(np.where(k % 2 == 1, -1.0, 1.0) / k.astype(float) ** 2)
    assert lstar(principal, 2.0).real == pytest.approx(brute, abs=1e-12)
    assert lstar(principal, 2.0).real == pytest.approx(-np.pi ** 2 / 12, abs=1e-14)


def test_mod4_at_two_is_catalan(chi4):
    # chi(3) = -1, so L(2) = 1 - 1/9 + 1/25 - ... = +Catalan
    brute = dirichlet_partial_sum(chi4.values, 2.0, 10**6)
    value = lstar(chi4, 2.0)
    assert value.real == pytest.approx(brute.real, abs=1e-11)
    assert value.real == pytest.approx(0.915965594177219, abs=1e-14)


def test_principal_real_axis(principal):
    for sigma in (0.2, 0.5, 0.9):
        v = lstar(principal, sigma)
        assert v.imag == 0
        assert v.real == pytest.approx(-eta_by_averaging(complex(sigma)).real, abs=1e-13)


def test_principal_no_pole_at_one(principal, chi4):
    assert lstar(principal, 1.0) == pytest.approx(-np.log(2), abs=1e-14)
    assert lstar(chi4, 1.0) == pytest.approx(np.pi / 4, abs=1e-12)


def test_reflection():
    rng = np.random.default_rng(3)
    for q in (5, 7, 8, 12):
        for chi in characters_mod(q):
            s = complex(rng.uniform(0.3, 1.5), rng.uniform(-5, 5))
            lhs = lstar(chi, s.conjugate(), 1e-12)
            rhs = np.conj(lstar(chi.conjugate(), s, 1e-12))
            assert abs(lhs - rhs) <= 2e-12


def test_eta_agrees_with_mpmath():
    rng = np.random.default_rng(11)
    s = rng.uniform(0.55, 0.95, 50) + 1j * rng.uniform(-8, 8, 50)
    ours = alternating_eta(s, 1e-13)
    ref = np.array([complex(mpmath.altzeta(x)) for x in s])
    assert np.max(np.abs(ours - ref)) < 1e-12


def test_lstar_rejects_left_half_plane(chi4):
    with pytest.raises(ValueError):
        lstar(chi4, -0.1 + 1j)


def test_distance_zero_shift(rect, chi4):
    assert lstar_l2_distance(rect, chi4, 0.0) == 0.0


def test_distance_even_for_real_characters(rect, chi3, principal):
    for chi in (chi3, principal):
        assert lstar_l2_distance(rect, chi, 1.3, 1e-8) == pytest.approx(
            lstar_l2_distance(rect, chi, -1.3, 1e-8), abs=1e-8)


def test_golden_distance(rect, chi4):
    assert lstar_l2_distance(rect, chi4, 1.0, 1e-8) == pytest.approx(CHI4_T1, abs=1e-9)
    assert lstar_l2_distance(rect, chi4, 1.0, 1e-8, order=24) == pytest.approx(CHI4_T1, abs=1e-9)
