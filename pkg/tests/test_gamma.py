import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import complexes, rationals
from glmellin.errors import PoleError
from glmellin.gamma import gamma, log_gamma, log_sin_pi, pochhammer

# frozen from mpmath (dps = 30)
LOGGAMMA_37_21 = complex(0.785346958073822388758400145144, 2.58301292511526224859133403095)
LOGGAMMA_M23_04 = complex(-0.405208695219923275720487309388, -8.45623366287094384013449337651)
POCH_5 = complex(-0.92437000000000194611549098056, 22.7728400000000001845301689229)


def test_log_gamma_matches_mpmath():
    assert abs(log_gamma(3.7 + 2.1j) - LOGGAMMA_37_21) < 1e-13


def test_log_gamma_left_half_plane_mod_2pi_i():
    d = log_gamma(-2.3 + 0.4j) - LOGGAMMA_M23_04
    assert abs(d.real) < 1e-13
    assert abs(d.imag / (2 * math.pi) - round(d.imag / (2 * math.pi))) < 1e-12


def test_gamma_small_integers_and_half():
    for k in range(1, 12):
        assert abs(gamma(k) - math.factorial(k - 1)) < 1e-13 * math.factorial(k - 1)
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-14


def test_gamma_vectorised():
    z = np.array([1.5, 2.5 + 1j, -0.5])
    out = gamma(z)
    assert out.shape == (3,)
    assert abs(out[2] - (-2 * math.sqrt(math.pi))) < 1e-13


@pytest.mark.parametrize("z", [0, -1, -7, -3 + 1e-14])
def test_gamma_poles_raise(z):
    with pytest.raises(PoleError):
        gamma(z)


@given(complexes(re=(-6, 6), im=(-6, 6)))
def test_translation(z):
    assume(min(abs(z + k) for k in range(0, 8)) > 1e-3)
    g1 = gamma(z + 1)
    assert abs(g1 - z * gamma(z)) / abs(g1) < 1e-12


@given(complexes(re=(0.01, 0.99), im=(-3, 3)))
def test_reflection(z):
    lhs = gamma(z) * gamma(1 - z)
    rhs = math.pi / cmath.sin(math.pi * z)
    assert abs(lhs - rhs) / abs(rhs) < 1e-11


@given(complexes(re=(-4, 4), im=(-1, 1)))
def test_log_sin_pi_exponentiates(z):
    assume(min(abs(z - round(z.real)), 1) > 1e-3)
    assert abs(cmath.exp(log_sin_pi(z)) - cmath.sin(math.pi * z)) <= 1e-11 * max(
        1.0, abs(cmath.sin(math.pi * z)))


def test_pochhammer_mpmath_anchor():
    assert abs(pochhammer(0.3 + 0.4j, 5) - POCH_5) < 1e-12


@given(complexes(re=(0.2, 4), im=(-2, 2)), st.integers(0, 12))
def test_pochhammer_gamma_ratio(a, k):
    ratio = gamma(a + k) / gamma(a)
    assert abs(pochhammer(a, k) - ratio) / abs(ratio) < 1e-11


@given(rationals(), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_pochhammer_split_exact(a, x, y, z):
    kappa, gam, delta = sorted((x, y, z))
    lhs = pochhammer(a + kappa, delta - kappa)
    rhs = pochhammer(a + gam, delta - gam) * pochhammer(a + kappa, gam - kappa)
    assert isinstance(lhs, Fraction) or isinstance(lhs, int)
    assert lhs == rhs
