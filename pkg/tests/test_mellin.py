import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complexes
from glmellin.errors import ContourError, NonConvergence
from glmellin.mellin import (
    QuadratureConfig,
    coarse_config,
    eval_t,
    quadrature_margin,
    shifted_params,
    spectral_params,
    t2,
    t3_closed,
)
from glmellin.recurrence import build_recurrence

# frozen from mpmath (dps = 30)
T2_ANCHOR = complex(1.05970969822147668430707224037, -0.965022330075738581118147508812)
T3_ANCHOR = complex(0.241300667167828098912395937848, -0.306621662462852222785875200674)
# mpmath two-dimensional quadrature of the Barnes double integral (dps = 20)
T4_ANCHOR = complex(0.076973081954467266206, 0.0)

A3 = (0.1, -0.3 + 0.2j, 0.2 - 0.2j)
S3 = (1.2 + 0.5j, 1.1)
A4 = (0.1, 0.2, -0.05, -0.25)
S4 = (1.5, 1.6, 1.7)


def test_t2_anchor():
    assert abs(t2((0.2, -0.2), (0.7 + 0.3j,)) - T2_ANCHOR) < 1e-13


def test_t2_at_zero_is_pi():
    assert abs(t2((0, 0), (0.5,)) - np.pi) < 1e-14


def test_t3_closed_anchor():
    assert abs(t3_closed(A3, S3) - T3_ANCHOR) < 1e-13


def test_t3_quadrature_pins_closed_form_constant():
    ratio = eval_t(A3, S3) / t3_closed(A3, S3)
    assert abs(ratio - 1) < 1e-9


def test_t4_anchor():
    assert abs(eval_t(A4, S4) - T4_ANCHOR) / abs(T4_ANCHOR) < 1e-9


def test_t4_recursive_matches_barnes_coarse():
    a = (0.05, -0.1 + 0.1j, 0.02, 0.03 - 0.1j)
    s = (1.6, 1.5 + 0.2j, 1.7)
    ref = eval_t(a, s)
    rec = eval_t(a, s, coarse_config(), method="recursive")
    assert abs(rec - ref) / abs(ref) < 1e-4


def test_spectral_params_zero_sum():
    a = spectral_params(0.1, 0.2j, -0.4)
    assert len(a) == 4 and abs(sum(a)) < 1e-15
    b = shifted_params(a)
    assert len(b) == 3 and abs(sum(b)) < 1e-15


def test_contour_error_left_of_region():
    with pytest.raises(ContourError):
        eval_t(A3, (-1.5, 0.2))
    with pytest.raises(ContourError):
        eval_t(A4, (0.1, 0.1, 0.1))


def test_nonconvergence():
    cfg = QuadratureConfig(height=2.0, step=1.0, rel_tol=1e-14, max_refinements=0)
    with pytest.raises(NonConvergence):
        eval_t(A4, S4, cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(height=0)
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=-1)


def test_margin_reported():
    assert quadrature_margin(A4, S4) >= 0.3


def test_refinement_self_check():
    cfg = QuadratureConfig()
    finer = QuadratureConfig(height=2 * cfg.height, step=cfg.step / 2)
    v1, v2 = eval_t(A4, S4, cfg), eval_t(A4, S4, finer)
    assert abs(v1 - v2) / abs(v1) < cfg.rel_tol


def test_bit_identical_repeats():
    assert eval_t(A4, S4) == eval_t(A4, S4)


def _gl4_point(draw):
    free = [draw(complexes(re=(-0.1, 0.1), im=(-0.5, 0.5))) for _ in range(3)]
    a = (*free, -sum(free))
    s = tuple(draw(complexes(re=(1.2, 2.2), im=(-0.8, 0.8))) for _ in range(3))
    return a, s


@settings(max_examples=10)
@given(st.data(), st.permutations(range(4)))
def test_permutation_symmetry_t4(data, perm):
    a, s = _gl4_point(data.draw)
    base = eval_t(a, s)
    other = eval_t(tuple(a[i] for i in perm), s)
    assert abs(other - base) / abs(base) < 10 * QuadratureConfig().rel_tol


@settings(max_examples=10)
@given(st.data())
def test_reversal_symmetry_t4(data):
    a, s = _gl4_point(data.draw)
    base = eval_t(a, s)
    rev = eval_t(tuple(-x for x in a), s[::-1])
    assert abs(rev - base) / abs(base) < 10 * QuadratureConfig().rel_tol


def test_permutation_and_reversal_t3():
    base = eval_t(A3, S3)
    for perm in itertools.permutations(range(3)):
        v = eval_t(tuple(A3[i] for i in perm), S3)
        assert abs(v - base) / abs(base) < 1e-9
    rev = eval_t(tuple(-x for x in A3), S3[::-1])
    assert abs(rev - base) / abs(base) < 1e-9


@pytest.mark.parametrize("n", [2, 3, 4])
def test_general_recurrence_residual(n):
    a = {2: (0.15, -0.15), 3: A3, 4: A4}[n]
    s = {2: (1.3 + 0.4j,), 3: S3, 4: S4}[n]
    rec = build_recurrence(n)
    terms = [c * eval_t(a, tuple(x + d for x, d in zip(s, sh)))
             for sh, c in zip(rec.shifts, rec.coefficients(a, s))]
    assert abs(sum(terms)) / max(abs(t) for t in terms) < 100 * QuadratureConfig().rel_tol
