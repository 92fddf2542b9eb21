from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from glmellin.errors import DegenerateDenominator
from glmellin.recurrence import (
    alpha_coefficient,
    build_recurrence,
    enumerate_no_adjacent,
    lemma_sum,
    lemma_terms,
    m_coefficient,
)


def test_no_adjacent_counts_follow_fibonacci():
    counts = [len(enumerate_no_adjacent(m)) for m in range(1, 13)]
    assert counts[:2] == [2, 3]
    for k in range(2, len(counts)):
        assert counts[k] == counts[k - 1] + counts[k - 2]


@pytest.mark.parametrize("m", range(1, 9))
def test_no_adjacent_sequences(m):
    seqs = enumerate_no_adjacent(m)
    assert len(set(seqs)) == len(seqs)
    assert all(sum(x * y for x, y in zip(mu, mu[1:])) == 0 for mu in seqs)


@pytest.mark.parametrize("n", range(2, 9))
def test_recurrence_shape(n):
    rec = build_recurrence(n)
    assert list(rec.shifts) == enumerate_no_adjacent(n - 1)
    a = [0.1 * (k + 1) for k in range(n - 1)]
    a.append(-sum(a))
    s = [1.3 + 0.2j * k for k in range(n - 1)]
    coeffs = rec.coefficients(a, s)
    assert coeffs[rec.shifts.index((0,) * (n - 1))] == 1


def _sample(n, draw):
    a1 = draw(rationals())
    s = [draw(rationals()) for _ in range(n - 1)]
    z = [draw(rationals()) for _ in range(n - 2)]
    return a1, s, z


@given(st.integers(2, 8), st.data())
def test_lemma_sum_exact(n, data):
    a1, s, z = _sample(n, data.draw)
    try:
        total = lemma_sum(n, a1, s, z)
    except DegenerateDenominator:
        return
    assert total == 0


@given(st.integers(2, 8), st.data())
def test_lemma_sum_floats(n, data):
    a1, s, z = _sample(n, data.draw)
    try:
        terms = lemma_terms(n, float(a1), [float(x) for x in s], [float(x) for x in z])
    except DegenerateDenominator:
        return
    scale = max(abs(t) for t in terms)
    if scale < 1e6:
        assert abs(sum(terms)) <= 1e-10 * scale


@given(st.integers(2, 7), st.data())
def test_beta_consistency(n, data):
    # alpha for n and beta (same formula at n + 1) from shared inputs:
    # beta_k = alpha_k (1 + [k = n-1] beta_n)
    a1 = data.draw(rationals())
    s = [data.draw(rationals()) for _ in range(n)]
    z = [data.draw(rationals()) for _ in range(n - 1)]
    z_n = z[: n - 2]
    try:
        alphas = [alpha_coefficient(k, n, a1, s[: n - 1], z_n) for k in range(1, n)]
        betas = [alpha_coefficient(k, n + 1, a1, s, z) for k in range(1, n + 1)]
    except DegenerateDenominator:
        return
    for k in range(1, n - 1):
        assert betas[k - 1] == alphas[k - 1]
    assert betas[n - 2] == alphas[n - 2] * (1 + betas[n - 1])


def _five_term_reference(a, s):
    a1 = a[0]
    s1, s2, s3 = s
    return {
        (0, 0, 0): 1,
        (1, 0, 0): 1 / ((-s1 - a1) * (s1 - s2 - a1)),
        (0, 1, 0): 1 / ((s1 - s2 - a1) * (s2 - s3 - a1)),
        (0, 0, 1): 1 / ((s2 - s3 - a1) * (s3 - a1)),
        (1, 0, 1): 1 / ((-s1 - a1) * (s1 - s2 - a1) * (s2 - s3 - a1) * (s3 - a1)),
    }


def test_gl4rec_coefficients_match_reference():
    rng = np.random.default_rng(7)
    rec = build_recurrence(4)
    for _ in range(50):
        a = list(rng.normal(size=3) + 1j * rng.normal(size=3))
        a.append(-sum(a))
        s = tuple(rng.normal(size=3) + 1j * rng.normal(size=3))
        want = _five_term_reference(a, s)
        got = dict(zip(rec.shifts, rec.coefficients(a, s)))
        assert set(got) == set(want)
        for k in want:
            assert abs(got[k] - want[k]) <= 1e-12 * max(1, abs(want[k]))


def test_gl4rec_exact_rational():
    a = [Fraction(1, 7), Fraction(-2, 9), Fraction(3, 11)]
    a.append(-sum(a))
    s = (Fraction(5, 3), Fraction(-1, 4), Fraction(2, 13))
    got = dict(zip(build_recurrence(4).shifts, build_recurrence(4).coefficients(a, s)))
    assert got == _five_term_reference(a, s)


def test_m_coefficient_products():
    a1 = 0.2
    s = (1.1, 0.7, 1.9, 0.3)
    rec = build_recurrence(5)
    ms = [m_coefficient(k, a1, s) for k in range(1, 5)]
    a = [a1, 0.1, -0.4, 0.05]
    a.append(-sum(a))
    for mu, c in zip(rec.shifts, rec.coefficients(a, s)):
        want = np.prod([m for m, bit in zip(ms, mu) if bit]) if any(mu) else 1
        assert abs(c - want) < 1e-12 * max(1, abs(want))


def test_degenerate_denominator():
    with pytest.raises(DegenerateDenominator):
        m_coefficient(1, 0.5, (-0.5, 1.0))
