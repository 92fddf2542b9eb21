import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glmellin.continuation import contour_residue, safe_radius
from glmellin.errors import GammaPole
from glmellin.gl4 import poly_b
from glmellin.residues import (
    certify_degree,
    check_generic,
    degree_bound,
    residue_s1,
    residue_s1s2,
    residue_s1s2s3,
    residue_s1s3,
    residue_s2,
    residue_s2s3,
    residue_s3,
)

A = (0.11 + 0.03j, -0.23, 0.31j, 0.12 - 0.34j)


def _rel(x, y):
    return abs(x - y) / max(abs(y), 1e-300)


def _generic(rng):
    while True:
        free = [complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)) for _ in range(3)]
        a = (*free, -sum(free))
        try:
            check_generic(a, 6)
        except GammaPole:
            continue
        if min(abs(a[j] - a[k]) for j, k in itertools.combinations(range(4), 2)) > 0.1:
            return a


seeds = st.integers(0, 2**31 - 1)


@settings(max_examples=20)
@given(seeds, st.integers(1, 4), st.integers(0, 4))
def test_s1_induction_step(seed, m, delta):
    # residue of  T(s) prod_k (s1 + a_k) = B(s) T(s + e1) + T(s + e1 + e3)  at s1 = -a_m - delta - 1
    rng = np.random.default_rng(seed)
    a = _generic(rng)
    s2, s3 = (complex(rng.uniform(0.2, 1), rng.uniform(-0.3, 0.3)) for _ in range(2))
    s1 = -a[m - 1] - delta - 1
    lhs = residue_s1(a, m, delta + 1, s2, s3) * np.prod([s1 + ak for ak in a])
    rhs = poly_b(s1, s2, s3) * residue_s1(a, m, delta, s2, s3) + residue_s1(a, m, delta, s2, s3 + 1)
    assert _rel(lhs, rhs) < 1e-10


@settings(max_examples=20)
@given(seeds, st.integers(1, 4), st.integers(0, 4))
def test_s3_induction_step(seed, m, delta):
    rng = np.random.default_rng(seed)
    a = _generic(rng)
    s1, s2 = (complex(rng.uniform(0.2, 1), rng.uniform(-0.3, 0.3)) for _ in range(2))
    s3 = a[m - 1] - delta - 1
    lhs = residue_s3(a, m, delta + 1, s1, s2) * np.prod([s3 - ak for ak in a])
    rhs = poly_b(s3, s2, s1) * residue_s3(a, m, delta, s1, s2) + residue_s3(a, m, delta, s1 + 1, s2)
    assert _rel(lhs, rhs) < 1e-10


@given(seeds, st.sampled_from(list(itertools.combinations(range(1, 5), 2))), st.integers(0, 3))
def test_s2_symmetric_in_pair(seed, pair, delta):
    rng = np.random.default_rng(seed)
    a = _generic(rng)
    s1, s3 = (complex(rng.uniform(0.2, 1), rng.uniform(-0.3, 0.3)) for _ in range(2))
    m, n = pair
    assert _rel(residue_s2(a, m, n, delta, s1, s3), residue_s2(a, n, m, delta, s1, s3)) < 1e-10


@given(seeds, st.permutations(range(4)), st.integers(1, 4), st.integers(0, 2))
def test_permutation_covariance(seed, perm, m, delta):
    # relabel a -> a o perm and the indices accordingly
    rng = np.random.default_rng(seed)
    a = _generic(rng)
    pa = tuple(a[i] for i in perm)
    inv = {perm[i] + 1: i + 1 for i in range(4)}
    x, y = (complex(rng.uniform(0.2, 1), rng.uniform(-0.3, 0.3)) for _ in range(2))
    assert _rel(residue_s1(pa, inv[m], delta, x, y), residue_s1(a, m, delta, x, y)) < 1e-10
    assert _rel(residue_s3(pa, inv[m], delta, x, y), residue_s3(a, m, delta, x, y)) < 1e-10
    n = 1 + m % 4
    assert _rel(residue_s2(pa, inv[m], inv[n], delta, x, y), residue_s2(a, m, n, delta, x, y)) < 1e-10


def test_non_generic_parameters_raise():
    a = (0.6, -0.4, 0.1, -0.3)
    with pytest.raises(GammaPole):
        residue_s1(a, 1, 0, 0.5, 0.5)
    with pytest.raises(GammaPole):
        check_generic(a, 0)
    with pytest.raises(ValueError):
        residue_s1(A, 5, 0, 0.5, 0.5)
    with pytest.raises(ValueError):
        residue_s2(A, 2, 2, 0, 0.5, 0.5)
    with pytest.raises(ValueError):
        residue_s1(A, 1, -1, 0.5, 0.5)


def test_missing_factor_points_are_regular():
    for d in (0, 1, 2):
        v = residue_s1(A, 2, 0, 0.4, A[1] - d)
        assert np.isfinite(v)
        w = residue_s2(A, 1, 3, 0, 0.4, A[0] - d)
        assert np.isfinite(w)


def test_double_residue_by_contour_both_orders():
    a1, a2, a3, a4 = A
    s3 = 0.45 + 0.1j
    for da, db in itertools.product((0, 1), repeat=2):
        p1, p2 = -a1 - da, -a1 - a4 - db
        closed = residue_s1s2(A, da, db, s3)
        x = contour_residue(lambda z: residue_s2(A, 1, 4, db, z, s3), p1, safe_radius(A, 1, p1))
        y = contour_residue(lambda z: residue_s1(A, 1, da, z, s3), p2, safe_radius(A, 2, p2))
        assert _rel(x, closed) < 1e-8 and _rel(y, closed) < 1e-8


def test_other_double_and_triple_residues():
    a1, a2, a3, a4 = A
    s1, s2 = 0.35 - 0.1j, 0.6
    p = a2 - 1
    x = contour_residue(lambda z: residue_s1(A, 1, 0, s2, z), p, safe_radius(A, 3, p))
    assert _rel(x, residue_s1s3(A, 0, 1, s2)) < 1e-8
    p = a3
    x = contour_residue(lambda z: residue_s2(A, 1, 4, 1, s1, z), p, safe_radius(A, 3, p))
    assert _rel(x, residue_s2s3(A, 1, 0, s1)) < 1e-8
    p = a3 - 1
    x = contour_residue(lambda z: residue_s1s2(A, 1, 0, z), p, safe_radius(A, 3, p))
    assert _rel(x, residue_s1s2s3(A, 1, 0, 1)) < 1e-8


@pytest.mark.parametrize("which", ["f", "g", "h"])
@pytest.mark.parametrize("mode", ["free", "total"])
def test_degree_bounds(which, mode):
    for deltas in itertools.product(range(3), repeat=2):
        degree, ok = certify_degree(which, deltas, A, mode=mode)
        assert ok, (which, deltas, degree)
        if mode == "total":
            assert degree == degree_bound(which, deltas)
