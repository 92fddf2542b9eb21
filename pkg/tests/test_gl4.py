import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complexes, rationals
from glmellin.errors import DegenerateDenominator
from glmellin.gl4 import (
    INTERMEDIATE,
    RECONSTRUCTIONS,
    Gl4Point,
    all_shift_coefficients,
    consistent_placeholders,
    intermediate_relations,
    poly_b,
    poly_c,
    poly_c_forms,
    reconstruct_s1a,
    reconstruct_s1b,
    reconstruct_s2,
    reconstruct_s3a,
    reconstruct_s3b,
    reconstruct_s3c,
    relation,
    reversal,
)
from glmellin.mellin import QuadratureConfig, eval_t


def _rational_a(draw):
    a = [draw(rationals(-2, 2, 50)) for _ in range(3)]
    return (*a, -sum(a))


def test_poly_b_values():
    assert poly_b(1, 2, 3) == 0
    assert poly_b(2, 1, 1) == 6


@given(rationals(), rationals(), rationals())
def test_poly_b_identity(s1, s2, s3):
    assert poly_b(s1, s2 + 1, s3) * (s2 + s3 - s1) == (1 + s1 + s2 - s3) * poly_b(s3, s2, s1)


@given(rationals(), rationals())
def test_poly_c_at_zero(p, q):
    assert poly_c((0, 0, 0, 0), p, q) == q * (p * p + (p + q) ** 2)


@given(st.data(), rationals(), rationals())
def test_poly_c_three_forms_exact(data, p, q):
    a = _rational_a(data.draw)
    first, second, third = poly_c_forms(a, p, q)
    assert first == second == third


@given(complexes(), complexes(), complexes(), complexes(), complexes())
def test_poly_c_three_forms_float(a1, a2, a3, p, q):
    a = (a1, a2, a3, -a1 - a2 - a3)
    forms = poly_c_forms(a, p, q)
    scale = max(1.0, *(abs(x) for x in forms))
    assert max(abs(x - forms[2]) for x in forms) < 1e-12 * scale


@given(st.data(), rationals(), rationals(), st.permutations(range(4)))
def test_poly_c_permutation_invariant(data, p, q, perm):
    a = _rational_a(data.draw)
    assert poly_c(tuple(a[i] for i in perm), p, q) == poly_c(a, p, q)


def test_point_validation():
    with pytest.raises(ValueError):
        Gl4Point((Fraction(1), 0, 0, 0), (1, 1, 1))
    with pytest.raises(ValueError):
        Gl4Point((0, 0, 0), (1, 1, 1))


def test_trivial_point_s1a():
    pt = Gl4Point((0, 0, 0, 0), (1, 1, 1))
    x, y = Fraction(3, 7), Fraction(-2, 5)
    assert reconstruct_s1a(pt, x, y) == 2 * x + y


def test_hypotheses_raise():
    a = (Fraction(1, 5), Fraction(-1, 3), Fraction(1, 7), Fraction(-1, 5) + Fraction(1, 3) - Fraction(1, 7))
    with pytest.raises(DegenerateDenominator):
        reconstruct_s1a(Gl4Point(a, (-a[0], 1, 1)), 1, 1)
    with pytest.raises(DegenerateDenominator):
        reconstruct_s1b(Gl4Point(a, (2, 0, 1)), 1, 1)
    with pytest.raises(DegenerateDenominator):
        reconstruct_s2(Gl4Point(a, (2, -a[0] - a[2], 1)), 1, 1)
    with pytest.raises(DegenerateDenominator):
        reconstruct_s3a(Gl4Point(a, (2, 1, a[3])), 1, 1)
    with pytest.raises(DegenerateDenominator):
        all_shift_coefficients(Gl4Point(a, (2, 1, a[1])))


_PAIRS = [
    (reconstruct_s3a, reconstruct_s1a),
    (reconstruct_s3b, reconstruct_s1b),
    (reconstruct_s3c, reconstruct_s2),
]


@given(st.data(), rationals(), rationals())
def test_reversal_conjugation_exact(data, x, y):
    a = _rational_a(data.draw)
    s = tuple(data.draw(rationals(1, 4, 50)) for _ in range(3))
    pt = Gl4Point(a, s)
    rev = reversal(pt)
    assert rev.s == s[::-1] and rev.a == tuple(-v for v in a)
    assert reversal(rev) == pt
    for right, left in _PAIRS:
        try:
            want = left(rev, x, y)
        except DegenerateDenominator:
            continue
        assert right(pt, x, y) == want


def _exact_point(seed):
    rng = np.random.default_rng(seed)

    def r():
        return Fraction(int(rng.integers(-999, 1000)), int(rng.integers(101, 998)))

    a = [r() for _ in range(3)]
    return (*a, -sum(a)), (r(), r(), r())


@pytest.mark.parametrize("seed", range(3))
def test_placeholders_satisfy_every_relation_exactly(seed):
    a, s = _exact_point(seed)
    t = consistent_placeholders(a, s, seed=seed)
    pt = Gl4Point(a, s)
    assert relation("gl4rec").residual(a, s, t)[0] == 0
    for name, (total, _) in intermediate_relations(pt, t).items():
        assert name in INTERMEDIATE and total == 0
    for name, (fn, shifts) in RECONSTRUCTIONS.items():
        vals = [t(tuple(x + d for x, d in zip(s, sh))) for sh in shifts]
        assert fn(pt, *vals) == t(s), name


@pytest.mark.parametrize("seed", range(2))
def test_all_shifts_agrees_with_s1_relation(seed):
    a, s = _exact_point(seed)
    t = consistent_placeholders(a, s, seed=seed)
    pt = Gl4Point(a, s)

    def at(*off):
        return t(tuple(x + d for x, d in zip(s, off)))

    direct = RECONSTRUCTIONS["all"][0](pt, at(2, 1, 1), at(1, 1, 1))
    step = reconstruct_s1a(pt, at(1, 0, 0), at(1, 0, 1))
    assert direct == step == at(0, 0, 0)


def _interior(rng):
    free = [complex(rng.uniform(-0.1, 0.1), rng.uniform(-0.5, 0.5)) for _ in range(3)]
    s = tuple(complex(rng.uniform(1.2, 2.2), rng.uniform(-0.8, 0.8)) for _ in range(3))
    return (*free, -sum(free)), s


def test_reconstructions_with_quadrature_values():
    rng = np.random.default_rng(11)
    tol = 100 * QuadratureConfig().rel_tol
    for _ in range(20):
        a, s = _interior(rng)
        pt = Gl4Point(a, s)
        base = eval_t(a, s)
        for name, (fn, shifts) in RECONSTRUCTIONS.items():
            vals = [eval_t(a, tuple(x + d for x, d in zip(s, sh))) for sh in shifts]
            assert abs(fn(pt, *vals) - base) / abs(base) < tol, name


@settings(max_examples=5)
@given(st.integers(0, 10_000))
def test_relations_with_quadrature_values(seed):
    rng = np.random.default_rng(seed)
    a, s = _interior(rng)
    cache = {}

    def t(p):
        key = tuple(p)
        if key not in cache:
            cache[key] = eval_t(a, key)
        return cache[key]

    for name in ("gl4rec", *INTERMEDIATE):
        total, scale = relation(name).residual(a, s, t)
        assert abs(total) < 100 * QuadratureConfig().rel_tol * scale, name


def test_shift_table():
    for name, (_, shifts) in RECONSTRUCTIONS.items():
        assert all(min(sh) >= 0 for sh in shifts)
        assert any(sum(sh) > 0 for sh in shifts)
    assert set(itertools.chain(*(RECONSTRUCTIONS["all"][1],))) == {(2, 1, 1), (1, 1, 1)}
