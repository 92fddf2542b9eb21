import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from glmellin.errors import ConstraintViolation, PreconditionViolation
from glmellin.pdelta import (
    DELTA_MAX,
    check_divisibility,
    check_recur_a,
    check_recur_b,
    p_delta,
    p_delta_short,
)

six = st.tuples(*(rationals() for _ in range(6)))


def test_delta_zero_is_one():
    assert p_delta(0, 3, 4, 5, 6, 7, 8) == 1


@given(six)
def test_delta_one_closed_form(v):
    b, c, d, e, f, g = v
    assert p_delta(1, b, c, d, e, f, g) == e * f * g - b * c * d


@given(st.integers(0, 6), six)
def test_recur_a_exact(delta, v):
    assert check_recur_a(delta, *v) == 0


@given(st.integers(0, 6), six)
def test_recur_b_exact(delta, v):
    assert check_recur_b(delta, *v[:5]) == 0


def test_recur_b_rejects_off_constraint():
    with pytest.raises(ConstraintViolation):
        check_recur_b(2, Fraction(1, 3), 2, 3, 4, 5, 6)
    with pytest.raises(ConstraintViolation):
        check_recur_b(2, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6)


def test_recur_b_floats_small():
    b, c, d, e, f = 0.3, -0.7, 1.1, 0.25, -0.4
    g = 1 + b + c + d - e - f - 3
    assert abs(check_recur_b(3, b, c, d, e, f, g)) < 1e-10


@pytest.mark.parametrize("delta", range(7))
def test_divisibility_all_gamma_and_slots(delta):
    base = [Fraction(2, 7), Fraction(-3, 5), Fraction(5, 11)]
    e, f, g = Fraction(1, 3), Fraction(-4, 9), Fraction(7, 13)
    for gam in range(delta + 1):
        for slot in range(3):
            bcd = list(base)
            bcd[slot] = Fraction(-gam)
            assert check_divisibility(delta, gam, *bcd, e, f, g)


def test_divisibility_preconditions():
    with pytest.raises(PreconditionViolation):
        check_divisibility(2, 1, -1.0, 2, 3, 4, 5, 6)
    with pytest.raises(PreconditionViolation):
        check_divisibility(2, 1, 5, 2, 3, 4, 5, 6)
    with pytest.raises(PreconditionViolation):
        check_divisibility(2, 3, -3, 2, 3, 4, 5, 6)


def test_short_sum_equals_full_at_gamma_delta():
    v = [Fraction(k, 7) for k in (1, -2, 3, 4, -5, 6)]
    assert p_delta_short(4, 4, *v) == p_delta(4, *v)


@given(st.integers(0, 5), six, st.permutations(range(3)), st.permutations(range(3)))
def test_separate_permutation_invariance(delta, v, p1, p2):
    bcd, efg = v[:3], v[3:]
    val = p_delta(delta, *bcd, *efg)
    assert p_delta(delta, *(bcd[i] for i in p1), *efg) == val
    assert p_delta(delta, *bcd, *(efg[i] for i in p2)) == val


@pytest.mark.parametrize("delta", range(0, 5))
def test_total_degree_by_finite_differences(delta):
    # a random direction reduces total degree to a univariate degree; the
    # (3 delta + 1)-st forward difference of any polynomial of degree <= 3 delta vanishes
    base = [Fraction(1, 3), Fraction(-2, 5), Fraction(3, 7), Fraction(1, 2), Fraction(-1, 9), 2]
    for direction in ([1, 2, -1, 3, 1, -2], [Fraction(1, 2), 1, 1, -3, 2, 5]):
        order = 3 * delta + 1
        vals = [p_delta(delta, *(x + t * d for x, d in zip(base, direction)))
                for t in range(order + 1)]
        diff = sum((-1) ** (order - k) * math.comb(order, k) * vals[k] for k in range(order + 1))
        assert diff == 0
        # the order-3δ difference is generically nonzero: the bound is attained
        lower = sum((-1) ** (order - 1 - k) * math.comb(order - 1, k) * vals[k]
                    for k in range(order))
        assert delta == 0 or lower != 0


def test_delta_cap():
    p_delta(DELTA_MAX, 0, 0, 0, 1, 1, 1)
    with pytest.raises(ValueError):
        p_delta(DELTA_MAX + 1, 0, 0, 0, 1, 1, 1)
    with pytest.raises(ValueError):
        p_delta(-1, 0, 0, 0, 1, 1, 1)


def test_float_twin_agrees_with_exact():
    v = [Fraction(k, 11) for k in (3, -5, 7, 2, -9, 4)]
    exact = p_delta(5, *v)
    approx = p_delta(5, *(float(x) for x in v))
    assert abs(approx - float(exact)) < 1e-12 * max(1, abs(float(exact)))
