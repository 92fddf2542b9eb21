"""The residue polynomial ``p_delta`` and its recurrences.

    p_delta[b, c, d; e, f, g] = sum_{kappa=0}^{delta} (-1)^kappa
        (b)_kappa (c)_kappa (d)_kappa (e+kappa)_{delta-kappa} (f+kappa)_{delta-kappa}
        (g+kappa)_{delta-kappa} / (kappa! (delta-kappa)!)

All functions accept ints/Fractions (exact) or floats/complex numbers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import ConstraintViolation, PreconditionViolation
from .gamma import pochhammer

__all__ = ["DELTA_MAX", "p_delta", "p_delta_short", "check_recur_a", "check_recur_b",
           "check_divisibility"]

DELTA_MAX = 64


def _exact(*xs) -> bool:
    return all(isinstance(x, Rational) for x in xs)


def _check_delta(delta):
    if not (isinstance(delta, int) and 0 <= delta <= DELTA_MAX):
        raise ValueError(f"delta must be an integer in 0..{DELTA_MAX}")


def _divide(x, n: int):
    return Fraction(x) / n if isinstance(x, Rational) else x / n


def p_delta(delta: int, b, c, d, e, f, g):
    """``p_delta[b, c, d; e, f, g]``."""
    _check_delta(delta)
    total = 0
    for k in range(delta + 1):
        r = delta - k
        term = (pochhammer(b, k) * pochhammer(c, k) * pochhammer(d, k)
                * pochhammer(e + k, r) * pochhammer(f + k, r) * pochhammer(g + k, r))
        term = _divide(term, math.factorial(k) * math.factorial(r))
        total = total - term if k % 2 else total + term
    return total


def p_delta_short(delta: int, gamma: int, b, c, d, e, f, g):
    """The truncated sum over ``kappa <= gamma`` with ``(. + kappa)_{gamma - kappa}``
    factors and the full ``kappa! (delta - kappa)!`` denominators."""
    _check_delta(delta)
    total = 0
    for k in range(gamma + 1):
        r = gamma - k
        term = (pochhammer(b, k) * pochhammer(c, k) * pochhammer(d, k)
                * pochhammer(e + k, r) * pochhammer(f + k, r) * pochhammer(g + k, r))
        term = _divide(term, math.factorial(k) * math.factorial(delta - k))
        total = total - term if k % 2 else total + term
    return total


def check_recur_a(delta: int, b, c, d, e, f, g):
    """Residual of

        (e+delta)(f+delta)(g-1) p_delta[b,c,d; e,f,g]
          - b c d p_delta[b+1,c+1,d+1; e+1,f+1,g+1]
          - (delta+1) p_{delta+1}[b,c,d; e,f,g-1],

    which vanishes identically.
    """
    lhs = ((e + delta) * (f + delta) * (g - 1) * p_delta(delta, b, c, d, e, f, g)
           - b * c * d * p_delta(delta, b + 1, c + 1, d + 1, e + 1, f + 1, g + 1))
    return lhs - (delta + 1) * p_delta(delta + 1, b, c, d, e, f, g - 1)


def check_recur_b(delta: int, b, c, d, e, f, g=None, *, tol: float = 1e-9):
    """Residual of the three-term relation valid on ``e + f + g + delta - b - c - d = 1``:

        b (f-c)(f-d)(c-e-1-delta) p_delta[b+1,c,d; e,f+1,g]
          + (g-b-1)((e-b+delta)(e-c)(f-1) - b(f-c)(1+delta)) p_delta[b,c,d; e,f,g]
          - (delta+1)(e-c) p_{delta+1}[b,c-1,d; e,f-1,g-1].

    If ``g`` is omitted it is solved from the constraint.  A supplied ``g``
    off the constraint raises :class:`ConstraintViolation` (exactly for
    rationals, beyond ``tol`` otherwise).
    """
    need = 1 + b + c + d - e - f - delta
    if g is None:
        g = need
    else:
        off = g - need
        if (off != 0) if _exact(b, c, d, e, f, g) else abs(off) > tol * (1 + abs(need)):
            raise ConstraintViolation(f"e+f+g+delta-b-c-d = {1 + off!r}, expected 1")
    t1 = b * (f - c) * (f - d) * (c - e - (1 + delta)) * p_delta(delta, b + 1, c, d, e, f + 1, g)
    t2 = ((g - b - 1) * ((e - b + delta) * (e - c) * (f - 1) - b * (f - c) * (1 + delta))
          * p_delta(delta, b, c, d, e, f, g))
    rhs = (delta + 1) * (e - c) * p_delta(delta + 1, b, c - 1, d, e, f - 1, g - 1)
    return t1 + t2 - rhs


def check_divisibility(delta: int, gamma: int, b, c, d, e, f, g) -> bool:
    """Exact check that, when one of ``b, c, d`` equals ``-gamma``,

        p_delta = (e+gamma)_{delta-gamma} (f+gamma)_{delta-gamma} (g+gamma)_{delta-gamma}
                  * p_delta_short(delta, gamma, ...).
    """
    if not _exact(b, c, d, e, f, g):
        raise PreconditionViolation("divisibility is checked over exact rationals only")
    if not (isinstance(gamma, int) and 0 <= gamma <= delta):
        raise PreconditionViolation("need 0 <= gamma <= delta")
    if -gamma not in (b, c, d):
        raise PreconditionViolation(f"none of b, c, d equals {-gamma}")
    r = delta - gamma
    factor = pochhammer(e + gamma, r) * pochhammer(f + gamma, r) * pochhammer(g + gamma, r)
    return p_delta(delta, b, c, d, e, f, g) == factor * p_delta_short(delta, gamma, b, c, d, e, f, g)
