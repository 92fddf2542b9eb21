"""Binary-sequence index sets and the general-n shift relation.

For ``n >= 2`` the Mellin transform satisfies

    sum_{mu in U_{n-1}} (prod_{k in I_mu} m_k) T_{n,a}(s + mu) = 0,

    m_k = 1 / ((s_{k-1} - s_k - a_1)(s_k - s_{k+1} - a_1)),   s_0 = s_n = 0,

where ``U_m`` is the set of 0/1 strings of length ``m`` without two adjacent
ones and ``I_mu`` the positions of the ones.  The relation is a consequence
of the polynomial identity ``sum_mu prod_{k in I_mu} alpha_k = 0`` checked by
:func:`lemma_sum`.

All coefficient code uses plain arithmetic, so ``fractions.Fraction`` inputs
give exact results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DegenerateDenominator

__all__ = [
    "DENOM_EPS",
    "ShiftRelation",
    "enumerate_no_adjacent",
    "alpha_coefficient",
    "lemma_terms",
    "lemma_sum",
    "m_coefficient",
    "build_recurrence",
]

#: each denominator factor must exceed this in absolute value
DENOM_EPS = 1e-10


def enumerate_no_adjacent(m: int) -> list[tuple[int, ...]]:
    """All 0/1 tuples of length ``m`` with no two adjacent ones, in
    lexicographic order."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return [
        bits
        for bits in itertools.product((0, 1), repeat=m)
        if not any(x and y for x, y in zip(bits, bits[1:]))
    ]


def _checked(factor):
    if abs(factor) <= DENOM_EPS:
        raise DegenerateDenominator(f"denominator factor {factor!r} too close to zero")
    return factor


def alpha_coefficient(k: int, n: int, a1, s: Sequence, z: Sequence):
    """The lemma coefficient

        alpha_k = (z_{k-1} + s_k + a_1)(z_k + s_k)
                  / ((s_{k-1} - s_k - a_1)(s_k - s_{k+1} - a_1))

    with ``z_0 = s_0 = s_n = 0`` and ``z_{n-1} = -a_1``.  ``s`` has length
    ``n - 1`` and ``z`` length ``n - 2`` (both 1-based in the formula).
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}")
    if len(s) != n - 1 or len(z) != n - 2:
        raise ValueError("s must have length n-1 and z length n-2")
    sp = [0, *s, 0]
    zp = [0, *z, -a1]
    num = (zp[k - 1] + sp[k] + a1) * (zp[k] + sp[k])
    den = _checked(sp[k - 1] - sp[k] - a1) * _checked(sp[k] - sp[k + 1] - a1)
    return num / den


def lemma_terms(n: int, a1, s: Sequence, z: Sequence) -> list:
    """The summands ``prod_{k in I_mu} alpha_k``, one per ``mu in U_{n-1}``."""
    alphas = [alpha_coefficient(k, n, a1, s, z) for k in range(1, n)]
    terms = []
    for mu in enumerate_no_adjacent(n - 1):
        t = 1
        for k, bit in enumerate(mu):
            if bit:
                t = t * alphas[k]
        terms.append(t)
    return terms


def lemma_sum(n: int, a1, s: Sequence, z: Sequence):
    """``sum_{mu in U_{n-1}} prod_{k in I_mu} alpha_k``; identically zero."""
    return sum(lemma_terms(n, a1, s, z))


def m_coefficient(k: int, a1, s: Sequence):
    """``m_k = 1/((s_{k-1} - s_k - a_1)(s_k - s_{k+1} - a_1))``, ``s_0 = s_n = 0``."""
    sp = [0, *s, 0]
    return 1 / (_checked(sp[k - 1] - sp[k] - a1) * _checked(sp[k] - sp[k + 1] - a1))


@dataclass(frozen=True)
class ShiftRelation:
    """A linear relation ``sum_i c_i(a, s) T(s + shift_i) = 0``.

    ``terms`` holds ``(shift, coefficient)`` pairs; each coefficient is a
    callable of the full spectral vector ``a`` and the point ``s``.
    """

    n: int
    terms: tuple[tuple[tuple[int, ...], Callable], ...]

    @property
    def shifts(self) -> list[tuple[int, ...]]:
        return [shift for shift, _ in self.terms]

    def coefficients(self, a, s) -> list:
        return [coef(a, s) for _, coef in self.terms]

    def residual(self, a, s, t: Callable) -> tuple:
        """Evaluate the relation with ``t(point)`` supplying transform values.

        Returns ``(sum, max_abs_term)`` so callers can form a relative residual.
        """
        total = 0
        biggest = 0.0
        for shift, coef in self.terms:
            point = tuple(x + d for x, d in zip(s, shift))
            term = coef(a, s) * t(point)
            total = total + term
            biggest = max(biggest, abs(term))
        return total, biggest


def _product_coefficient(mu):
    ks = [k + 1 for k, bit in enumerate(mu) if bit]

    def coef(a, s):
        out = 1
        for k in ks:
            out = out * m_coefficient(k, a[0], s)
        return out

    return coef


def build_recurrence(n: int) -> ShiftRelation:
    """The ``F_{n+1}``-term shift relation for ``T_{n,a}``.

    The zero shift comes first and carries coefficient 1.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    return ShiftRelation(
        n=n,
        terms=tuple((mu, _product_coefficient(mu)) for mu in enumerate_no_adjacent(n - 1)),
    )
