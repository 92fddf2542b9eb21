"""Closed-form residues of ``T_{4,a}(s)``.

Single residues are available for every pole family; double and triple
residues for the index choices

    s1 = -a1 - d1,   s2 = -a1 - a4 - d2,   s3 = a2 - d3  (s1 s3 pair),
    s3 = a3 - d3  (s2 s3 pair and the triple residue).

Other index choices follow by permuting ``a`` before the call, since ``T_4``
is symmetric in ``a``.

Indices ``m, n`` are 1-based.  Gamma factors are combined in log space; a
factor at a gamma pole raises :class:`~glmellin.errors.GammaPole`, and
``1/Gamma`` at a pole evaluates to zero.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .errors import GammaPole, IllConditioned, PoleError
from .gamma import log_gamma, pochhammer
from .pdelta import p_delta

__all__ = [
    "GENERIC_EPS",
    "check_generic",
    "residue_s1",
    "residue_s2",
    "residue_s3",
    "residue_s1s2",
    "residue_s1s3",
    "residue_s2s3",
    "residue_s1s2s3",
    "poly_f",
    "poly_g",
    "poly_h",
    "degree_bound",
    "certify_degree",
]

GENERIC_EPS = 1e-6


def check_generic(a, delta_max: int) -> None:
    """Raise :class:`GammaPole` unless ``|a_j - a_k - l| > GENERIC_EPS`` for all
    ``j != k`` and integers ``|l| <= delta_max + 2``."""
    a = [complex(x) for x in a]
    for j in range(4):
        for k in range(4):
            if j == k:
                continue
            diff = a[j] - a[k]
            for ell in range(-delta_max - 2, delta_max + 3):
                if abs(diff - ell) <= GENERIC_EPS:
                    raise GammaPole(f"a_{j + 1} - a_{k + 1} = {diff!r} is (nearly) the integer {ell}")


def _gamma_product(num, den=()):
    """``prod Gamma(num) / prod Gamma(den)``."""
    try:
        lg = sum(log_gamma(complex(z), principal=False) for z in num)
    except PoleError as exc:
        raise GammaPole(str(exc)) from None
    for z in den:
        z = complex(z)
        k = round(z.real)
        if k <= 0 and abs(z - k) < 1e-12:
            return 0j
        lg -= log_gamma(z, principal=False)
    return complex(np.exp(lg))


def _others(exclude):
    return [k for k in range(4) if k not in exclude]


def _idx(m):
    if m not in (1, 2, 3, 4):
        raise ValueError("indices are 1-based in 1..4")
    return m - 1


def _a(a):
    a = tuple(complex(x) for x in a)
    if len(a) != 4:
        raise ValueError("need four spectral parameters")
    return a


def _depths(*ds):
    for d in ds:
        if not (isinstance(d, int) and d >= 0):
            raise ValueError("depths must be nonnegative integers")


def residue_s1(a, m: int, delta1: int, s2, s3) -> complex:
    """Residue at ``s1 = -a_m - delta1``."""
    a = _a(a)
    _depths(delta1)
    check_generic(a, delta1)
    i = _idx(m)
    n, p, q = _others([i])
    am = a[i]
    num = []
    for k in (n, p, q):
        num += [a[k] - am - delta1, s3 - a[k], s2 + a[k] + am]
    g = _gamma_product(num, [s2 + s3 + am + delta1])
    poly = p_delta(delta1, s3 - a[n], s3 - a[p], s3 - a[q],
                   s2 + s3 + am, 1 + am - s2 + s3, s3 - am - delta1)
    return g * poly


def residue_s2(a, m: int, n: int, delta2: int, s1, s3) -> complex:
    """Residue at ``s2 = -a_m - a_n - delta2``."""
    a = _a(a)
    _depths(delta2)
    check_generic(a, delta2)
    i, j = _idx(m), _idx(n)
    if i == j:
        raise ValueError("m and n must differ")
    p, q = _others([i, j])
    num = [s1 + a[i], s1 + a[j]]
    for k in (p, q):
        num += [s3 - a[k], a[k] - a[i] - delta2, a[k] - a[j] - delta2]
    g = _gamma_product(num)
    poly = p_delta(delta2, s1 + a[i], a[p] - a[j] - delta2, s3 - a[q],
                   1 + a[i] - a[q], s1 + a[p] - delta2, s3 - a[j] - delta2)
    return g * poly


def residue_s3(a, m: int, delta3: int, s1, s2) -> complex:
    """Residue at ``s3 = a_m - delta3``."""
    a = _a(a)
    _depths(delta3)
    check_generic(a, delta3)
    i = _idx(m)
    n, p, q = _others([i])
    am = a[i]
    num = []
    for k in (n, p, q):
        num += [am - a[k] - delta3, s1 + a[k], s2 - a[k] - am]
    g = _gamma_product(num, [s1 + s2 - am + delta3])
    poly = p_delta(delta3, s1 + a[n], s1 + a[p], s1 + a[q],
                   s1 + s2 - am, 1 - am - s2 + s1, s1 + am - delta3)
    return g * poly


# ---------------------------------------------------------------------------
# double and triple residues


def _gamma_ratio(x, d_num, d_den):
    """``Gamma(x - d_num) / Gamma(x - d_den)`` for integers ``d_num, d_den``."""
    if d_num >= d_den:
        return 1 / pochhammer(x - d_num, d_num - d_den)
    return pochhammer(x - d_den, d_den - d_num)


def poly_f(a, delta1: int, delta2: int, s3) -> complex:
    """Polynomial factor of the ``(s1, s2)`` residue, as a function of ``s3``."""
    a1, a2, a3, a4 = _a(a)
    ratio = _gamma_ratio(a2 - a1, delta2, delta1) * _gamma_ratio(a3 - a1, delta2, delta1)
    p = p_delta(delta2, -delta1, a2 - a4 - delta2, s3 - a3,
                1 + a1 - a3, a2 - a1 - delta1 - delta2, s3 - a4 - delta2)
    return (-1) ** delta1 / math.factorial(delta1) * ratio * p


def poly_g(a, delta1: int, delta3: int, s2) -> complex:
    """Polynomial factor of the ``(s1, s3)`` residue, as a function of ``s2``."""
    a1, a2, a3, a4 = _a(a)
    y = s2 + a1 + a2
    ratio = _gamma_ratio(y, 0, delta3 - delta1)
    p = p_delta(delta1, -delta3, a2 - a3 - delta3, a2 - a4 - delta3,
                s2 + a1 + a2 - delta3, 1 + a1 + a2 - s2 - delta3, a2 - a1 - delta1 - delta3)
    return (-1) ** delta3 / math.factorial(delta3) * ratio * p


def poly_h(a, delta2: int, delta3: int, s1) -> complex:
    """Polynomial factor of the ``(s2, s3)`` residue, as a function of ``s1``."""
    a1, a2, a3, a4 = _a(a)
    ratio = _gamma_ratio(a3 - a1, delta2, delta3) * _gamma_ratio(a3 - a4, delta2, delta3)
    p = p_delta(delta2, s1 + a1, a2 - a4 - delta2, -delta3,
                1 + a1 - a3, s1 + a2 - delta2, a3 - a4 - delta2 - delta3)
    return (-1) ** delta3 / math.factorial(delta3) * ratio * p


def residue_s1s2(a, delta1: int, delta2: int, s3) -> complex:
    """Residue at ``s1 = -a1 - delta1`` of the residue at ``s2 = -a1 - a4 - delta2``."""
    a = _a(a)
    _depths(delta1, delta2)
    check_generic(a, max(delta1, delta2))
    a1, a2, a3, a4 = a
    num = [a4 - a1 - delta1]
    for k in (a2, a3):
        num += [s3 - k, k - a1 - delta2, k - a4 - delta2]
    g = _gamma_product(num)
    p = p_delta(delta2, -delta1, a2 - a4 - delta2, s3 - a3,
                1 + a1 - a3, a2 - a1 - delta1 - delta2, s3 - a4 - delta2)
    return (-1) ** delta1 / math.factorial(delta1) * g * p


def residue_s1s3(a, delta1: int, delta3: int, s2) -> complex:
    """Residue at ``s3 = a2 - delta3`` of the residue at ``s1 = -a1 - delta1``."""
    a = _a(a)
    _depths(delta1, delta3)
    check_generic(a, max(delta1, delta3))
    a1, a2, a3, a4 = a
    num = [a2 - a1 - delta1, s2 + a1 + a2]
    for k in (a3, a4):
        num += [k - a1 - delta1, a2 - k - delta3, s2 + a1 + k]
    g = _gamma_product(num, [s2 + a1 + a2 + delta1 - delta3])
    p = p_delta(delta1, -delta3, a2 - a3 - delta3, a2 - a4 - delta3,
                s2 + a1 + a2 - delta3, 1 + a1 + a2 - s2 - delta3, a2 - a1 - delta1 - delta3)
    return (-1) ** delta3 / math.factorial(delta3) * g * p


def residue_s2s3(a, delta2: int, delta3: int, s1) -> complex:
    """Residue at ``s3 = a3 - delta3`` of the residue at ``s2 = -a1 - a4 - delta2``."""
    a = _a(a)
    _depths(delta2, delta3)
    check_generic(a, max(delta2, delta3))
    a1, a2, a3, a4 = a
    num = [a3 - a2 - delta3]
    for j in (a1, a4):
        num += [s1 + j, a2 - j - delta2, a3 - j - delta2]
    g = _gamma_product(num)
    p = p_delta(delta2, s1 + a1, a2 - a4 - delta2, -delta3,
                1 + a1 - a3, s1 + a2 - delta2, a3 - a4 - delta2 - delta3)
    return (-1) ** delta3 / math.factorial(delta3) * g * p


def residue_s1s2s3(a, delta1: int, delta2: int, delta3: int) -> complex:
    """Residue at ``s3 = a3 - delta3`` of :func:`residue_s1s2`."""
    a = _a(a)
    _depths(delta1, delta2, delta3)
    check_generic(a, max(delta1, delta2, delta3))
    a1, a2, a3, a4 = a
    num = [a4 - a1 - delta1, a3 - a2 - delta3]
    for k in (a2, a3):
        num += [k - a1 - delta2, k - a4 - delta2]
    g = _gamma_product(num)
    p = p_delta(delta2, -delta1, a2 - a4 - delta2, -delta3,
                1 + a1 - a3, a2 - a1 - delta1 - delta2, a3 - a4 - delta2 - delta3)
    sign = (-1) ** (delta1 + delta3)
    return sign / (math.factorial(delta1) * math.factorial(delta3)) * g * p


# ---------------------------------------------------------------------------
# degree certification

_POLYS = {"f": poly_f, "g": poly_g, "h": poly_h}


def degree_bound(which: str, deltas) -> int:
    """``2 d1 + d2`` for f, ``2 d1 + d3`` for g, ``d2 + 2 d3`` for h."""
    d_a, d_b = deltas
    return d_a + 2 * d_b if which == "h" else 2 * d_a + d_b


def _detected_degree(values, radius, rel):
    coef = np.fft.fft(values) / len(values)
    mags = np.abs(coef)
    top = mags.max()
    if not np.isfinite(top) or top == 0:
        raise IllConditioned("polynomial samples are zero or non-finite")
    above = np.nonzero(mags > rel * top)[0]
    return int(above.max()), coef / radius ** np.arange(len(coef))


def certify_degree(which: str, deltas, a, *, mode: str = "free", center=0.3 + 0.2j,
                   radius: float = 1.5, rel: float = 1e-8, seed: int = 0) -> tuple:
    """Numerically detected degree of ``f``, ``g`` or ``h``.

    ``mode="free"`` samples the polynomial in its free variable on a circle;
    ``mode="total"`` moves the free variable and ``a`` together along a
    random line (``a`` kept on the zero-sum plane), bounding the total degree.
    Samples are taken at ``bound + 2 (d_a + d_b) + 3`` equispaced nodes and
    transformed by FFT; coefficients below ``rel`` times the largest count as
    zero.

    Returns
    -------
    degree, ok : int, bool
        ``ok`` is ``degree <= bound``.
    """
    if which not in _POLYS:
        raise ValueError("which must be 'f', 'g' or 'h'")
    if radius < 1e-3:
        raise IllConditioned("interpolation circle too small")
    d_a, d_b = (int(x) for x in deltas)
    bound = degree_bound(which, (d_a, d_b))
    fn = _POLYS[which]
    a = _a(a)
    check_generic(a, max(d_a, d_b))
    count = bound + 2 * (d_a + d_b) + 3
    nodes = np.exp(2j * math.pi * np.arange(count) / count)
    if mode == "free":
        vals = [fn(a, d_a, d_b, center + radius * w) for w in nodes]
    elif mode == "total":
        rng = random.Random(seed)
        u = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3)]
        u.append(-sum(u))
        scale = 0.05
        vals = []
        for w in nodes:
            t = radius * w
            aa = tuple(x + scale * t * d for x, d in zip(a, u))
            vals.append(fn(aa, d_a, d_b, center + t))
    else:
        raise ValueError("mode must be 'free' or 'total'")
    degree, _ = _detected_degree(np.array(vals, dtype=complex), radius, rel)
    return degree, degree <= bound
