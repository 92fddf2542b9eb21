"""Complex log-gamma, gamma and Pochhammer primitives.

The numeric path is a Lanczos approximation (Godfrey's g = 607/128 set,
fifteen terms) on ``Re z >= 1/2``, extended by the reflection formula.  Everything is
vectorised over numpy arrays because the quadrature engine evaluates millions
of gamma factors along contour grids.

``pochhammer`` is written with plain arithmetic so that it also works on
:class:`fractions.Fraction` inputs; the exact-rational identity checks rely on
that.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import PoleError

__all__ = ["POLE_EPS", "log_gamma", "gamma", "pochhammer", "log_sin_pi"]

#: distance to a nonpositive integer below which gamma raises PoleError
POLE_EPS = 1e-12

_G = 607.0 / 128.0
_COEF = np.array([
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_TWO_PI = 2.0 * math.pi


def _lanczos(z):
    # log Gamma(z) for Re z >= 1/2, continuous branch
    z = z - 1.0
    x = np.full(z.shape, _COEF[0], dtype=complex)
    for i in range(1, len(_COEF)):
        x = x + _COEF[i] / (z + i)
    t = z + (_G + 0.5)
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(x)


def log_sin_pi(z):
    """A logarithm of ``sin(pi z)``, accurate near the integers and for large
    ``|Im z|`` where ``sin`` itself would overflow.

    The branch is unspecified (results agree modulo ``2 pi i``).
    """
    z = np.asarray(z, dtype=complex)
    n = np.round(z.real)
    w = z - n  # exact: |Re w| <= 1/2
    parity = np.where(np.mod(n, 2.0) != 0.0, 1j * math.pi, 0.0)
    out = np.empty(z.shape, dtype=complex)
    small = np.abs(w.imag) <= 1.0
    if np.any(small):
        out[small] = np.log(np.sin(math.pi * w[small]))
    big = ~small
    if np.any(big):
        wb = w[big]
        flip = wb.imag < 0
        wb = np.where(flip, np.conj(wb), wb)
        # sin(pi w) = (i/2) exp(-i pi w) (1 - exp(2 i pi w)),  Im w > 0
        val = np.log(0.5j) - 1j * math.pi * wb + np.log1p(-np.exp(2j * math.pi * wb))
        out[big] = np.where(flip, np.conj(val), val)
    return out + parity


def _check_poles(z):
    n = np.round(z.real)
    near = (n <= 0) & (np.abs(z - n) < POLE_EPS)
    if np.any(near):
        bad = z[near].ravel()[0]
        raise PoleError(f"gamma pole at z = {bad!r}")


def _wrap(lg):
    im = lg.imag - _TWO_PI * np.round(lg.imag / _TWO_PI)
    return lg.real + 1j * im


def _log_gamma_array(z, principal):
    _check_poles(z)
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    if np.any(right):
        out[right] = _lanczos(z[right])
    left = ~right
    if np.any(left):
        zl = z[left]
        out[left] = _LOG_PI - log_sin_pi(zl) - _lanczos(1.0 - zl)
    return _wrap(out) if principal else out


def log_gamma(z, *, principal=True):
    """Complex ``log Gamma(z)``.

    Parameters
    ----------
    z : complex or array_like
    principal : bool, optional
        If true (default) the imaginary part is reduced to ``(-pi, pi]``, i.e.
        the principal logarithm of ``Gamma(z)``.  Pass ``False`` inside sums
        where only ``exp`` of the result matters; that skips the reduction.

    Raises
    ------
    PoleError
        If any entry lies within ``POLE_EPS`` of ``0, -1, -2, ...``.
    """
    arr = np.asarray(z, dtype=complex)
    out = _log_gamma_array(np.atleast_1d(arr), principal)
    if arr.ndim == 0:
        return complex(out[0])
    return out


def gamma(z):
    """Complex gamma function (``exp`` of :func:`log_gamma`)."""
    arr = np.asarray(z, dtype=complex)
    with np.errstate(over="ignore"):
        out = np.exp(_log_gamma_array(np.atleast_1d(arr), False))
    if arr.ndim == 0:
        return complex(out[0])
    return out


def pochhammer(a, kappa):
    """``(a)_kappa = (a + kappa - 1)(a + kappa - 2) ... (a + 1) a``, ``(a)_0 = 1``.

    A literal product for ``kappa <= 64`` or for exact rational ``a``; above
    that a log-gamma ratio.  Exact inputs give exact outputs.
    """
    kappa = int(kappa)
    if kappa < 0:
        raise ValueError("kappa must be a nonnegative integer")
    if kappa <= 64 or isinstance(a, (Fraction, Rational)):
        out = 1
        for i in range(kappa - 1, -1, -1):
            out = out * (a + i)
        return out
    return complex(np.exp(log_gamma(a + kappa, principal=False) - log_gamma(a, principal=False)))
