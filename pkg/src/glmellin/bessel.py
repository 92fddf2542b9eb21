"""K-Bessel cross-checks for the vertical-line quadrature.

Two independent representations of ``K_nu(y)``:

* the Mellin-Barnes line integral
  ``(1/4) (2 pi i)^{-1} int Gamma((s + nu)/2) Gamma((s - nu)/2) (y/2)^{-s} ds``,
  summed with the same trapezoid machinery the transform engine uses, and
* ``K_nu(y) = int_0^inf exp(-y cosh u) cosh(nu u) du`` (the ``t = e^u`` form of
  the exponential integral), handled by adaptive real-line quadrature.

``w2_check`` compares ``2 sqrt(y) K_{2 a_1}(2 pi y)`` with the inverse Mellin
transform of ``T_2``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .errors import ContourError, NonConvergence
from .gamma import log_gamma
from .mellin import QuadratureConfig

__all__ = ["bessel_k_mb", "bessel_k_exp", "w2_check"]


def _line_integral(log_integrand, c, cfg):
    """``(2 pi)^{-1} int f(c + i t) dt`` by refined trapezoid sums."""
    height, step = cfg.height, cfg.step
    for _ in range(cfg.max_refinements + 1):
        n = int(math.ceil(height / step))
        n += n % 2
        t = step * np.arange(-n, n + 1)
        with np.errstate(under="ignore"):
            f = np.exp(log_integrand(c + 1j * t))
        total = step * np.sum(f) / (2 * math.pi)
        half = 2 * step * np.sum(f[::2]) / (2 * math.pi)
        tail = step * np.sum(np.abs(f[np.abs(t) > height / 2])) / (2 * math.pi)
        err = max(abs(total - half), tail) / max(abs(total), 1e-300)
        if err <= cfg.rel_tol:
            return complex(total)
        height, step = 2 * height, step / 2
    raise NonConvergence(f"line integral did not converge (estimated error {err:.3g})")


def _contour(cfg, rightmost_pole):
    if cfg.contour_re is None:
        return rightmost_pole + 1.0
    c = float(cfg.contour_re[0])
    if c < rightmost_pole + cfg.margin:
        raise ContourError(f"Re s = {c} is not to the right of the poles at Re s = {rightmost_pole}")
    return c


def bessel_k_mb(nu, y, cfg: QuadratureConfig | None = None) -> complex:
    """``K_nu(y)`` from its Mellin-Barnes integral.

    Parameters
    ----------
    nu : complex
        Order.
    y : float
        Positive argument.
    cfg : QuadratureConfig, optional
        ``contour_re[0]``, if given, fixes ``Re s``; it must clear the
        rightmost pole ``Re s = |Re nu|`` by ``cfg.margin``.
    """
    if not y > 0:
        raise ValueError("y must be positive")
    cfg = cfg or QuadratureConfig(rel_tol=1e-12)
    nu = complex(nu)
    c = _contour(cfg, abs(nu.real))
    log_half_y = math.log(y / 2)

    def logf(s):
        return (log_gamma((s + nu) / 2, principal=False)
                + log_gamma((s - nu) / 2, principal=False) - s * log_half_y)

    return _line_integral(logf, c, cfg) / 4


def bessel_k_exp(nu, y) -> complex:
    """``K_nu(y) = int_0^inf exp(-y cosh u) cosh(nu u) du`` for ``Re y > 0``.

    Real and imaginary parts are integrated separately with
    :func:`scipy.integrate.quad`; the range is cut where ``y cosh u`` exceeds
    the double-precision underflow threshold.
    """
    nu = complex(nu)
    y = complex(y)
    if not y.real > 0:
        raise ValueError("Re y must be positive")
    # exp(-Re(y) cosh u + |Re nu| u) < 1e-300 beyond this point
    upper = math.acosh(max(1.0, (750.0 + 2 * abs(nu.real) * 10) / y.real))
    upper = max(upper, 1.0)

    def part(fn):
        val, _ = quad(fn, 0.0, upper, epsabs=0.0, epsrel=1e-13, limit=400)
        return val

    def integrand(u):
        return np.exp(-y * math.cosh(u)) * np.cosh(nu * u)

    return complex(part(lambda u: integrand(u).real), part(lambda u: integrand(u).imag))


def w2_check(a1, y, cfg: QuadratureConfig | None = None) -> tuple:
    """Both sides of ``W_2``'s Mellin pair at ``y``.

    ``lhs = 2 sqrt(y) K_{2 a_1}(2 pi y)`` (exponential integral) and
    ``rhs = sqrt(y) (2 pi i)^{-1} int T_2(s) (pi y)^{-2s} ds`` with
    ``T_2(s) = Gamma(s + a_1) Gamma(s - a_1)``.
    """
    if not y > 0:
        raise ValueError("y must be positive")
    cfg = cfg or QuadratureConfig(rel_tol=1e-12)
    a1 = complex(a1)
    lhs = 2 * math.sqrt(y) * bessel_k_exp(2 * a1, 2 * math.pi * y)
    c = _contour(cfg, abs(a1.real))
    log_pi_y = math.log(math.pi * y)

    def logf(s):
        return (log_gamma(s + a1, principal=False) + log_gamma(s - a1, principal=False)
                - 2 * s * log_pi_y)

    rhs = math.sqrt(y) * _line_integral(logf, c, cfg)
    return lhs, rhs
