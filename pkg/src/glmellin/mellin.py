"""Numerical evaluation of ``T_{n,a}(s)`` for ``n = 2, 3, 4``.

The transform is computed from the recursive Mellin-Barnes representation

    T_{n,a}(s) = Gamma(s_1 + a_1) Gamma(s_{n-1} - a_1) / (2 pi i)^{n-2}
                 * int prod_j Gamma(z_j + s_j) Gamma(z_j + s_{j+1} + a_1)
                       T_{n-1,b}((-z_j - j a_1/(n-1))_j) dz,

    b_j = a_{j+1} + a_1/(n-1),

with the ``GL(2)`` closed form ``Gamma(s_1 + a_1) Gamma(s_1 - a_1)`` as base
case.  Each integration variable runs over a vertical line; the lines are
placed by a small linear program that maximises the distance from every gamma
pole, and the integral is a plain trapezoid sum in the imaginary parts (gamma
products decay exponentially, so the rule converges geometrically).

For ``n = 4`` the inner ``T_3`` is by default replaced by its Barnes closed
form (see :func:`t3_closed`), which turns the double integral into a
correlation of two one-dimensional arrays against a kernel depending only on
``z_1 + z_2``.  ``method="recursive"`` keeps the full triple integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import ContourError, NonConvergence
from .gamma import log_gamma

__all__ = [
    "SpectralParams",
    "MellinPoint",
    "QuadratureConfig",
    "QuadratureInfo",
    "spectral_params",
    "shifted_params",
    "t2",
    "t3_closed",
    "eval_t",
    "quadrature_margin",
    "orientations",
]

_TWO_PI = 2.0 * math.pi
# window trimming: drop grid points whose weight is below peak * exp(-_TRIM)
_TRIM = 60.0


@dataclass(frozen=True)
class SpectralParams:
    """Spectral parameter ``a = (a_1, ..., a_n)`` with ``sum a_k = 0``."""

    a: tuple

    def __post_init__(self):
        a = tuple(complex(x) for x in self.a)
        if len(a) < 2:
            raise ValueError("need at least two spectral parameters")
        scale = 1.0 + max(abs(x) for x in a)
        if abs(sum(a)) > 1e-12 * scale:
            raise ValueError(f"spectral parameters must sum to zero, got {sum(a)!r}")
        object.__setattr__(self, "a", a)

    @classmethod
    def from_free(cls, free: Sequence) -> "SpectralParams":
        """Build from ``a_1 .. a_{n-1}``; ``a_n = -(a_1 + ... + a_{n-1})``."""
        free = [complex(x) for x in free]
        return cls((*free, -sum(free)))

    @property
    def n(self) -> int:
        return len(self.a)

    def __iter__(self):
        return iter(self.a)

    def __len__(self):
        return len(self.a)

    def __getitem__(self, i):
        return self.a[i]


@dataclass(frozen=True)
class MellinPoint:
    """Transform argument ``s = (s_1, ..., s_{n-1})``."""

    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(complex(x) for x in self.s))

    def __iter__(self):
        return iter(self.s)

    def __len__(self):
        return len(self.s)

    def __getitem__(self, i):
        return self.s[i]


def spectral_params(*free) -> tuple:
    """``(a_1, ..., a_{n-1}, a_n)`` completed so that the entries sum to zero."""
    return SpectralParams.from_free(free).a


def _vec(x) -> tuple:
    return tuple(complex(v) for v in x)


def _params(a, s=None):
    a = SpectralParams(tuple(a)).a
    if s is None:
        return a
    s = _vec(s)
    if len(s) != len(a) - 1:
        raise ValueError(f"s must have length n-1 = {len(a) - 1}, got {len(s)}")
    return a, s


def shifted_params(a) -> tuple:
    """The ``GL(n-1)`` parameter ``b_j = a_{j+1} + a_1/(n-1)``."""
    a = _vec(a)
    n = len(a)
    return tuple(a[j] + a[0] / (n - 1) for j in range(1, n))


@dataclass(frozen=True)
class QuadratureConfig:
    """Contour and trapezoid settings.

    ``contour_re`` overrides the automatic contour placement (one real part
    per integration variable).  ``margin`` is the minimum horizontal distance
    required between each contour and the nearest gamma pole.
    """

    contour_re: tuple | None = None
    height: float = 40.0
    step: float = 0.05
    rel_tol: float = 1e-6
    max_refinements: int = 3
    margin: float = 0.3

    def __post_init__(self):
        if not (self.height > 0 and self.step > 0 and self.rel_tol > 0):
            raise ValueError("height, step and rel_tol must be positive")
        if self.margin <= 0:
            raise ValueError("margin must be positive")


@dataclass
class QuadratureInfo:
    value: complex
    error: float
    contour: tuple
    margin: float
    step: float
    height: float
    refinements: int
    orientation: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# closed forms


def t2(a, s) -> complex:
    """``T_{2,a}(s) = Gamma(s_1 + a_1) Gamma(s_1 - a_1)``."""
    a, s = _params(a, s)
    return complex(np.exp(log_gamma(s[0] + a[0], principal=False)
                          + log_gamma(s[0] - a[0], principal=False)))


def t3_closed(a, s) -> complex:
    """Barnes closed form of ``T_{3,a}``:

        prod_k Gamma(s_1 + a_k) Gamma(s_2 - a_k) / Gamma(s_1 + s_2).
    """
    a, s = _params(a, s)
    args = [s[0] + ak for ak in a] + [s[1] - ak for ak in a]
    lg = np.sum(log_gamma(np.array(args), principal=False)) - log_gamma(s[0] + s[1], principal=False)
    return complex(np.exp(lg))


# ---------------------------------------------------------------------------
# contour placement
#
# a "form" (c, d) stands for the gamma argument  c . z + d  with z the vector
# of integration variables; its pole-free condition on the contour is
# Re(c . x + d) >= margin where x = Re z.


def _forms(a, s, method):
    n = len(a)
    a1 = a[0]
    if n == 3:
        b1 = a[1] + a1 / 2
        # Gamma(z+s1) Gamma(z+s2+a1) T2_b(-z - a1/2), T2_b(w) = Gamma(w+b1) Gamma(w-b1)
        return [((1,), s[0]), ((1,), s[1] + a1), ((-1,), -a1 / 2 + b1), ((-1,), -a1 / 2 - b1)]
    if n != 4:
        raise ValueError("quadrature is implemented for n = 3, 4")
    out = [((1, 0), s[0]), ((1, 0), s[1] + a1), ((0, 1), s[1]), ((0, 1), s[2] + a1)]
    # T3_b(w1, w2) with w_j = -z_j - j a1/3: Gamma(w1 + b_k), Gamma(w2 - b_k)
    b = shifted_params(a)
    if method == "barnes":
        out += [((-1, 0), -a1 / 3 + bk) for bk in b]
        out += [((0, -1), -2 * a1 / 3 - bk) for bk in b]
        return out
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    # recursive: T3_b(w) = Gamma(w1 + b1) Gamma(w2 - b1)
    #     * int Gamma(u + w1) Gamma(u + w2 + b1) T2_c(-u - b1/2) du,  c1 = b2 + b1/2
    b1 = b[0]
    c1 = b[1] + b1 / 2
    out += [((-1, 0, 0), -a1 / 3 + b1), ((0, -1, 0), -2 * a1 / 3 - b1)]
    out = [(tuple(c) + (0,) if len(c) == 2 else c, d) for c, d in out]
    out += [
        ((-1, 0, 1), -a1 / 3),             # Gamma(u + w1)
        ((0, -1, 1), -2 * a1 / 3 + b1),    # Gamma(u + w2 + b1)
        ((0, 0, -1), -b1 / 2 + c1),        # T2_c(-u - b1/2): Gamma(v + c1)
        ((0, 0, -1), -b1 / 2 - c1),        # Gamma(v - c1)
    ]
    return out


def _form_margins(forms, x):
    return [sum(ci * xi for ci, xi in zip(c, x)) + d.real for c, d in forms]


def _place_separable(c_mat, d_vec, nvar):
    # each form is +-z_i + d: the optimum is the midpoint of each pole gap
    if not np.all((np.abs(c_mat) == 1).sum(axis=1) == 1) or not np.all(np.abs(c_mat).sum(axis=1) == 1):
        return None
    x, margins = [], []
    for i in range(nvar):
        right = d_vec[c_mat[:, i] == 1]
        left = d_vec[c_mat[:, i] == -1]
        if right.size == 0 or left.size == 0:
            return None
        p, q = right.min(), left.min()
        x.append(0.5 * (q - p))
        margins.append(0.5 * (p + q))
    return tuple(float(v) for v in x), float(min(margins))


def _place(forms, nvar):
    """Maximise the minimal pole distance, then recentre each coordinate."""
    c_mat = np.array([c for c, _ in forms], dtype=float)
    d_vec = np.array([d.real for _, d in forms])
    separable = _place_separable(c_mat, d_vec, nvar)
    if separable is not None:
        return separable
    # variables (x, t): maximise t subject to c.x + d >= t
    a_ub = np.hstack([-c_mat, np.ones((len(forms), 1))])
    res = linprog(
        np.r_[np.zeros(nvar), -1.0], A_ub=a_ub, b_ub=d_vec,
        bounds=[(-1e3, 1e3)] * nvar + [(None, 1e3)], method="highs",
    )
    if res.status != 0:
        raise ContourError(f"contour placement failed: {res.message}")
    x = res.x[:nvar].copy()
    t = float(res.x[nvar])
    for _ in range(3):
        for i in range(nvar):
            lo, hi = -np.inf, np.inf
            for c, d in zip(c_mat, d_vec):
                if c[i] == 0:
                    continue
                rest = d + c @ x - c[i] * x[i]
                bound = (t - rest) / c[i]
                if c[i] > 0:
                    lo = max(lo, bound)
                else:
                    hi = min(hi, bound)
            if np.isfinite(lo) and np.isfinite(hi):
                x[i] = 0.5 * (lo + hi)
    margin = min(_form_margins(forms, x))
    return tuple(float(v) for v in x), margin


def orientations(a, s):
    """Equivalent ``(a, s)`` presentations of the same transform value.

    ``T`` is symmetric in the entries of ``a`` and invariant under
    ``(s, a) -> (reversed s, -a)``; the integral representation singles out
    ``a_1``, so moving a different entry to the front changes the contour
    geometry without changing the value.
    """
    n = len(a)
    seen = []
    for rev in (False, True):
        aa = tuple(-x for x in a) if rev else tuple(a)
        ss = tuple(reversed(s)) if rev else tuple(s)
        for k in range(n):
            order = (k, *[j for j in range(n) if j != k])
            cand = tuple(aa[j] for j in order)
            key = (cand, ss)
            if key in seen:
                continue
            seen.append(key)
            yield cand, ss, {"reversed": rev, "order": order}


def quadrature_margin(a, s, method="barnes", *, reorder=False):
    """Best achievable pole margin for the integral representation at ``s``.

    With ``reorder`` the best of :func:`orientations` is used.
    """
    a, s = _params(a, s)
    if len(a) == 2:
        return math.inf
    best = -math.inf
    cands = orientations(a, s) if reorder else [(a, s, {})]
    for aa, ss, _ in cands:
        forms = _forms(aa, ss, method)
        _, m = _place(forms, len(forms[0][0]))
        best = max(best, m)
    return best


# ---------------------------------------------------------------------------
# trapezoid sums


def _grid(height, step):
    n = int(math.ceil(height / step))
    n += n % 2  # keep t = 0 on the even sub-grid
    return step * np.arange(-n, n + 1), n


def _window(weight):
    """Index range carrying all weight above ``peak * exp(-_TRIM)``."""
    lw = np.log(np.maximum(weight, 1e-300))
    keep = np.nonzero(lw > lw.max() - _TRIM)[0]
    return keep[0], keep[-1] + 1


def _lg(args):
    return log_gamma(args, principal=False)


def _t3_sum(a, s, x, height, step):
    a1 = a[0]
    b1 = a[1] + a1 / 2
    t, _ = _grid(height, step)
    z = x[0] + 1j * t
    w = -z - a1 / 2
    lf = _lg(z + s[0]) + _lg(z + s[1] + a1) + _lg(w + b1) + _lg(w - b1)
    f = np.exp(lf)
    total = step * np.sum(f) / _TWO_PI
    half = step * np.sum(f[::2]) * 2 / _TWO_PI
    tail = step * np.sum(np.abs(f[np.abs(t) > height / 2])) / _TWO_PI
    return total, half, tail


def _t4_sum(a, s, x, height, step):
    a1 = a[0]
    b = shifted_params(a)
    t, n = _grid(height, step)
    z1 = x[0] + 1j * t
    z2 = x[1] + 1j * t
    w1 = -z1 - a1 / 3
    w2 = -z2 - 2 * a1 / 3
    lf1 = _lg(z1 + s[0]) + _lg(z1 + s[1] + a1) + sum(_lg(w1 + bk) for bk in b)
    lf2 = _lg(z2 + s[1]) + _lg(z2 + s[2] + a1) + sum(_lg(w2 - bk) for bk in b)
    # 1/Gamma(w1 + w2) grows at most like exp(pi |t1 + t2| / 2)
    grow = 0.5 * math.pi * np.abs(t)
    lo1, hi1 = _window(np.exp(lf1.real + grow - (lf1.real + grow).max()))
    lo2, hi2 = _window(np.exp(lf2.real + grow - (lf2.real + grow).max()))
    # keep t = 0 parity of the sub-grid: start windows on even offsets from centre
    lo1 -= (lo1 - n) % 2
    lo2 -= (lo2 - n) % 2
    f1 = np.exp(lf1[lo1:hi1])
    f2 = np.exp(lf2[lo2:hi2])
    # kernel over all sums (i + j) of window indices
    ksum = np.arange(lo1 + lo2, hi1 + hi2 - 1) - 2 * n
    wsum = -(x[0] + x[1]) - 1j * step * ksum - a1
    lr = -_lg(wsum)
    r = np.exp(np.minimum(lr.real, 700.0) + 1j * lr.imag)

    def corr(f1, f2, r):
        # sum_{i,j} f1[i] f2[j] r[i + j]
        r = r[: len(f1) + len(f2) - 1]
        g = np.convolve(r, f2[::-1], mode="valid")
        return np.dot(f1, g)

    scale = (step / _TWO_PI) ** 2
    total = scale * corr(f1, f2, r)
    half = 4 * scale * corr(f1[::2], f2[::2], r[::2])
    # tail: absolute weight outside |t| <= H/2
    t1 = t[lo1:hi1]
    t2_ = t[lo2:hi2]
    in1 = np.abs(t1) <= height / 2
    in2 = np.abs(t2_) <= height / 2
    abs_all = corr(np.abs(f1), np.abs(f2), np.abs(r))
    abs_in = corr(np.abs(f1) * in1, np.abs(f2) * in2, np.abs(r))
    tail = scale * max(abs_all - abs_in, 0.0)
    return total, half, tail


def _t4_recursive_sum(a, s, x, height, step):
    a1 = a[0]
    b = shifted_params(a)
    b1 = b[0]
    c1 = b[1] + b1 / 2
    t, _ = _grid(height, step)
    z2 = x[1] + 1j * t
    u = x[2] + 1j * t
    w2 = -z2 - 2 * a1 / 3
    lz2 = _lg(z2 + s[1]) + _lg(z2 + s[2] + a1) + _lg(w2 - b1)
    v = -u - b1 / 2
    lu = _lg(v + c1) + _lg(v - c1)
    # Gamma(u + w2 + b1) couples (z2, u)
    lzu = _lg(u[None, :] + w2[:, None] + b1)
    base = lz2[:, None] + lu[None, :] + lzu
    total = half = tail = 0.0
    inner = np.abs(t) <= height / 2
    for i, ti in enumerate(t):
        z1 = x[0] + 1j * ti
        w1 = -z1 - a1 / 3
        l1 = _lg(z1 + s[0]) + _lg(z1 + s[1] + a1) + _lg(w1 + b1)
        vals = np.exp(l1 + base + _lg(u + w1)[None, :])
        total += vals.sum()
        if i % 2 == 0:
            half += vals[::2, ::2].sum()
        if inner[i]:
            tail += np.abs(vals[np.ix_(~inner, np.ones_like(inner))]).sum()
            tail += np.abs(vals[np.ix_(inner, ~inner)]).sum()
        else:
            tail += np.abs(vals).sum()
    scale = (step / _TWO_PI) ** 3
    return scale * total, 8 * scale * half, scale * tail


def _prefactor(a, s):
    return log_gamma(s[0] + a[0], principal=False) + log_gamma(s[-1] - a[0], principal=False)


def _integrate(a, s, cfg, method):
    n = len(a)
    forms = _forms(a, s, method)
    nvar = len(forms[0][0])
    if cfg.contour_re is not None:
        x = tuple(float(v) for v in cfg.contour_re)
        if len(x) != nvar:
            raise ContourError(f"contour_re needs {nvar} entries")
        margin = min(_form_margins(forms, x))
        if margin <= 0:
            raise ContourError("supplied contour does not separate the poles")
    else:
        x, margin = _place(forms, nvar)
        if margin < cfg.margin - 1e-12:
            raise ContourError(
                f"no contour with pole margin {cfg.margin} (best {margin:.4g}) at s={s}"
            )
    kernel = {3: _t3_sum, 4: _t4_sum}[n] if method == "barnes" or n == 3 else _t4_recursive_sum
    pref = np.exp(_prefactor(a, s))
    height, step = cfg.height, cfg.step
    for level in range(cfg.max_refinements + 1):
        total, half, tail = kernel(a, s, x, height, step)
        scale = abs(total)
        err = max(abs(total - half), tail) / scale if scale > 0 else math.inf
        if err <= cfg.rel_tol:
            return QuadratureInfo(
                value=complex(pref * total), error=float(err), contour=x, margin=float(margin),
                step=step, height=height, refinements=level,
            )
        height, step = 2 * height, step / 2
    raise NonConvergence(f"quadrature error estimate {err:.3g} above rel_tol {cfg.rel_tol}")


def eval_t(a, s, cfg: QuadratureConfig | None = None, *, method="barnes",
           reorder=False, full_output=False):
    """``T_{n,a}(s)`` for ``n = 2, 3, 4``.

    Parameters
    ----------
    a : sequence of complex
        Full spectral vector (length ``n``, zero sum).
    s : sequence of complex
        Point of length ``n - 1``.
    cfg : QuadratureConfig, optional
    method : {"barnes", "recursive"}
        ``n = 4`` only: use the closed-form ``T_3`` inside the double integral,
        or nest a third quadrature.
    reorder : bool
        Evaluate through whichever equivalent presentation (permutation of
        ``a``, reversal) gives the widest pole margin.
    full_output : bool
        Also return a :class:`QuadratureInfo`.

    Raises
    ------
    ContourError
        If no contour keeps ``cfg.margin`` away from the poles.
    NonConvergence
        If the error estimate does not reach ``cfg.rel_tol``.
    """
    cfg = cfg or QuadratureConfig()
    a, s = _params(a, s)
    n = len(a)
    if n == 2:
        val = t2(a, s)
        info = QuadratureInfo(value=val, error=0.0, contour=(), margin=math.inf,
                              step=0.0, height=0.0, refinements=0)
        return (val, info) if full_output else val
    if n not in (3, 4):
        raise ValueError("numeric evaluation is implemented for n <= 4")
    orient = {"reversed": False, "order": tuple(range(n))}
    aa, ss = a, s
    if reorder and cfg.contour_re is None:
        best = -math.inf
        for ca, cs, meta in orientations(a, s):
            forms = _forms(ca, cs, method)
            _, m = _place(forms, len(forms[0][0]))
            if m > best + 1e-12:
                best, aa, ss, orient = m, ca, cs, meta
    info = _integrate(aa, ss, cfg, method)
    info.orientation = orient
    return (info.value, info) if full_output else info.value


def coarse_config(**kw) -> QuadratureConfig:
    """Settings suited to the triple-integral cross-check."""
    base = QuadratureConfig(height=10.0, step=0.1, rel_tol=1e-4, max_refinements=1)
    return replace(base, **kw)
