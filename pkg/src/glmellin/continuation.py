"""Meromorphic continuation of ``T_{4,a}`` and pole bookkeeping.

``T_{4,a}(s)`` has poles exactly on

    s1 = -a_m - delta,   s2 = -a_m - a_n - delta,   s3 = a_m - delta   (delta >= 0).

Away from them the shift relations of :mod:`glmellin.gl4` express ``T(s)``
through values further to the right.  :func:`continue_t4` applies them
recursively (memoised over lattice offsets) until every argument lies in a
region where the quadrature of :func:`glmellin.mellin.eval_t` is valid.

:func:`numeric_residue` integrates the continued transform around a small
circle; it serves as the independent oracle for the closed-form residues.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    AmbiguousClassification,
    CircleTooLarge,
    HypothesisFailure,
    PoleHit,
    PreconditionViolation,
)
from .gl4 import RECONSTRUCTIONS, Gl4Point, hypotheses_hold
from .mellin import QuadratureConfig, eval_t

__all__ = [
    "CLASSIFY_TOL",
    "MAX_DEPTH",
    "PoleLocation",
    "PoleClassification",
    "ContinuationPlan",
    "ResidueSpec",
    "classify_point",
    "interior",
    "continue_t4",
    "pole_location",
    "nearest_other_pole",
    "safe_radius",
    "contour_residue",
    "numeric_residue",
]

CLASSIFY_TOL = 1e-9
MAX_DEPTH = 10
PAIRS = tuple(itertools.combinations(range(4), 2))


@dataclass(frozen=True)
class PoleLocation:
    """``variable`` in {1, 2, 3}; ``indices`` are 1-based (one index, or a pair for ``s2``)."""

    variable: int
    indices: tuple
    depth: int

    def to_dict(self) -> dict:
        return {"variable": f"s{self.variable}", "indices": list(self.indices), "depth": self.depth}


@dataclass(frozen=True)
class PoleClassification:
    poles: tuple = ()

    @property
    def regular(self) -> bool:
        return not self.poles

    def to_dict(self) -> dict:
        if self.regular:
            return {"regular": True, "poles": [], "note": "no polar divisor through this point"}
        return {"regular": False, "poles": [p.to_dict() for p in self.poles]}


def _depth(d, tol):
    """``d`` as a nonnegative integer if it is one within ``tol``, else None."""
    k = round(d.real)
    if k >= 0 and abs(d - k) < tol:
        return int(k)
    return None


def _families(a):
    """(variable, 1-based indices, offset c) with poles at ``s_var = c - delta``."""
    out = [(1, (m + 1,), -a[m]) for m in range(4)]
    out += [(2, (m + 1, n + 1), -a[m] - a[n]) for m, n in PAIRS]
    out += [(3, (m + 1,), a[m]) for m in range(4)]
    return out


def classify_point(a, s, tol: float = CLASSIFY_TOL) -> PoleClassification:
    """Which pole families pass through ``s``.

    Raises
    ------
    AmbiguousClassification
        If two families of the same variable match at once.
    """
    a = tuple(complex(x) for x in a)
    s = tuple(complex(x) for x in s)
    hits = {}
    for var, idx, c in _families(a):
        d = _depth(c - s[var - 1], tol)
        if d is not None:
            hits.setdefault(var, []).append(PoleLocation(var, idx, d))
    poles = []
    for var in sorted(hits):
        if len(hits[var]) > 1:
            raise AmbiguousClassification(
                f"s{var} lies on several pole families: {[p.to_dict() for p in hits[var]]}")
        poles.append(hits[var][0])
    return PoleClassification(tuple(poles))


def interior(a, s, tau: float) -> bool:
    """``Re(s1 + a_k)``, ``Re(s2 + a_j + a_k)`` and ``Re(s3 - a_k)`` all at least ``tau``.

    Inside this region the Mellin-Barnes contours can be placed with margin
    ``tau / 2`` whatever the ordering of ``a``.
    """
    return _deficits(a, s, tau) == (False, False, False)


def _deficits(a, s, tau):
    d1 = any((s[0] + ak).real < tau for ak in a)
    d2 = any((s[1] + a[j] + a[k]).real < tau for j, k in PAIRS)
    d3 = any((s[2] - ak).real < tau for ak in a)
    return d1, d2, d3


@dataclass
class ContinuationPlan:
    """Record of one continuation: relations applied and quadrature anchors."""

    target: tuple
    steps: list = field(default_factory=list)
    anchors: list = field(default_factory=list)
    est_error: float = 0.0

    def to_dict(self) -> dict:
        def pt(p):
            return [[z.real, z.imag] for z in p]

        return {
            "target": pt(self.target),
            "steps": [{"relation": name, "at": pt(p)} for name, p in self.steps],
            "anchors": [pt(p) for p in self.anchors],
        }


_SINGLE = {0: ("s1a", "s1b"), 1: ("s2", "s3c"), 2: ("s3a", "s3b")}


def _choose(a, p, deficits, strategy):
    names = []
    if strategy == "all":
        names.append("all")
    elif strategy != "single":
        raise ValueError(f"unknown strategy {strategy!r}")
    for i, bad in enumerate(deficits):
        if bad:
            names.extend(_SINGLE[i])
    pt = Gl4Point(a, p)
    for name in names:
        if hypotheses_hold(name, pt):
            return name
    raise HypothesisFailure(f"no admissible shift relation at s = {p}")


def continue_t4(a, s, cfg: QuadratureConfig | None = None, *, strategy: str = "all",
                tau: float | None = None, max_depth: int = MAX_DEPTH):
    """``T_{4,a}(s)`` anywhere off the polar divisors.

    Parameters
    ----------
    strategy : {"all", "single"}
        ``"all"`` prefers the relation with positive shifts in every variable
        and falls back to one-variable relations; ``"single"`` uses only the
        one-variable relations (``s1`` first, then ``s2``, then ``s3``).
    tau : float, optional
        Interior threshold (see :func:`interior`); defaults to ``2 * cfg.margin``.

    Returns
    -------
    value, plan : complex, ContinuationPlan
    """
    cfg = cfg or QuadratureConfig()
    a = tuple(complex(x) for x in a)
    s = tuple(complex(x) for x in s)
    if len(a) != 4 or len(s) != 3:
        raise ValueError("continue_t4 needs len(a) == 4 and len(s) == 3")
    cls = classify_point(a, s)
    if not cls.regular:
        raise PoleHit(f"s = {s} is a pole of T_4", classification=cls)
    tau = 2 * cfg.margin if tau is None else tau
    plan = ContinuationPlan(target=s)
    memo: dict = {}

    def value(off):
        if off in memo:
            return memo[off]
        if max(off) > max_depth:
            raise PreconditionViolation(f"continuation needs more than {max_depth} unit shifts")
        p = tuple(x + d for x, d in zip(s, off))
        deficits = _deficits(a, p, tau)
        if not any(deficits):
            v, info = eval_t(a, p, cfg, reorder=True, full_output=True)
            plan.anchors.append(p)
            plan.est_error = max(plan.est_error, info.error)
        else:
            name = _choose(a, p, deficits, strategy)
            fn, shifts = RECONSTRUCTIONS[name]
            args = [value(tuple(o + d for o, d in zip(off, sh))) for sh in shifts]
            v = fn(Gl4Point(a, p), *args)
            plan.steps.append((name, p))
        memo[off] = v
        return v

    return complex(value((0, 0, 0))), plan


# ---------------------------------------------------------------------------
# residues by contour integration


@dataclass(frozen=True)
class ResidueSpec:
    """A pinned variable, its pole family and depth.

    ``variable`` is 1, 2 or 3; ``indices`` holds ``(m,)`` for ``s1``/``s3``
    and ``(m, n)`` for ``s2`` (1-based).
    """

    variable: int
    indices: tuple
    depth: int

    def __post_init__(self):
        if self.variable not in (1, 2, 3):
            raise ValueError("variable must be 1, 2 or 3")
        want = 2 if self.variable == 2 else 1
        idx = tuple(int(i) for i in self.indices)
        if len(idx) != want or len(set(idx)) != want or not all(1 <= i <= 4 for i in idx):
            raise ValueError(f"s{self.variable} needs {want} distinct indices in 1..4")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        object.__setattr__(self, "indices", idx)


def pole_location(a, spec: ResidueSpec) -> complex:
    a = tuple(complex(x) for x in a)
    i = [k - 1 for k in spec.indices]
    if spec.variable == 1:
        return -a[i[0]] - spec.depth
    if spec.variable == 2:
        return -a[i[0]] - a[i[1]] - spec.depth
    return a[i[0]] - spec.depth


def nearest_other_pole(a, variable: int, point, span: int = 2 * MAX_DEPTH) -> float:
    """Distance from ``point`` to the nearest pole of ``s_variable`` other than
    ``point`` itself (families of all indices, depths below ``span``)."""
    best = math.inf
    for var, _, c in _families(tuple(complex(x) for x in a)):
        if var != variable:
            continue
        for d in range(span):
            dist = abs(c - d - point)
            if dist > 1e-12:
                best = min(best, dist)
    return best


def safe_radius(a, variable: int, point, fraction: float = 0.1) -> float:
    """``fraction`` times :func:`nearest_other_pole`."""
    return fraction * nearest_other_pole(a, variable, point)


def contour_residue(f: Callable, center: complex, radius: float, nodes: int = 64) -> complex:
    """``(2 pi i)^{-1} oint f`` over the circle ``|z - center| = radius``
    (trapezoid rule in the angle)."""
    if nodes < 1 or radius <= 0:
        raise ValueError("need nodes >= 1 and radius > 0")
    total = 0j
    for j in range(nodes):
        w = radius * np.exp(2j * math.pi * j / nodes)
        total += complex(f(center + w)) * w
    return total / nodes


def numeric_residue(a, spec: ResidueSpec, free: Sequence, radius: float | None = None,
                    cfg: QuadratureConfig | None = None, nodes: int = 64,
                    strategy: str = "all") -> complex:
    """Residue of ``T_{4,a}`` in one variable by a Cauchy integral of the
    continued transform.

    ``free`` holds the two remaining coordinates in their natural order.  The
    default radius is a tenth of the distance to the nearest other pole of the
    same variable.
    """
    if nodes < 64:
        raise ValueError("use at least 64 nodes")
    free = tuple(complex(x) for x in free)
    if len(free) != 2:
        raise ValueError("free must hold the two unpinned coordinates")
    p = pole_location(a, spec)
    dist = nearest_other_pole(a, spec.variable, p, spec.depth + 2 * MAX_DEPTH)
    if radius is None:
        radius = 0.1 * dist
    elif radius >= dist:
        raise CircleTooLarge(f"radius {radius} reaches another pole at distance {dist:.3g}")
    k = spec.variable - 1

    def f(z):
        s = list(free)
        s.insert(k, z)
        return continue_t4(a, s, cfg, strategy=strategy)[0]

    return contour_residue(f, p, radius, nodes)
