"""Shift relations for ``T_{4,a}(s)``.

Every relation below is a linear identity among values of ``T_{4,a}`` at
integer translates of ``s``.  Each one comes in two shapes:

* a :class:`~glmellin.recurrence.ShiftRelation` (``sum_i c_i T(s + shift_i) = 0``),
  used for residual checks, and
* for the propositions, a ``reconstruct_*`` function that returns ``T(s)``
  from the shifted values, used by the continuation engine.

Coefficients are written with plain arithmetic, so ``fractions.Fraction``
inputs give exact results.  Genericity hypotheses are checked with margin
``HYP_EPS`` and raise :class:`~glmellin.errors.DegenerateDenominator`.

Notation: ``e1 = (1,0,0)``, ``e12 = (1,1,0)`` and so on.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DegenerateDenominator
from .recurrence import ShiftRelation, build_recurrence

__all__ = [
    "HYP_EPS",
    "Gl4Point",
    "poly_b",
    "poly_c",
    "poly_c_forms",
    "reversal",
    "reconstruct_s1a",
    "reconstruct_s1b",
    "reconstruct_s2",
    "reconstruct_s3a",
    "reconstruct_s3b",
    "reconstruct_s3c",
    "reconstruct_all",
    "RECONSTRUCTIONS",
    "RELATIONS",
    "relation",
    "intermediate_relations",
    "hypotheses_hold",
    "consistent_placeholders",
]

#: minimum modulus of each hypothesis factor (s1 + a_k, s3 - a_k, s2 + a_j + a_k, s2)
HYP_EPS = 1e-8

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
E12, E13, E23 = (1, 1, 0), (1, 0, 1), (0, 1, 1)
E111, E211 = (1, 1, 1), (2, 1, 1)
ZERO = (0, 0, 0)
PAIRS = tuple(itertools.combinations(range(4), 2))


@dataclass(frozen=True)
class Gl4Point:
    """A point ``(a, s)`` with ``a`` of length 4 summing to zero and ``s`` of length 3.

    Entries are kept as given (floats, complex numbers or Fractions).
    """

    a: tuple
    s: tuple

    def __post_init__(self):
        a, s = tuple(self.a), tuple(self.s)
        if len(a) != 4 or len(s) != 3:
            raise ValueError("Gl4Point needs len(a) == 4 and len(s) == 3")
        total = sum(a)
        exact = all(isinstance(x, (int, Fraction)) for x in a)
        if (total != 0) if exact else abs(total) > 1e-12 * (1 + max(abs(x) for x in a)):
            raise ValueError(f"spectral parameters must sum to zero, got {total!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "s", s)

    def shifted(self, shift: Sequence[int]) -> "Gl4Point":
        return Gl4Point(self.a, tuple(x + d for x, d in zip(self.s, shift)))

    def with_a(self, a) -> "Gl4Point":
        return Gl4Point(tuple(a), self.s)


def poly_b(p, q, r):
    """``B(p, q, r) = (p + q - r)(p + r)``."""
    return (p + q - r) * (p + r)


def poly_c(a, p, q):
    """``C_a(p, q) = 2q(p + a1)(p + q - a1) + (q + a2 + a3)(q + a2 + a4)(q + a3 + a4)``."""
    a1, a2, a3, a4 = a
    return 2 * q * (p + a1) * (p + q - a1) + (q + a2 + a3) * (q + a2 + a4) * (q + a3 + a4)


def poly_c_forms(a, p, q) -> tuple:
    """The three equivalent expressions for ``C_a(p, q)``; used for cross-checks."""
    a1, a2, a3, a4 = a
    base = q * (p * p + (p + q) ** 2)
    first = (base - q * (a1 ** 2 + a2 ** 2 + a3 ** 2 + a1 * a2 + a1 * a3 + a2 * a3)
             + (a1 + a2) * (a1 + a3) * (a2 + a3))
    p2 = a1 ** 2 + a2 ** 2 + a3 ** 2 + a4 ** 2
    p3 = a1 ** 3 + a2 ** 3 + a3 ** 3 + a4 ** 3
    if any(isinstance(x, Fraction) for x in (*a, p, q)):
        second = base - Fraction(1, 2) * q * p2 - Fraction(1, 3) * p3
    else:
        second = base - q * p2 / 2 - p3 / 3
    return first, second, poly_c(a, p, q)


def reversal(pt: Gl4Point) -> Gl4Point:
    """``(s1, s2, s3; a) -> (s3, s2, s1; -a)``; ``T_4`` is invariant under it."""
    return Gl4Point(tuple(-x for x in pt.a), pt.s[::-1])


# ---------------------------------------------------------------------------
# hypothesis factors


def _s1_factors(a, s):
    return [s[0] + ak for ak in a]


def _s3_factors(a, s):
    return [s[2] - ak for ak in a]


def _s2_factors(a, s):
    return [s[1] + a[j] + a[k] for j, k in PAIRS]


def _require(factors, what):
    for f in factors:
        if abs(f) <= HYP_EPS:
            raise DegenerateDenominator(f"hypothesis {what} fails: factor {f!r}")


def _prod(xs):
    out = 1
    for x in xs:
        out = out * x
    return out


def hypotheses_hold(name: str, pt: Gl4Point) -> bool:
    """Whether the genericity hypotheses of reconstruction ``name`` hold at ``pt``."""
    try:
        _HYPOTHESES[name](pt.a, pt.s)
    except DegenerateDenominator:
        return False
    return True


def _hyp_s1a(a, s):
    _require(_s1_factors(a, s), "s1 != -a_k")


def _hyp_s1b(a, s):
    _hyp_s1a(a, s)
    _require([s[1]], "s2 != 0")


def _hyp_s2(a, s):
    _require(_s2_factors(a, s), "s2 != -a_j - a_k")


def _hyp_s3a(a, s):
    _require(_s3_factors(a, s), "s3 != a_k")


def _hyp_s3b(a, s):
    _hyp_s3a(a, s)
    _require([s[1]], "s2 != 0")


def _hyp_all(a, s):
    _hyp_s1a(a, s)
    _hyp_s3a(a, s)
    _hyp_s2(a, s)


_HYPOTHESES = {
    "s1a": _hyp_s1a, "s1b": _hyp_s1b, "s2": _hyp_s2,
    "s3a": _hyp_s3a, "s3b": _hyp_s3b, "s3c": _hyp_s2, "all": _hyp_all,
}


# ---------------------------------------------------------------------------
# reconstructions: T(s) from strictly positive shifts


def reconstruct_s1a(pt: Gl4Point, t_shift1, t_shift13):
    """``T(s) = [B(s1,s2,s3) T(s+e1) + T(s+e13)] / prod_k (s1 + a_k)``."""
    a, s = pt.a, pt.s
    _hyp_s1a(a, s)
    return (poly_b(*s) * t_shift1 + t_shift13) / _prod(_s1_factors(a, s))


def reconstruct_s1b(pt: Gl4Point, t_shift1, t_shift12):
    """``T(s) = [C_a(s1,s2) T(s+e1) - (1+s1+s2-s3) T(s+e12)] / (2 s2 prod_k (s1 + a_k))``."""
    a, s = pt.a, pt.s
    _hyp_s1b(a, s)
    s1, s2, s3 = s
    num = poly_c(a, s1, s2) * t_shift1 - (1 + s1 + s2 - s3) * t_shift12
    return num / (2 * s2 * _prod(_s1_factors(a, s)))


def reconstruct_s2(pt: Gl4Point, t_shift12, t_shift2):
    """``T(s) = [2 s2 (1+s1+s2-s3) T(s+e12) + (s2+s3-s1) C_a(s1,s2) T(s+e2)]
    / prod_{j<k} (s2 + a_j + a_k)``."""
    a, s = pt.a, pt.s
    _hyp_s2(a, s)
    s1, s2, s3 = s
    num = 2 * s2 * (1 + s1 + s2 - s3) * t_shift12 + (s2 + s3 - s1) * poly_c(a, s1, s2) * t_shift2
    return num / _prod(_s2_factors(a, s))


def reconstruct_s3a(pt: Gl4Point, t_shift3, t_shift13):
    """``T(s) = [B(s3,s2,s1) T(s+e3) + T(s+e13)] / prod_k (s3 - a_k)``."""
    a, s = pt.a, pt.s
    _hyp_s3a(a, s)
    s1, s2, s3 = s
    return (poly_b(s3, s2, s1) * t_shift3 + t_shift13) / _prod(_s3_factors(a, s))


def reconstruct_s3b(pt: Gl4Point, t_shift3, t_shift23):
    """``T(s) = [C_{-a}(s3,s2) T(s+e3) - (1+s2+s3-s1) T(s+e23)] / (2 s2 prod_k (s3 - a_k))``."""
    a, s = pt.a, pt.s
    _hyp_s3b(a, s)
    s1, s2, s3 = s
    neg = tuple(-x for x in a)
    num = poly_c(neg, s3, s2) * t_shift3 - (1 + s2 + s3 - s1) * t_shift23
    return num / (2 * s2 * _prod(_s3_factors(a, s)))


def reconstruct_s3c(pt: Gl4Point, t_shift23, t_shift2):
    """``T(s) = [2 s2 (1+s2+s3-s1) T(s+e23) + (s1+s2-s3) C_{-a}(s3,s2) T(s+e2)]
    / prod_{j<k} (s2 + a_j + a_k)``."""
    a, s = pt.a, pt.s
    _hyp_s2(a, s)
    s1, s2, s3 = s
    neg = tuple(-x for x in a)
    num = 2 * s2 * (1 + s2 + s3 - s1) * t_shift23 + (s1 + s2 - s3) * poly_c(neg, s3, s2) * t_shift2
    return num / _prod(_s2_factors(a, s))


def all_shift_coefficients(pt: Gl4Point) -> tuple:
    """Coefficients ``(c_211, c_111)`` with ``T(s) = c_211 T(s+(2,1,1)) + c_111 T(s+(1,1,1))``."""
    a, s = pt.a, pt.s
    _hyp_all(a, s)
    s1, s2, s3 = s
    p1 = _prod(_s1_factors(a, s))
    p3 = _prod(_s3_factors(a, s))
    c = poly_c(a, s1, s2)
    bracket = 2 * s2 * p1 + poly_b(s3, s2, s1) * c
    den = p1 * p3 * _prod(_s2_factors(a, s))
    c211 = bracket * (1 + s1 + s2 - s3) / den
    c111 = (bracket * poly_b(s1 + 1, s2, s3) + c * p3) * (s2 + s3 - s1) / den
    return c211, c111


def reconstruct_all(pt: Gl4Point, t_211_shift, t_111_shift):
    """``T(s)`` from ``T(s + (2,1,1))`` and ``T(s + (1,1,1))``."""
    c211, c111 = all_shift_coefficients(pt)
    return c211 * t_211_shift + c111 * t_111_shift


#: name -> (function, shifts of its two inputs in call order)
RECONSTRUCTIONS: dict = {
    "s1a": (reconstruct_s1a, (E1, E13)),
    "s1b": (reconstruct_s1b, (E1, E12)),
    "s2": (reconstruct_s2, (E12, E2)),
    "s3a": (reconstruct_s3a, (E3, E13)),
    "s3b": (reconstruct_s3b, (E3, E23)),
    "s3c": (reconstruct_s3c, (E23, E2)),
    "all": (reconstruct_all, (E211, E111)),
}


# ---------------------------------------------------------------------------
# relations as ShiftRelation objects


def _rel(terms) -> ShiftRelation:
    return ShiftRelation(n=4, terms=tuple(terms))


def _gl4rec2():
    def c0(a, s):
        s1, _, s3 = s
        return -s1 + s3 + a[0] + a[1]

    def c1(a, s):
        s1, s2, s3 = s
        return (s1 + s2 - s3) / ((s1 + a[0]) * (s1 + a[1]))

    def c3(a, s):
        s1, s2, s3 = s
        return (s1 - s2 - s3) / ((s3 - a[0]) * (s3 - a[1]))

    def c13(a, s):
        s1, _, s3 = s
        return -(s1 - s3 + a[0] + a[1]) / ((s1 + a[0]) * (s1 + a[1]) * (s3 - a[0]) * (s3 - a[1]))

    return _rel([(ZERO, c0), (E1, c1), (E3, c3), (E13, c13)])


def _gl4rec4():
    return _rel([
        (ZERO, lambda a, s: poly_c(a, -s[2], s[1])),
        (E2, lambda a, s: -(s[0] + s[1] - s[2])),
        (E3, lambda a, s: -2 * s[1]),
    ])


def _gl4rec5():
    return _rel([
        (ZERO, lambda a, s: 2 * s[1] * _prod(_s1_factors(a, s))),
        (E1, lambda a, s: -poly_c(a, s[0], s[1])),
        (E12, lambda a, s: 1 + s[0] + s[1] - s[2]),
    ])


def _prop2first():
    return _rel([
        (ZERO, lambda a, s: poly_c(a, s[0], -s[1])),
        (E1, lambda a, s: 2 * s[1]),
        (E2, lambda a, s: s[1] + s[2] - s[0]),
    ])


def _from_reconstruction(name) -> ShiftRelation:
    """``T(s) - reconstruct(...) = 0`` as a three-term relation."""
    fn, shifts = RECONSTRUCTIONS[name]

    def coef(i):
        def c(a, s):
            vals = [0, 0]
            vals[i] = 1
            return -fn(Gl4Point(a, s), *vals)
        return c

    return _rel([(ZERO, lambda a, s: 1), (shifts[0], coef(0)), (shifts[1], coef(1))])


RELATIONS: dict = {
    "gl4rec": build_recurrence(4),
    "gl4rec2": _gl4rec2(),
    "gl4rec4": _gl4rec4(),
    "gl4rec5": _gl4rec5(),
    "prop2first": _prop2first(),
    **{f"prop_{name}": _from_reconstruction(name) for name in RECONSTRUCTIONS},
}

INTERMEDIATE = ("gl4rec2", "gl4rec4", "gl4rec5", "prop2first")


def relation(name: str) -> ShiftRelation:
    return RELATIONS[name]


def intermediate_relations(pt: Gl4Point, t: Callable) -> dict:
    """Residuals of the intermediate relations at ``pt``.

    ``t(point)`` supplies ``T_{4,a}`` at the shifted points.  Returns a dict
    ``name -> (residual, max_abs_term)``.
    """
    return {name: RELATIONS[name].residual(pt.a, pt.s, t) for name in INTERMEDIATE}


# ---------------------------------------------------------------------------
# relation-consistent placeholder values


def _placeholder_equations(a, s, box):
    """Rows of the exact linear system satisfied by ``T_{4,a}`` on the box
    ``s + {0..box-1}^3``: the five-term relation for each choice of ``a_1``
    (permutation invariance) and its image under the reversal transform."""
    index = {p: i for i, p in enumerate(itertools.product(range(box), repeat=3))}
    rec = build_recurrence(4)
    neg = tuple(-x for x in a)
    rows = []
    for base in itertools.product(range(box - 1), repeat=3):
        pt = tuple(x + d for x, d in zip(s, base))
        for k in range(4):
            for rev in (False, True):
                src = neg if rev else a
                aa = (src[k],) + tuple(src[j] for j in range(4) if j != k)
                ss = pt[::-1] if rev else pt
                row = {}
                for shift, coef in rec.terms:
                    sh = shift[::-1] if rev else shift
                    key = index[tuple(b + d for b, d in zip(base, sh))]
                    row[key] = row.get(key, 0) + coef(aa, ss)
                rows.append(row)
    return rows, index


def _nullspace_vector(rows, ncols, rng):
    """A random vector in the right nullspace of a sparse rational matrix
    (Gauss-Jordan over Fractions)."""
    mat = [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rows]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for i in range(len(mat)):
            if i != row and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        raise ValueError("relation system has trivial nullspace on this box")
    x = [Fraction(0)] * ncols
    for c in free:
        x[c] = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
    for r, c in enumerate(pivots):
        x[c] = -sum(mat[r][f] * x[f] for f in free)
    return x


def consistent_placeholders(a, s, box: int = 3, seed: int = 0) -> Callable:
    """Exact rational stand-ins for ``T_{4,a}`` on ``s + {0..box-1}^3``.

    The values satisfy every five-term relation (all four choices of the
    distinguished parameter, both orientations) exactly, so any relation that
    is a linear consequence of those, at base points inside the box, must
    vanish identically on them.  ``a`` and ``s`` must be Fractions.

    Returns a function ``t(point) -> Fraction``.
    """
    a = tuple(Fraction(x) for x in a)
    s = tuple(Fraction(x) for x in s)
    rows, index = _placeholder_equations(a, s, box)
    vec = _nullspace_vector(rows, len(index), random.Random(seed))

    def t(point):
        off = tuple(p - q for p, q in zip(point, s))
        if any(o.denominator != 1 for o in off):
            raise KeyError(f"{point} is not a lattice translate of {s}")
        return vec[index[tuple(int(o) for o in off)]]

    return t
