"""Invariant families run by ``glmellin verify``.

Each suite returns a list of per-trial records ``{"trial", "residual", "passed", ...}``.
``corrupt=True`` scales one coefficient by ``1001/1000``; a working suite must
then report failures (negative control).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import DegenerateDenominator
from .gl4 import RECONSTRUCTIONS, Gl4Point, consistent_placeholders, intermediate_relations, reversal
from .mellin import eval_t, t2
from .pdelta import check_divisibility, check_recur_a, check_recur_b
from .recurrence import build_recurrence, lemma_terms

__all__ = ["SUITES", "run_suite"]

_BUMP = Fraction(1001, 1000)


def _rational(rng):
    return Fraction(int(rng.integers(-999, 1000)), int(rng.integers(101, 998)))


def _cplx(rng, lo, hi, im):
    return complex(rng.uniform(lo, hi), rng.uniform(-im, im))


def _interior_gl4(rng):
    free = [_cplx(rng, -0.1, 0.1, 0.5) for _ in range(3)]
    return (*free, -sum(free)), tuple(_cplx(rng, 1.2, 2.2, 0.8) for _ in range(3))


def lemma21(rng, trials, corrupt):
    out = []
    for trial in range(trials):
        n = 2 + trial % 7
        while True:
            a1 = _rational(rng)
            s = [_rational(rng) for _ in range(n - 1)]
            z = [_rational(rng) for _ in range(n - 2)]
            try:
                terms = lemma_terms(n, a1, s, z)
                break
            except DegenerateDenominator:
                continue
        if corrupt:
            terms[-1] *= _BUMP
        total = sum(terms)
        out.append({"trial": trial, "n": n, "residual": float(abs(total)), "passed": total == 0})
    return out


def theorem22(rng, trials, corrupt, tol=1e-4):
    out = []
    for trial in range(trials):
        n = 2 + trial % 3
        if n == 4:
            a, s = _interior_gl4(rng)
        else:
            free = [_cplx(rng, -0.2, 0.2, 0.6) for _ in range(n - 1)]
            a = (*free, -sum(free))
            s = tuple(_cplx(rng, 1.0, 2.0, 0.8) for _ in range(n - 1))
        rec = build_recurrence(n)
        t = (lambda p, a=a: t2(a, p)) if n == 2 else (lambda p, a=a: eval_t(a, p))
        terms = [c * t(tuple(x + d for x, d in zip(s, sh)))
                 for sh, c in zip(rec.shifts, rec.coefficients(a, s))]
        if corrupt:
            terms[-1] *= float(_BUMP)
        rel = abs(sum(terms)) / max(abs(x) for x in terms)
        out.append({"trial": trial, "n": n, "residual": rel, "passed": rel < tol})
    return out


def gl4(rng, trials, corrupt, tol=1e-4):
    out = []
    for trial in range(trials):
        a, s = _interior_gl4(rng)
        cache = {}

        def t(shift, a=a, s=s, cache=cache):
            if shift not in cache:
                cache[shift] = eval_t(a, tuple(x + d for x, d in zip(s, shift)))
            return cache[shift]

        pt = Gl4Point(a, s)
        worst = 0.0
        for name, (fn, shifts) in RECONSTRUCTIONS.items():
            vals = [t(sh) for sh in shifts]
            if corrupt and name == "all":
                vals[0] *= float(_BUMP)
            worst = max(worst, abs(fn(pt, *vals) - t((0, 0, 0))) / abs(t((0, 0, 0))))
        ra = [_rational(rng) for _ in range(3)]
        ra.append(-sum(ra))
        rs = [_rational(rng) for _ in range(3)]
        values = consistent_placeholders(ra, rs, seed=trial)
        if corrupt:
            base = tuple(rs)
            orig = values
            values = lambda p, orig=orig, base=base: orig(p) * (_BUMP if tuple(p) == base else 1)
        res = intermediate_relations(Gl4Point(tuple(ra), tuple(rs)), values)
        exact_ok = all(total == 0 for total, _ in res.values())
        out.append({"trial": trial, "residual": worst, "intermediate_exact": exact_ok,
                    "passed": worst < tol and exact_ok})
    return out


def pdelta(rng, trials, corrupt):
    out = []
    for trial in range(trials):
        delta = trial % 7
        b, c, d, e, f, g = (_rational(rng) for _ in range(6))
        ra = check_recur_a(delta, b, c, d, e, f, g)
        rb = check_recur_b(delta, b, c, d, e, f)
        gam = int(rng.integers(0, delta + 1))
        if corrupt:
            ra += _BUMP - 1
        ok_c = check_divisibility(delta, gam, -gam, c, d, e, f, g)
        out.append({"trial": trial, "delta": delta, "residual": float(abs(ra) + abs(rb)),
                    "divisibility": ok_c, "passed": ra == 0 and rb == 0 and ok_c})
    return out


def symmetry(rng, trials, corrupt, tol=1e-5):
    out = []
    for trial in range(trials):
        a, s = _interior_gl4(rng)
        base = eval_t(a, s)
        perm = rng.permutation(4)
        pa = tuple(a[i] for i in perm)
        if corrupt:
            pa = (pa[0] * float(_BUMP), *pa[1:3], -(pa[0] * float(_BUMP) + pa[1] + pa[2]))
        r = reversal(Gl4Point(a, s))
        e1 = abs(eval_t(pa, s) - base) / abs(base)
        e2 = abs(eval_t(r.a, r.s) - base) / abs(base)
        out.append({"trial": trial, "permutation": [int(i) for i in perm],
                    "residual": max(e1, e2), "passed": max(e1, e2) < tol})
    return out


SUITES = {
    "lemma21": lemma21,
    "theorem22": theorem22,
    "gl4": gl4,
    "pdelta": pdelta,
    "symmetry": symmetry,
}


def run_suite(name: str, trials: int = 10, seed: int = 0, corrupt: bool = False) -> list:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    rng = np.random.default_rng([seed, sorted(SUITES).index(name)])
    return SUITES[name](rng, trials, corrupt)
