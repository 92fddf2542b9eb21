"""The acceptance suite.

Each ``criterion_N`` runs one family of checks and returns a
:class:`CriterionResult`.  Metrics are deterministic for a given seed; the
measured runtime is kept separately so reports can omit it.
"""

from __future__ import annotations

import cmath
import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bessel import bessel_k_exp, bessel_k_mb, w2_check
from .continuation import (
    ResidueSpec,
    contour_residue,
    nearest_other_pole,
    numeric_residue,
    safe_radius,
)
from .errors import DegenerateDenominator
from .gamma import gamma
from .gl4 import RECONSTRUCTIONS, Gl4Point, consistent_placeholders, intermediate_relations, reversal
from .mellin import eval_t, t2, t3_closed
from .pdelta import check_divisibility, check_recur_a, check_recur_b
from .recurrence import build_recurrence, lemma_terms
from .residues import (
    certify_degree,
    residue_s1,
    residue_s1s2,
    residue_s1s2s3,
    residue_s1s3,
    residue_s2,
    residue_s2s3,
    residue_s3,
)

__all__ = ["CriterionResult", "CRITERIA", "run_criteria", "format_line"]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    metrics: dict = field(default_factory=dict)
    runtime: float = 0.0
    time_limit: float | None = None

    def to_dict(self, timing: bool = False) -> dict:
        out = {"criterion": self.number, "title": self.title, "passed": self.passed,
               "metrics": self.metrics}
        if timing:
            out["runtime_s"] = self.runtime
            out["time_limit_s"] = self.time_limit
        return out


def format_line(r: CriterionResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    limit = f" (limit {r.time_limit:g} s)" if r.time_limit else ""
    return f"[{status}] criterion {r.number:2d}: {r.title} [{r.runtime:.2f} s{limit}]"


# ---------------------------------------------------------------------------
# sampling helpers


def _rng(seed, number):
    return np.random.default_rng([seed, number])


def _cplx(rng, re, im):
    return complex(rng.uniform(*re), rng.uniform(*im))


def _rational(rng):
    return Fraction(int(rng.integers(-999, 1000)), int(rng.integers(101, 998)))


def _rel(x, y):
    return abs(x - y) / abs(y)


def _interior_gl4(rng):
    free = [_cplx(rng, (-0.1, 0.1), (-0.5, 0.5)) for _ in range(3)]
    a = (*free, -sum(free))
    s = tuple(_cplx(rng, (1.2, 2.2), (-0.8, 0.8)) for _ in range(3))
    return a, s


def _generic_gl4(rng, min_gap=0.08):
    """Spectral parameters whose pole families stay well apart."""
    while True:
        free = [_cplx(rng, (-0.4, 0.4), (-0.3, 0.3)) for _ in range(3)]
        a = (*free, -sum(free))
        gaps = [abs(x - y - ell) for x, y in itertools.permutations(a, 2) for ell in range(-4, 5)]
        sums = [abs(a[i] + a[j] - a[k] - a[l])
                for (i, j), (k, l) in itertools.permutations(itertools.combinations(range(4), 2), 2)]
        if min(gaps) > min_gap and min(sums) > min_gap:
            return a


def _max(xs):
    return float(max(xs)) if xs else 0.0


# ---------------------------------------------------------------------------
# criteria


def criterion_1(seed=0):
    rng = _rng(seed, 1)
    z = rng.uniform(-12, 12, 1000) + 1j * rng.uniform(-12, 12, 1000)
    z = z[np.abs(z - np.round(z.real)) > 1e-3]
    g = gamma(z)
    trans = np.abs(gamma(z + 1) - z * g) / np.abs(gamma(z + 1))
    w = rng.uniform(0.001, 0.999, 1000) + 1j * rng.uniform(-12, 12, 1000)
    target = np.pi / np.sin(np.pi * w)
    refl = np.abs(gamma(w) * gamma(1 - w) - target) / np.abs(target)
    metrics = {"translation_max_rel": float(trans.max()), "reflection_max_rel": float(refl.max()),
               "samples": int(len(z) + len(w))}
    return trans.max() < 1e-11 and refl.max() < 1e-11, metrics


def criterion_2(seed=0):
    rng = _rng(seed, 2)
    anchors = [
        ((0.0,), (0.5,), math.pi),
        ((0.5,), (1.5,), 1.0),
        ((0.8j,), (1.0,), math.pi * 0.8 / math.sinh(0.8 * math.pi)),
    ]
    errs = [_rel(t2((a[0], -a[0]), s), v) for a, s, v in anchors]
    # exact check: s1 +- a1 positive integers, so T_2 is a product of factorials
    rec = build_recurrence(2)
    exact_bad = 0
    for _ in range(100):
        p, q = int(rng.integers(1, 30)), int(rng.integers(1, 30))
        a1 = Fraction(p - q, 2)
        s1 = Fraction(p + q, 2)

        def t(pt, a1=a1):
            return math.factorial(int(pt[0] + a1) - 1) * math.factorial(int(pt[0] - a1) - 1)

        total, _ = rec.residual((a1, -a1), (s1,), t)
        exact_bad += total != 0
    metrics = {"anchor_max_rel": _max(errs), "recur2_exact_failures": int(exact_bad)}
    return max(errs) < 1e-12 and exact_bad == 0, metrics


def criterion_3(seed=0):
    pairs = [(0.5, 1.0), (0.0, 2.0), (1 / 3 + 1j, 0.7), (2.2, 0.3), (0.4j, 5.0), (1.5 - 0.5j, 3.0)]
    k_errs = [_rel(bessel_k_mb(nu, y), bessel_k_exp(nu, y)) for nu, y in pairs]
    closed = math.sqrt(math.pi / 2) * math.exp(-1)
    k_errs.append(_rel(bessel_k_exp(0.5, 1.0), closed))
    w_errs = []
    for a1, y in [(0.0, 1.0), (0.3, 0.5), (0.25j, 1.0)]:
        lhs, rhs = w2_check(a1, y)
        w_errs.append(_rel(rhs, lhs))
    metrics = {"kbessel_max_rel": _max(k_errs), "w2_max_rel": _max(w_errs)}
    return max(k_errs) < 1e-8 and max(w_errs) < 1e-7, metrics


def criterion_4(seed=0):
    rng = _rng(seed, 4)
    pinned = eval_t((0, 0, 0), (1, 1))
    errs = []
    for _ in range(10):
        free = [_cplx(rng, (-0.2, 0.2), (-0.6, 0.6)) for _ in range(2)]
        a = (*free, -sum(free))
        s = tuple(_cplx(rng, (0.8, 2.0), (-1.0, 1.0)) for _ in range(2))
        errs.append(_rel(eval_t(a, s), t3_closed(a, s)))
    metrics = {"constant_at_origin": [pinned.real, pinned.imag],
               "constant_rel_err": abs(pinned - 1), "max_rel": _max(errs)}
    return abs(pinned - 1) < 1e-6 and max(errs) < 1e-6, metrics


def criterion_5(seed=0):
    rng = _rng(seed, 5)
    exact_fail = 0
    float_worst = 0.0
    for n in range(2, 9):
        done = 0
        while done < 100:
            a1 = _rational(rng)
            s = [_rational(rng) for _ in range(n - 1)]
            z = [_rational(rng) for _ in range(n - 2)]
            try:
                exact_fail += sum(lemma_terms(n, a1, s, z)) != 0
            except DegenerateDenominator:
                continue
            done += 1
        for _ in range(100):
            a1 = _cplx(rng, (-1, 1), (-1, 1))
            s = [_cplx(rng, (-2, 2), (-2, 2)) for _ in range(n - 1)]
            z = [_cplx(rng, (-2, 2), (-2, 2)) for _ in range(n - 2)]
            terms = lemma_terms(n, a1, s, z)
            float_worst = max(float_worst, abs(sum(terms)) / max(abs(t) for t in terms))
    metrics = {"exact_failures": int(exact_fail), "float_max_rel": float_worst}
    return exact_fail == 0 and float_worst < 1e-10, metrics


def criterion_6(seed=0):
    rng = _rng(seed, 6)
    worst = {3: 0.0, 4: 0.0}
    for n in (3, 4):
        rec = build_recurrence(n)
        for _ in range(10):
            if n == 3:
                free = [_cplx(rng, (-0.2, 0.2), (-0.6, 0.6)) for _ in range(2)]
                a = (*free, -sum(free))
                s = tuple(_cplx(rng, (1.0, 2.0), (-0.8, 0.8)) for _ in range(2))
            else:
                a, s = _interior_gl4(rng)
            total, big = rec.residual(a, s, lambda p, a=a: eval_t(a, p))
            worst[n] = max(worst[n], abs(total) / big)
    metrics = {"gl3_max_rel_residual": worst[3], "gl4rec_max_rel_residual": worst[4]}
    return max(worst.values()) < 1e-4, metrics


def criterion_7(seed=0):
    rng = _rng(seed, 7)
    worst = {name: 0.0 for name in RECONSTRUCTIONS}
    for _ in range(10):
        a, s = _interior_gl4(rng)
        cache = {}

        def t(shift, a=a, s=s, cache=cache):
            if shift not in cache:
                cache[shift] = eval_t(a, tuple(x + d for x, d in zip(s, shift)))
            return cache[shift]

        pt = Gl4Point(a, s)
        for name, (fn, shifts) in RECONSTRUCTIONS.items():
            worst[name] = max(worst[name], _rel(fn(pt, *(t(sh) for sh in shifts)), t((0, 0, 0))))
    exact_nonzero = 0
    for k in range(5):
        a = [_rational(rng) for _ in range(3)]
        a.append(-sum(a))
        s = [_rational(rng) for _ in range(3)]
        values = consistent_placeholders(a, s, seed=seed + k)
        res = intermediate_relations(Gl4Point(tuple(a), tuple(s)), values)
        exact_nonzero += sum(total != 0 for total, _ in res.values())
    metrics = {"reconstruction_max_rel": worst, "intermediate_exact_nonzero": int(exact_nonzero)}
    return max(worst.values()) < 1e-4 and exact_nonzero == 0, metrics


def criterion_8(seed=0):
    rng = _rng(seed, 8)
    perm_worst = rev_worst = 0.0
    for _ in range(10):
        a, s = _interior_gl4(rng)
        base = eval_t(a, s)
        perm = rng.permutation(4)
        perm_worst = max(perm_worst, _rel(eval_t(tuple(a[i] for i in perm), s), base))
        r = reversal(Gl4Point(a, s))
        rev_worst = max(rev_worst, _rel(eval_t(r.a, r.s), base))
    metrics = {"permutation_max_rel": perm_worst, "reversal_max_rel": rev_worst}
    return perm_worst < 1e-5 and rev_worst < 1e-5, metrics


def criterion_9(seed=0):
    rng = _rng(seed, 9)
    fails = {"a": 0, "b": 0, "c": 0}
    for delta in range(7):
        for _ in range(100):
            b, c, d, e, f, g = (_rational(rng) for _ in range(6))
            fails["a"] += check_recur_a(delta, b, c, d, e, f, g) != 0
            fails["b"] += check_recur_b(delta, b, c, d, e, f) != 0
            gam = int(rng.integers(0, delta + 1))
            args = [b, c, d]
            args[int(rng.integers(0, 3))] = -gam
            fails["c"] += not check_divisibility(delta, gam, *args, e, f, g)
    metrics = {"exact_failures": {k: int(v) for k, v in fails.items()}}
    return sum(fails.values()) == 0, metrics


def _oracle(f, a, variable, center, nodes=64):
    return contour_residue(f, center, safe_radius(a, variable, center), nodes)


def criterion_10(seed=0, draws=5):
    rng = _rng(seed, 10)
    err = {"single": 0.0, "double": 0.0, "triple": 0.0, "commute": 0.0, "analytic": 0.0}
    for draw in range(draws):
        a = _generic_gl4(rng)
        a1, a2, a3, a4 = a
        s1, s2, s3 = (_cplx(rng, (0.3, 1.0), (-0.3, 0.3)) for _ in range(3))
        m = 1 + draw % 4
        n = 1 + (draw + 1) % 4
        for d in (0, 1):
            num = numeric_residue(a, ResidueSpec(1, (m,), d), (s2, s3))
            err["single"] = max(err["single"], _rel(num, residue_s1(a, m, d, s2, s3)))
            num = numeric_residue(a, ResidueSpec(2, (m, n), d), (s1, s3))
            err["single"] = max(err["single"], _rel(num, residue_s2(a, m, n, d, s1, s3)))
            num = numeric_residue(a, ResidueSpec(3, (m,), d), (s1, s2))
            err["single"] = max(err["single"], _rel(num, residue_s3(a, m, d, s1, s2)))
        for d_a, d_b in itertools.product((0, 1), repeat=2):
            # (s1, s2): s1 = -a1 - d_a, s2 = -a1 - a4 - d_b
            p1, p2 = -a1 - d_a, -a1 - a4 - d_b
            cl = residue_s1s2(a, d_a, d_b, s3)
            x = _oracle(lambda z: residue_s2(a, 1, 4, d_b, z, s3), a, 1, p1)
            y = _oracle(lambda z: residue_s1(a, 1, d_a, z, s3), a, 2, p2)
            err["double"] = max(err["double"], _rel(x, cl), _rel(y, cl))
            err["commute"] = max(err["commute"], _rel(x, y))
            # (s1, s3): s1 = -a1 - d_a, s3 = a2 - d_b
            p1, p3 = -a1 - d_a, a2 - d_b
            cl = residue_s1s3(a, d_a, d_b, s2)
            x = _oracle(lambda z: residue_s1(a, 1, d_a, s2, z), a, 3, p3)
            y = _oracle(lambda z: residue_s3(a, 2, d_b, z, s2), a, 1, p1)
            err["double"] = max(err["double"], _rel(x, cl), _rel(y, cl))
            err["commute"] = max(err["commute"], _rel(x, y))
            # (s2, s3): s2 = -a1 - a4 - d_a, s3 = a3 - d_b
            p2, p3 = -a1 - a4 - d_a, a3 - d_b
            cl = residue_s2s3(a, d_a, d_b, s1)
            x = _oracle(lambda z: residue_s2(a, 1, 4, d_a, s1, z), a, 3, p3)
            y = _oracle(lambda z: residue_s3(a, 3, d_b, s1, z), a, 2, p2)
            err["double"] = max(err["double"], _rel(x, cl), _rel(y, cl))
            err["commute"] = max(err["commute"], _rel(x, y))
            for d3 in (0, 1):
                cl = residue_s1s2s3(a, d_a, d_b, d3)
                x = _oracle(lambda z: residue_s1s2(a, d_a, d_b, z), a, 3, a3 - d3)
                err["triple"] = max(err["triple"], _rel(x, cl))
        # "missing factor" points: analytic there, so finite with zero contour integral
        for d in (0, 1):
            checks = [
                (lambda z: residue_s1(a, m, 0, s2, z), 3, a[m - 1] - d),
                (lambda z: residue_s2(a, m, n, 0, s1, z), 3, a[m - 1] - d),
                (lambda z: residue_s2(a, m, n, 0, s1, z), 3, a[n - 1] - d),
            ]
            p, q = [k for k in range(4) if k not in (m - 1, n - 1)]
            checks += [
                (lambda z: residue_s2(a, m, n, 0, z, s3), 1, -a[p] - d),
                (lambda z: residue_s2(a, m, n, 0, z, s3), 1, -a[q] - d),
            ]
            for f, var, pt in checks:
                val = f(pt)
                r = 0.1 * nearest_other_pole(a, var, pt)
                ring = max(abs(f(pt + r * cmath.exp(2j * math.pi * j / 8))) for j in range(8))
                if not cmath.isfinite(val):
                    err["analytic"] = math.inf
                    continue
                loop = contour_residue(f, pt, r)
                err["analytic"] = max(err["analytic"], abs(loop) / (r * ring))
    ok = (err["single"] < 1e-4 and err["double"] < 1e-4 and err["triple"] < 1e-4
          and err["commute"] < 1e-3 and err["analytic"] < 1e-8)
    metrics = {f"{k}_max_rel": v for k, v in err.items()}
    metrics["draws"] = draws
    return ok, metrics


def criterion_11(seed=0):
    rng = _rng(seed, 11)
    a = _generic_gl4(rng)
    bad = []
    degrees = {}
    for which in "fgh":
        for d in itertools.product(range(3), repeat=2):
            for mode in ("free", "total"):
                deg, ok = certify_degree(which, d, a, mode=mode, seed=seed)
                degrees[f"{which}{d[0]}{d[1]}_{mode}"] = deg
                if not ok:
                    bad.append(f"{which}{d}{mode}")
    return not bad, {"detected_degrees": degrees, "failures": bad}


CRITERIA = {
    1: ("gamma translation and reflection identities", criterion_1, 1.0),
    2: ("GL(2) closed form and its shift relation", criterion_2, None),
    3: ("K-Bessel and W_2 cross-checks", criterion_3, 30.0),
    4: ("GL(3) quadrature against the Barnes closed form", criterion_4, 60.0),
    5: ("binary-sequence coefficient identity", criterion_5, 10.0),
    6: ("general recurrence with quadrature values", criterion_6, 600.0),
    7: ("GL(4) reconstructions and intermediate relations", criterion_7, None),
    8: ("permutation and reversal symmetry", criterion_8, None),
    9: ("p_delta recurrences and divisibility", criterion_9, 30.0),
    10: ("closed-form residues against contour oracles", criterion_10, 1200.0),
    11: ("degree bounds of the double-residue polynomials", criterion_11, None),
}


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    title, fn, limit = CRITERIA[number]
    start = time.perf_counter()
    ok, metrics = fn(seed)
    runtime = time.perf_counter() - start
    if limit is not None and runtime >= limit:
        ok = False
        metrics = {**metrics, "time_limit_exceeded": True}
    return CriterionResult(number, title, bool(ok), metrics, runtime, limit)


def run_criteria(numbers=None, seed: int = 0, progress=None) -> list:
    out = []
    for number in numbers or sorted(CRITERIA):
        r = run_criterion(number, seed)
        if progress is not None:
            progress(r)
        out.append(r)
    return out
