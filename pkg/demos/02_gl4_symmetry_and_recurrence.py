"""GL(4): evaluate T_4 by quadrature, check its symmetries, and watch the
five-term shift relation cancel.

Run:  python3 demos/02_gl4_symmetry_and_recurrence.py
"""

import itertools

from glmellin.mellin import eval_t
from glmellin.recurrence import build_recurrence

a = (0.1, 0.2 + 0.1j, -0.05, -0.25 - 0.1j)
s = (1.5, 1.6 + 0.3j, 1.7)
base = eval_t(a, s)
print(f"T_4(s) = {base:.15g}")

worst = max(abs(eval_t(tuple(a[i] for i in p), s) - base) / abs(base)
            for p in itertools.permutations(range(4)))
print(f"largest relative change over all 24 permutations of a: {worst:.1e}")
rev = eval_t(tuple(-x for x in a), s[::-1])
print(f"reversal (s3, s2, s1; -a): relative change {abs(rev - base) / abs(base):.1e}")

rec = build_recurrence(4)
terms = [c * eval_t(a, tuple(x + d for x, d in zip(s, sh)))
         for sh, c in zip(rec.shifts, rec.coefficients(a, s))]
print("shift relation terms:")
for sh, t in zip(rec.shifts, terms):
    print(f"  shift {sh}: {t:.12g}")
print(f"sum / largest term = {abs(sum(terms)) / max(map(abs, terms)):.1e}")
