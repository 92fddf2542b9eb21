"""GL(2): the Mellin transform is a product of two gamma functions, and its
inverse Mellin transform recovers the K-Bessel Whittaker function.

Run:  python3 demos/01_gl2_and_bessel.py
"""

from glmellin.bessel import bessel_k_exp, bessel_k_mb, w2_check
from glmellin.mellin import t2

a1 = 0.2 + 0.1j
s = 0.7 - 0.3j
print(f"T_2(s) at a1={a1}, s={s}:  {t2((a1, -a1), (s,)):.15g}")

# The two integral representations of K_nu should agree to near machine precision.
for nu, y in [(0.3 + 0.2j, 1.7), (1.1, 0.6), (0.5j, 2.5)]:
    mb, ex = bessel_k_mb(nu, y), bessel_k_exp(nu, y)
    print(f"K_{nu}({y}):  Mellin-Barnes {mb:.15g}   exp-integral {ex:.15g}   diff {abs(mb - ex):.1e}")

# Whittaker function from the Mellin transform of T_2.
for a1, y in [(0.0, 0.4), (0.15 + 0.2j, 0.9)]:
    lhs, rhs = w2_check(a1, y)
    print(f"W_2 at a1={a1}, y={y}:  closed {lhs:.12g}   inverse Mellin {rhs:.12g}")
