"""Meromorphic continuation: evaluate T_4 left of the quadrature region by
applying the positive-shift relations, and watch it blow up like
1/distance at a pole.

Run:  python3 demos/03_continuation_and_poles.py
"""

from glmellin.continuation import classify_point, continue_t4
from glmellin.errors import PoleHit

a = (0.11 + 0.03j, -0.23, 0.31j, 0.12 - 0.34j)
s = (-0.6 + 0.1j, 0.2, -0.9)

v_all, plan = continue_t4(a, s, strategy="all")
v_single, plan_single = continue_t4(a, s, strategy="single")
print(f"T_4{s} = {v_all:.12g}")
print(f"  {len(plan.steps)} steps, {len(plan.anchors)} quadrature anchors (all-shifts route)")
print(f"  {len(plan_single.steps)} steps via single-variable relations; "
      f"difference {abs(v_all - v_single) / abs(v_all):.1e}")

print("approaching the pole s1 = -a1:")
for d in (1e-1, 1e-2, 1e-3, 1e-4):
    v, _ = continue_t4(a, (-a[0] + d, 0.3, 0.4))
    print(f"  distance {d:.0e}: |T| * distance = {abs(v) * d:.6g}")

try:
    continue_t4(a, (-a[0] - 2, 0.3, 0.4))
except PoleHit as exc:
    print("at s1 = -a1 - 2:", exc.classification.to_dict())

print(classify_point(a, (0.37, 0.2, 0.44)).to_dict())
