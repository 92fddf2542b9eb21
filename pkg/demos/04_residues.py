"""Residues of T_4: closed forms against Cauchy integrals of the continued
transform, and the degree bounds of the double-residue polynomials.

Run:  python3 demos/04_residues.py
"""

from glmellin.continuation import ResidueSpec, contour_residue, numeric_residue, safe_radius
from glmellin.residues import (
    certify_degree,
    degree_bound,
    residue_s1,
    residue_s1s2,
    residue_s2,
    residue_s3,
)

a = (0.11 + 0.03j, -0.23, 0.31j, 0.12 - 0.34j)

for spec, closed, free in [
    (ResidueSpec(1, (2,), 1), residue_s1(a, 2, 1, 0.4, 0.5), (0.4, 0.5)),
    (ResidueSpec(2, (1, 3), 0), residue_s2(a, 1, 3, 0, 0.3, 0.5), (0.3, 0.5)),
    (ResidueSpec(3, (4,), 1), residue_s3(a, 4, 1, 0.3, 0.6), (0.3, 0.6)),
]:
    num = numeric_residue(a, spec, free)
    print(f"s{spec.variable} indices {spec.indices} depth {spec.depth}: closed {closed:.10g}"
          f"  contour {num:.10g}  rel diff {abs(num - closed) / abs(closed):.1e}")

# double residue in (s1, s2), taking the inner residue in either order
s3 = 0.45 + 0.1j
p1, p2 = -a[0] - 1, -a[0] - a[3]
closed = residue_s1s2(a, 1, 0, s3)
x = contour_residue(lambda z: residue_s2(a, 1, 4, 0, z, s3), p1, safe_radius(a, 1, p1))
y = contour_residue(lambda z: residue_s1(a, 1, 1, z, s3), p2, safe_radius(a, 2, p2))
print(f"double residue: closed {closed:.10g}  s2-then-s1 {x:.10g}  s1-then-s2 {y:.10g}")

for which in "fgh":
    for deltas in [(1, 1), (2, 1), (1, 2)]:
        deg, ok = certify_degree(which, deltas, a, mode="total")
        print(f"{which}{deltas}: total degree {deg} (bound {degree_bound(which, deltas)}) ok={ok}")
