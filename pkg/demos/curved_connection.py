"""A connection with curvature on the plane.

Taking Gamma_111 = x2 (all other lower symbols zero) gives nonzero R, so the
correction series gamma is nontrivial.  Every stage is certified exactly.
"""

from fedosov import (
    build_fedosov,
    deformation_coefficients,
    fedosov_D,
    flat_section,
    moyal_flat,
    parity_defects,
    standard_structure,
    star_product,
    validate_connection,
)
from fedosov.checks import CheckContext, run_suite

st = standard_structure(1)
conn = validate_connection(st, {(1, 1, 1): "x2", (1, 1, 2): "x1", (1, 2, 1): "x1", (2, 1, 1): "x1"})
data = build_fedosov(st, conn, N=8)

print("R =", data.R)
for t in range(3, data.N + 1):
    piece = data.gamma.homogeneous(t)
    if piece:
        print(f"gamma_{t} =", piece)
print("certificate:", data.report)

b = flat_section(data, st.poly("x1")).b
print("\nflat section of x1:", b)
print("D(b) =", fedosov_D(data, b))

u, v = st.poly("x1^2"), st.poly("x2^2")
s = star_product(data, u, v, 3)
print(f"\n{u} * {v} =", s)
print("Moyal would give  ", moyal_flat(st, u, v, 3))

print("\nmu_t(u, v):", [str(c) for c in deformation_coefficients(data, u, v, 3)])
print("parity defects:", [str(d) for d in parity_defects(data, u, v, 3)])

ctx = CheckContext(st, conn, N=6)
for name in ("flatness", "d2", "star"):
    for r in run_suite(ctx, name):
        print(" ", r.line())
