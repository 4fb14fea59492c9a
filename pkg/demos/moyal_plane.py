"""The flat plane: with zero Christoffel symbols the construction reproduces Moyal.

Run from the repository root::

    python demos/moyal_plane.py
"""

from fedosov import (
    build_fedosov,
    flat_section,
    moyal_flat,
    poisson_bracket,
    standard_structure,
    star_product,
    validate_connection,
)

st = standard_structure(1)
conn = validate_connection(st)
data = build_fedosov(st, conn, N=8)
print("curvature:", data.R, "  gamma:", data.gamma)

# Flat sections are Taylor expansions shifted along P.
for u in ("x1", "x2", "x1^2*x2"):
    print(f"flat section of {u}:", flat_section(data, st.poly(u)).b)

x1, x2 = st.poly("x1"), st.poly("x2")
print("\nx1 * x2 =", star_product(data, x1, x2, 1))
print("x2 * x1 =", star_product(data, x2, x1, 1))

u, v = st.poly("x1^2 + x2"), st.poly("x1*x2^3")
s = star_product(data, u, v, 3)
print(f"\n({u}) * ({v}) mod h^4:\n  {s}")
print("closed-form Moyal agrees:", s == moyal_flat(st, u, v, 3))

comm = s - star_product(data, v, u, 3)
print("commutator:", comm)
print("h-coefficient equals {u, v} =", poisson_bracket(st, u, v))
