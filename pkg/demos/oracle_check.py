"""Cross-check the product against brute-force PBW straightening.

The Poisson matrix below has an x-dependent inverse, so omega varies from
point to point.  The oracle never calls the product code: it multiplies
symmetrized words, rewrites y_b y_a -> y_a y_b + h omega_ba until sorted, and
reads off the h-series.
"""

import time

from fedosov import WeylFormElement, pbw_product, project, symmetrize, validate_structure, weyl_product
from fedosov.checks import oracle_agreement

P = [["0", "0", "1", "0"], ["0", "0", "0", "1"], ["-1", "0", "0", "-x1"], ["0", "-1", "x1", "0"]]
st = validate_structure(P)
print(st.describe())

a, b = (0, 1, 1, 0), (1, 0, 0, 1)
ws = pbw_product(st, symmetrize(st, a), symmetrize(st, b))
print("\nwords:", {f"h^{m} y{''.join(map(str, w))}": str(c) for (m, w), c in ws.items()})
print("h-series:", project(st, ws))
print("product: ", weyl_product(st, WeylFormElement.monomial(1, 0, a, (), 4),
                                WeylFormElement.monomial(1, 0, b, (), 4)))

for d in (3, 4, 5):
    t = time.perf_counter()
    cases, bad = oracle_agreement(st, d)
    print(f"degree <= {d}: {cases} pairs, {bad} mismatches, {time.perf_counter() - t:.2f}s")
