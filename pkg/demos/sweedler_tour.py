"""A tour of Sweedler's four-dimensional algebra with its R-matrix at lambda = 1.

Run with ``python demos/sweedler_tour.py``.
"""

from hopfx import (
    QTStructure,
    build_braid_rep,
    build_braided_dual,
    build_elliptic,
    check_elliptic_relation,
    check_k_reflection,
    check_presentation,
    example_sweedler,
    validate_hopf,
    validate_qt,
)
from hopfx.quasitriangular import compute_u_nu, find_ribbon

H, R = example_sweedler(1)
Q = QTStructure.build(H, R)
print(H)  # basis 1, g, x, gx

# the validators check every axiom on basis elements
rep = validate_hopf(H)
rep.extend(validate_qt(Q))
print("all axioms hold:", rep.ok, f"({len(rep.checks)} checks)")

# Drinfeld element u and the ribbon element
u, nu = compute_u_nu(Q)
print("u =", u, " nu =", nu, " ribbon v =", find_ribbon(Q))

# the twisted duals ~H_k and the reflection identity of the canonical element
for k in (0, 1, 2):
    B = build_braided_dual(Q, k)
    print(f"k={k}: reflection identity holds:", check_k_reflection(Q, k, B).ok)

# elliptic double E^(1): 16 dimensional, cross relation from the T element
E = build_elliptic(Q, 1)
print(E, "cross relation:", check_elliptic_relation(E).ok)
f, g = E.first({2: 1}), E.second({2: 1})
print("(1 (x) e^x)(e^x (x) 1) =", E.mul(g, f))

# braid group of the punctured torus on E (x) H (x) H (x) H
br = build_braid_rep(Q, build_elliptic(Q, 0), 3)
print("representation on", br.dim, "dimensions")
print(check_presentation(br).summary())
