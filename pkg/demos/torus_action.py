"""SL2(Z)~ acting on the elliptic double E^(1) through the generators A and B."""

import sys

from hopfx import (
    QTStructure,
    build_mcg_action,
    check_mcg_relations,
    cyclic_group,
    example_drinfeld_double,
    example_sweedler,
)

fixtures = {"H4": example_sweedler(1), "D(Z2)": example_drinfeld_double(cyclic_group(2))}
name = sys.argv[1] if len(sys.argv) > 1 else "H4"
Q = QTStructure.build(*fixtures[name])

act = build_mcg_action(Q)
print(name, "E^(1) dimension", act.E.dim)
print(check_mcg_relations(act).summary())

# A sends X to Y; read off the image of the first generator column by column
A = act.A
for i in range(4):
    print(f"A(e^{i} (x) 1) =", A.apply(act.E.first({i: 1})))

# the order of A, if finite within a few steps
P = A
for n in range(1, 13):
    if P.is_identity():
        print("A has order", n)
        break
    P = P @ A
else:
    print("A^n != 1 for n <= 12")
