"""The Drinfeld double of Z/2: factorizability, the Heisenberg double and the Fourier transform."""

from hopfx import (
    QTStructure,
    build_Phi,
    build_heisenberg,
    check_fourier,
    cyclic_group,
    example_drinfeld_double,
    find_ribbon,
    fourier_transform,
    is_factorizable,
)
from hopfx.braided_dual import factorization_map

H, R = example_drinfeld_double(cyclic_group(2))
Q = QTStructure.build(H, R)
Q.ribbon = find_ribbon(Q)
print(H, "ribbon:", Q.ribbon)

phi = factorization_map(Q)
print("rank of phi:", phi.rank(), "factorizable:", is_factorizable(Q))

DH = build_heisenberg(Q)
P = build_Phi(Q, DH=DH)
print("Phi: E^(0) -> D_H has rank", P.rank, "and is invertible:", P.inverse is not None)

data = fourier_transform(Q)
rep = check_fourier(data)
print(rep.summary())

# orbit of one basis vector under F
v = {5: 1}
for step in range(5):
    print(step, v)
    v = data.F.apply(v)
