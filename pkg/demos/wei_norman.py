"""Closed-form fundamental matrices once the algebra is abelian.

The templates name their primitives (W for integrals, L for logarithms,
E for exponentials); verification differentiates symbolically using the
recorded derivatives of those primitives.
"""
from reducedform.field import make_field
from reducedform.linsys import Matrix
from reducedform.sp4 import ADDITIVE_GN, M3, MM, MULTIPLICATIVE_GN, TRIVIAL
from reducedform.weinorman import (
    block_determinant,
    fundamental_shape,
    is_formally_symplectic,
    solve_abelian,
    verify_fundamental,
)

G = make_field("t")
t = G.t

for case in (TRIVIAL, ADDITIVE_GN, MULTIPLICATIVE_GN):
    U = fundamental_shape(case)
    print(f"-- {case} template")
    for row in U.to_strs():
        print("   " + "  ".join(f"{x:>10}" for x in row))
    print(f"   symplectic: {is_formally_symplectic(U)}, block determinant: {block_determinant(U).to_str()}")

R = Matrix.zeros(G, 4) + MM.to_field(G).scale(1 / t) + M3.to_field(G).scale(t ** 2)
U = solve_abelian(R)
print("-- abelian system (1/t) Mm + t^2 M3")
for row in U.to_strs():
    print("   " + "  ".join(f"{x:>10}" for x in row))
for name, p in sorted(U.primitives.items()):
    print(f"   {name}: {p.kind}, derivative {p.derivative.to_str() if p.derivative else 'unset'}")
print("   U' = R U:", verify_fundamental(U, R))
