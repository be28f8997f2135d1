"""The three normal-block shapes and what decides abelianity in each.

Each table row is a 4x4 matrix B in sp(4) with fixed zero pattern.  The
decision reduces to integrating, or to a Risch equation, in the base field.
"""
from reducedform.field import make_field
from reducedform.linsys import Matrix, associated_lie_algebra
from reducedform.sp4 import (
    ADDITIVE_GN,
    BASIS,
    MULTIPLICATIVE_GN,
    TRIVIAL,
    abelianity,
    shape_of,
)

G = make_field("t")


def table(case, **coeffs):
    B = Matrix.zeros(G, 4)
    for name, text in coeffs.items():
        B = B + BASIS[name].to_field(G).scale(G.parse(text))
    return shape_of(B, case)


examples = [
    ("trivial normal block, integrable coefficients", table(TRIVIAL, M1="2*t", M2="3*t^2")),
    ("trivial normal block, residues in ratio 1:2", table(TRIVIAL, M1="1/t", M2="2/t")),
    ("trivial normal block, poles at 0 and 1", table(TRIVIAL, M1="1/t", M2="1/(t - 1)")),
    ("additive normal block", table(ADDITIVE_GN, M1="2*t", Ma="1/t")),
    ("additive normal block, incompatible poles", table(ADDITIVE_GN, M1="1/(t - 1)", Ma="1/t")),
    ("multiplicative normal block", table(MULTIPLICATIVE_GN, M1="t", Mm="1")),
    ("multiplicative, exponential integral", table(MULTIPLICATIVE_GN, M1="1/t", Mm="1")),
]

for title, shape in examples:
    v = abelianity(shape)
    print(f"-- {title}")
    print("   coefficients:", {k: x.to_expr() for k, x in shape.coefficients().items()})
    if v.is_abelian:
        c = v.certificate
        dec, alg = associated_lie_algebra(c.reduced)
        print(f"   abelian by {c.condition}; reduced form lies in {c.target.describe()}")
        print(f"   y1 = {c.y1.to_expr()}, y2 = {c.y2.to_expr()}; algebra dimension {alg.dimension}")
    else:
        for o in v.obstructions:
            print(f"   non-abelian: {o.statement}")
