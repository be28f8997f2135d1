import pytest
from hypothesis import strategies as st

from reducedform.field import GaussianRational, Poly, make_field
from reducedform.linsys import J_matrix, Matrix

BASE = make_field("t")
# a twisted field shaped like the Hill one, but cheaper
TWISTED = make_field("t", "t^3 + 1", "sqrtD")


@pytest.fixture
def G():
    return BASE


@pytest.fixture
def t():
    return BASE.t


small_int = st.integers(-3, 3)
gauss = st.builds(GaussianRational, small_int, st.sampled_from([0, 0, 0, 1, -1]))


@st.composite
def polys(draw, max_degree=2, complex_coeffs=False):
    c = st.builds(GaussianRational, small_int, small_int) if complex_coeffs else small_int
    return Poly(draw(st.lists(c, min_size=0, max_size=max_degree + 1)))


@st.composite
def base_elements(draw, desc=BASE, nonzero=False, max_degree=2):
    num = draw(polys(max_degree))
    if nonzero and num.is_zero():
        num = Poly([1])
    den = draw(polys(1))
    if den.is_zero():
        den = Poly([1])
    return desc.rat(num, den)


@st.composite
def twisted_elements(draw, nonzero=False):
    a = draw(base_elements(BASE, max_degree=2))
    b = draw(base_elements(BASE, max_degree=1))
    x = TWISTED.embed(a.base) + TWISTED.embed(b.base) * TWISTED.sqrtD
    if nonzero and x.is_zero():
        x = TWISTED.one()
    return x


@st.composite
def hamiltonian_matrices(draw, desc=BASE):
    """J S with S symmetric."""
    S = [[desc.zero()] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(i, 4):
            if draw(st.booleans()):
                S[i][j] = S[j][i] = draw(base_elements(desc))
    return J_matrix(4).to_field(desc) @ Matrix(desc, S)


@st.composite
def symplectic_matrices(draw, desc=BASE):
    """Products of symplectic shears and block-diagonal factors."""
    one, zero = desc.one(), desc.zero()
    P = Matrix.identity(desc, 4)
    for _ in range(draw(st.integers(1, 2))):
        kind = draw(st.sampled_from(["upper", "lower", "diag"]))
        if kind == "diag":
            a = draw(base_elements(desc, nonzero=True, max_degree=1))
            b = draw(base_elements(desc, max_degree=1))
            U = [[a, b], [zero, a.inverse()]]
            # [[U, 0], [0, U^-T]]
            Uit = [[U[1][1], zero], [-U[0][1], U[0][0]]]
            F = [[U[0][0], U[0][1], zero, zero], [U[1][0], U[1][1], zero, zero],
                 [zero, zero, Uit[0][0], Uit[0][1]], [zero, zero, Uit[1][0], Uit[1][1]]]
        else:
            s11, s12, s22 = (draw(base_elements(desc, max_degree=1)) for _ in range(3))
            S = [[s11, s12], [s12, s22]]
            F = [[one if i == j else zero for j in range(4)] for i in range(4)]
            for i in range(2):
                for j in range(2):
                    if kind == "upper":
                        F[i][j + 2] = S[i][j]
                    else:
                        F[i + 2][j] = S[i][j]
        P = P @ Matrix(desc, F)
    return P


@st.composite
def invertible_matrices(draw, desc=BASE, n=4):
    """Unit lower-triangular times a diagonal with nonzero entries: always invertible."""
    L = [[desc.one() if i == j else (draw(base_elements(desc, max_degree=1)) if i > j and draw(st.booleans()) else desc.zero())
          for j in range(n)] for i in range(n)]
    D = [[draw(base_elements(desc, nonzero=True, max_degree=1)) if i == j else desc.zero() for j in range(n)]
         for i in range(n)]
    U = [[desc.one() if i == j else (draw(small_int) if i < j and draw(st.booleans()) else 0) for j in range(n)]
         for i in range(n)]
    return Matrix(desc, L) @ Matrix(desc, D) @ Matrix(desc, U)

