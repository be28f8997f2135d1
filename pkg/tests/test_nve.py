import pytest

from reducedform.errors import NotASolution, NotHamiltonian, ZeroSolution
from reducedform.field import make_field
from reducedform.linsys import J_matrix, Matrix, is_symplectic
from reducedform.nve import completion_matrix, normalize_variational

G = make_field("t")
t = G.t
HILL = make_field("t", "4*t^6 - t^2 + 2", "sqrtD")


def hill_A(F):
    f, fp, i = F.t, F.sqrtD, F("i")
    return Matrix(F, [[0, -4 * f ** 2, 0, -i], [0, 0, -i, 0], [0, -i * (1 - 60 * f ** 4), 0, 0],
                      [-i * (1 - 60 * f ** 4), -8 * i * f * fp, 4 * f ** 2, 0]])


def hill_column(F):
    fp = F.sqrtD
    return [fp, F.zero(), F.zero(), F("i") * fp.derive()]


def test_unit_column():
    e1 = [G.one(), G.zero(), G.zero(), G.zero()]
    assert completion_matrix(e1) == Matrix.identity(G, 4)


def test_completion_is_symplectic():
    for z in ([t, t ** 2, 1 / t, G(5)], [1 / (t - 1), G.zero(), t, G.one()]):
        P = completion_matrix(z)
        assert is_symplectic(P)
        assert P.col(0) == z


def test_completion_without_first_entry():
    z = [G.zero(), t, G.zero(), G.one()]
    P = completion_matrix(z)
    assert is_symplectic(P) and P.col(0) == z
    with pytest.raises(ZeroSolution):
        completion_matrix([G.zero()] * 4)


def test_hill_normalization():
    F = HILL
    f, fp, i = F.t, F.sqrtD, F("i")
    fpp = fp.derive()
    ns = normalize_variational(hill_A(F), hill_column(F))
    z, o = F.zero(), F.one()
    # completion from z'; the (4,1) entry is z'_4 = i f''
    assert ns.P == Matrix(F, [[fp, z, z, z], [z, o, z, z], [z, i * fpp / fp, 1 / fp, z], [i * fpp, z, z, o]])
    Fx = 8 * i * f * (8 * f ** 6 - 2) / fp
    assert ns.A_N == Matrix(F, [[z, -4 * f ** 2 / fp, z, -i / fp], [z, fpp / fp, -i / fp, z], [z, z, z, z],
                                [z, Fx, 4 * f ** 2 / fp, -fpp / fp]])
    assert ns.N == Matrix(F, [[fpp / fp, z], [Fx, -fpp / fp]])


def test_zero_system():
    e1 = [G.one(), G.zero(), G.zero(), G.zero()]
    ns = normalize_variational(Matrix.zeros(G, 4), e1)
    assert ns.A_N.is_zero() and ns.N.is_zero()


def test_free_particle():
    # H = (p1^2 + p2^2)/2, straight line q = (t, 0): z' = (1, 0, 0, 0)
    S = Matrix(G, [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    A = J_matrix(4).to_field(G) @ S
    ns = normalize_variational(A, [G.one(), G.zero(), G.zero(), G.zero()])
    assert ns.N[0, 0].is_zero() and ns.N[1, 1].is_zero()


def test_errors():
    with pytest.raises(NotASolution):
        normalize_variational(Matrix.zeros(G, 4), [t, G.zero(), G.zero(), G.zero()])
    with pytest.raises(NotHamiltonian):
        normalize_variational(Matrix.identity(G, 4), [G.one(), G.zero(), G.zero(), G.zero()])
