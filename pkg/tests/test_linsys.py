import pytest

from reducedform.errors import DependentInput, OddDimension, SingularGauge
from reducedform.field import make_field
from reducedform.linsys import (
    ConstMatrix,
    J_matrix,
    Matrix,
    associated_lie_algebra,
    bracket,
    gauge,
    is_hamiltonian,
    is_maximally_reduced,
    is_symplectic,
    symplectic_gram_schmidt,
)
from reducedform.nve import completion_matrix
from reducedform.sp4 import M1, M2, M3, MM

X = make_field("x")
x = X.t
G = make_field("t")
t = G.t


def fm(desc, *pairs):
    out = Matrix.zeros(desc, 4)
    for f, M in pairs:
        out = out + M.to_field(desc).scale(f)
    return out


def test_gauge_identity():
    A = fm(G, (t, M1), (1 / t, M3))
    assert gauge(Matrix.identity(G, 4), A) == A


def test_gauge_worked_example():
    M = fm(X, ((1 + x ** 2) / x, M1), ((x ** 3 - 4 * x ** 2 + 1) / (x - 4), M3))
    Q = Matrix.identity(X, 4) + fm(X, (x ** 2 / 2, M1), (x ** 3 / 3, M3))
    assert gauge(Q, M) == fm(X, (1 / x, M1), (1 / (x - 4), M3))
    assert gauge(Q.inverse(), gauge(Q, M)) == M


def test_singular_gauge():
    with pytest.raises(SingularGauge):
        gauge(Matrix.zeros(G, 4), Matrix.zeros(G, 4))


def test_hamiltonian_predicates():
    S = Matrix(G, [[t, 1, 0, 0], [1, 0, t ** 2, 0], [0, t ** 2, 1 / t, 0], [0, 0, 0, 3]])
    assert is_hamiltonian(J_matrix(4).to_field(G) @ S)
    assert not is_hamiltonian(Matrix.identity(G, 4))
    with pytest.raises(OddDimension):
        is_hamiltonian(Matrix.identity(G, 3))


def test_hill_matrix_is_hamiltonian():
    F = make_field("t", "4*t^6 - t^2 + 2", "sqrtD")
    f, fp, i = F.t, F.sqrtD, F("i")
    A = Matrix(F, [[0, -4 * f ** 2, 0, -i], [0, 0, -i, 0], [0, -i * (1 - 60 * f ** 4), 0, 0],
                   [-i * (1 - 60 * f ** 4), -8 * i * f * fp, 4 * f ** 2, 0]])
    assert is_hamiltonian(A)


def test_symplectic_predicates():
    assert is_symplectic(Matrix.identity(G, 4))
    assert not is_symplectic(Matrix.identity(G, 4).scale(G(2)))
    assert is_symplectic(completion_matrix([t, 1 / t, t ** 2 + 1, G(3)]))


def test_associated_algebra_example():
    # A = f1 M1 + f2 M2 + f3 M3 in the example's shape
    A = Matrix(G, [[0, t, t ** 3, 1 / t], [0, 0, 1 / t, 0], [0, 0, 0, 0], [0, 0, -t, 0]])
    dec, alg = associated_lie_algebra(A)
    assert len(dec) == 3 and alg.dimension == 3
    assert bracket(M1, M2) == M3.scale(2)
    assert not is_maximally_reduced(A)
    A0 = Matrix(G, [[0, t, 0, 1 / t], [0, 0, 1 / t, 0], [0, 0, 0, 0], [0, 0, -t, 0]])
    dec, alg = associated_lie_algebra(A0)
    assert len(dec) == 2 and alg.dimension == 3 and alg.generators_count == 2
    assert is_maximally_reduced(A0)


def test_scalar_matrix_algebra():
    dec, alg = associated_lie_algebra(Matrix.identity(G, 4).scale(t))
    assert alg.dimension == 1 and alg.is_abelian()


def test_brackets():
    assert bracket(M1, M1).is_zero()
    # the multiplicative table has [Mm, M1] = -M1
    assert bracket(MM, M1) == -M1


def test_gram_schmidt_examples():
    e = [[1 if i == j else 0 for i in range(4)] for j in range(4)]
    basis = [[G(c) for c in v] for v in e]
    assert symplectic_gram_schmidt(basis) == basis
    scaled = [[G(2 * c) for c in e[0]]] + basis[1:]
    out = symplectic_gram_schmidt(scaled)
    E = Matrix.from_columns(G, out)
    J = J_matrix(4).to_field(G)
    assert E.transpose() @ J @ E == J
    assert out[0] == scaled[0]
    with pytest.raises(DependentInput):
        symplectic_gram_schmidt([basis[0], basis[0], basis[2], basis[3]])


def test_const_matrix_helpers():
    M = ConstMatrix([[0, 1], [0, 0]])
    assert M.is_nilpotent() and not M.is_diagonal()
    assert (M @ M).is_zero()
