"""Symplectic completion of a particular solution and the normal variational equation."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotASolution, NotHamiltonian, ShapeMismatch, ZeroSolution
from .linsys import Matrix, gauge, is_hamiltonian, symplectic_gram_schmidt


@dataclass
class NormalizedSystem:
    P: Matrix
    A_N: Matrix
    N: Matrix

    def coefficients(self):
        """The off-block entries a12, a13, a14 of A_N (1-based names)."""
        A = self.A_N
        return {"a12": A[0, 1], "a13": A[0, 2], "a14": A[0, 3]}


def completion_matrix(zp) -> Matrix:
    """Symplectic matrix whose first column is zp."""
    zp = list(zp)
    if len(zp) != 4:
        raise ValueError("completion is implemented for 4-dimensional systems")
    desc = zp[0].desc
    if all(x.is_zero() for x in zp):
        raise ZeroSolution("particular solution is zero")
    z1, z2, z3, z4 = zp
    zero, one = desc.zero(), desc.one()
    if not z1.is_zero():
        inv = z1.inverse()
        return Matrix(desc, [
            [z1, zero, zero, zero],
            [z2, one, zero, zero],
            [z3, z4 * inv, inv, -z2 * inv],
            [z4, zero, zero, one],
        ])
    k = next(i for i, x in enumerate(zp) if not x.is_zero())
    units = [[one if r == j else zero for r in range(4)] for j in range(4) if j != k]
    cols = symplectic_gram_schmidt([zp] + units)
    return Matrix.from_columns(desc, cols)


def normalize_variational(A: Matrix, zp) -> NormalizedSystem:
    zp = list(zp)
    if not is_hamiltonian(A):
        raise NotHamiltonian("system matrix is not in sp(4)")
    lhs = [x.derive() for x in zp]
    rhs = A.apply(zp)
    if any(not (a - b).is_zero() for a, b in zip(lhs, rhs)):
        raise NotASolution("given column does not solve the system")
    P = completion_matrix(zp)
    A_N = gauge(P, A)
    if any(not A_N[i, 0].is_zero() for i in range(4)) or any(not A_N[2, j].is_zero() for j in range(4)):
        raise ShapeMismatch("normalized system lacks the expected zero column/row")
    N = A_N.block([1, 3], [1, 3])
    if not N.trace().is_zero():
        raise ShapeMismatch("normal variational matrix has nonzero trace")
    return NormalizedSystem(P, A_N, N)
