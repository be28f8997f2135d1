"""Classification of trace-free 2x2 systems and their reduction matrices.

Cases, read in order: two solutions in the field (Finite), exactly one
(Additive), two exponential solutions (Multiplicative), one exponential
solution (Borel), nothing detected (FullOrUnknown).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .diffop import DEFAULT_DEGREE_CAP, DiffOp, exponential_solutions, rational_solutions
from .errors import DegenerateCyclicVector, NonZeroTrace, ShapeMismatch, UnsupportedExtension
from .field import FieldElement, coefficient_vectors
from .linalg import const_nullspace
from .linsys import Matrix, gauge

FINITE = "Finite"
ADDITIVE = "Additive"
MULTIPLICATIVE = "Multiplicative"
BOREL = "Borel"
FULL_OR_UNKNOWN = "FullOrUnknown"

_CYCLIC = [(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)]


@dataclass
class Scalarization:
    L: DiffOp
    cyclic: tuple
    W: Matrix
    Winv: Matrix

    def reconstruct(self, z: FieldElement):
        """Vector solution from a scalar solution z of L."""
        return self.Winv.apply([z, z.derive()])

    def from_rate(self, a: FieldElement):
        """Vector F with Y = f*F whenever derive(f) = a*f and f solves L."""
        return self.Winv.apply([a.desc.one(), a])


@dataclass
class NveClassification:
    case: str
    P: Matrix
    reduced: Matrix
    extension_used: object = None
    witness: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)


def system_to_scalar(N: Matrix) -> Scalarization:
    """Cyclic-vector elimination: z = c.Y satisfies a second-order operator."""
    desc = N.desc
    for c in _CYCLIC:
        row = [desc.const(c[0]), desc.const(c[1])]
        r1 = [row[0] * N[0, j] + row[1] * N[1, j] for j in range(2)]
        W = Matrix(desc, [row, r1])
        if W.det().is_zero():
            continue
        r2 = [r1[j].derive() + r1[0] * N[0, j] + r1[1] * N[1, j] for j in range(2)]
        Winv = W.inverse()
        k0 = r2[0] * Winv[0, 0] + r2[1] * Winv[1, 0]
        k1 = r2[0] * Winv[0, 1] + r2[1] * Winv[1, 1]
        L = DiffOp(desc, [-k0, -k1, desc.one()])
        return Scalarization(L, c, W, Winv)
    raise DegenerateCyclicVector("no cyclic vector among the standard candidates")


def _det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _monic_scale(x: FieldElement):
    r = x.base if not x.base.is_zero() else x.rad
    return r.num.lc()


def _triangular_pair(Y1, Y2):
    """Basis change making the second vector's first entry zero when possible,
    with the first vector's first entry scaled to a monic numerator."""
    rel = const_nullspace(coefficient_vectors([Y1[0], Y2[0]]))
    if rel:
        c1, c2 = rel[0]
        Z = [Y1[k].scale(c1) + Y2[k].scale(c2) for k in range(2)]
        other = Y1 if c1.is_zero() else Y2
        Y1, Y2 = other, Z
    if not Y1[0].is_zero():
        k = _monic_scale(Y1[0]).inverse()
        Y1 = [x.scale(k) for x in Y1]
    return Y1, Y2


def _complete_unimodular(Y):
    desc = Y[0].desc
    if not Y[0].is_zero():
        return [desc.zero(), Y[0].inverse()]
    return [-Y[1].inverse(), desc.zero()]


def _shape_ok(B: Matrix, case: str) -> bool:
    if case == FINITE:
        return B.is_zero()
    if case == ADDITIVE:
        return B[0, 0].is_zero() and B[1, 0].is_zero() and B[1, 1].is_zero()
    if case == MULTIPLICATIVE:
        return B[0, 1].is_zero() and B[1, 0].is_zero()
    if case == BOREL:
        return B[1, 0].is_zero()
    return True


def classify_and_reduce(N: Matrix, degree_cap=DEFAULT_DEGREE_CAP) -> NveClassification:
    desc = N.desc
    if N.shape != (2, 2):
        raise ShapeMismatch("expected a 2x2 system")
    if not N.trace().is_zero():
        raise NonZeroTrace("normal variational matrix must be trace-free")
    Id = Matrix.identity(desc, 2)
    if N.is_zero():
        return NveClassification(FINITE, Id, N, witness={"solutions": []})
    sc = system_to_scalar(N)
    sols = rational_solutions(sc.L, degree_cap).basis
    vecs = [sc.reconstruct(y) for y in sols]
    witness = {"scalar_operator": sc.L, "cyclic_vector": sc.cyclic}
    if len(vecs) >= 2:
        Y1, Y2 = _triangular_pair(vecs[0], vecs[1])
        d = _det2(Y1, Y2)
        if not d.is_constant():
            raise AssertionError("Wronskian of a trace-free system is not constant")
        Y2 = [x / d for x in Y2]
        P = Matrix.from_columns(desc, [Y1, Y2])
        return _finish(FINITE, N, P, dict(witness, Y1=Y1, Y2=Y2))
    if len(vecs) == 1:
        Y1 = vecs[0]
        F2 = _complete_unimodular(Y1)
        P = Matrix.from_columns(desc, [Y1, F2])
        return _finish(ADDITIVE, N, P, dict(witness, Y1=Y1, F2=F2))
    search = exponential_solutions(sc.L)
    notes = list(search.notes)
    rates = []
    for s in search.solutions:
        u = s.u
        a = FieldElement(desc, u.base, u.rad) * desc.weight if not desc.is_plain else FieldElement(desc, u.base, u.rad)
        rates.append((a, s))
    for (a1, s1), (a2, s2) in combinations(rates, 2):
        F1, F2 = sc.from_rate(a1), sc.from_rate(a2)
        d = _det2(F1, F2)
        if not d.is_zero():
            P = Matrix.from_columns(desc, [F1, [x / d for x in F2]])
            return _finish(MULTIPLICATIVE, N, P, dict(witness, F1=F1, F2=F2, a=a1), notes)
    if any(s.algebraic for _, s in rates):
        raise UnsupportedExtension("algebraic exponential solution outside the working field")
    if rates and search.complete:
        a1, s1 = rates[0]
        F1 = sc.from_rate(a1)
        P = Matrix.from_columns(desc, [F1, _complete_unimodular(F1)])
        return _finish(BOREL, N, P, dict(witness, F1=F1, a=a1), notes)
    if not search.complete:
        notes.append("exponential-solution search incomplete")
    return NveClassification(FULL_OR_UNKNOWN, Id, N, witness=dict(witness, exponential=rates), notes=notes)


def _finish(case, N, P, witness, notes=None):
    if not P.det() == 1:
        raise AssertionError("reduction matrix is not unimodular")
    B = gauge(P, N)
    if not _shape_ok(B, case):
        raise ShapeMismatch(f"gauge result does not have the {case} shape")
    return NveClassification(case, P, B, witness=witness, notes=list(notes or []))
