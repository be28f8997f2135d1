"""Matrices over the coefficient field, gauge transformations and constant Lie algebras."""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import (
    DegenerateForm,
    DependentInput,
    MixedFields,
    OddDimension,
    SingularGauge,
    SizeMismatch,
)
from .field import ONE, ZERO, FieldDescriptor, FieldElement, GaussianRational, coefficient_vectors
from .linalg import rank, row_reduce, solve


class ConstMatrix:
    """Square (or rectangular) matrix of Gaussian rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(GaussianRational.of(x) for x in r) for r in rows)

    @classmethod
    def zeros(cls, n, m=None):
        return cls([[0] * (m or n) for _ in range(n)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, i, j, n):
        """E_ij with 1-based indices."""
        return cls([[1 if (r, c) == (i - 1, j - 1) else 0 for c in range(n)] for r in range(n)])

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, o):
        if isinstance(o, ConstMatrix):
            return self.rows == o.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def _check(self, o):
        if self.shape != o.shape:
            raise SizeMismatch(f"shapes {self.shape} and {o.shape}")

    def __add__(self, o):
        self._check(o)
        return ConstMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __sub__(self, o):
        self._check(o)
        return ConstMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __neg__(self):
        return ConstMatrix([[-a for a in r] for r in self.rows])

    def scale(self, k):
        k = GaussianRational.of(k)
        return ConstMatrix([[a * k for a in r] for r in self.rows])

    def __rmul__(self, k):
        return self.scale(k)

    def __matmul__(self, o):
        if self.shape[1] != o.shape[0]:
            raise SizeMismatch(f"cannot multiply {self.shape} by {o.shape}")
        cols = list(zip(*o.rows))
        out = []
        for r in self.rows:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in cols])
        return ConstMatrix(out)

    __mul__ = __matmul__

    def transpose(self):
        return ConstMatrix(list(zip(*self.rows)))

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def flat(self):
        return [x for r in self.rows for x in r]

    def is_nilpotent(self) -> bool:
        p = self
        for _ in range(self.n):
            if p.is_zero():
                return True
            p = p @ self
        return p.is_zero()

    def is_diagonal(self) -> bool:
        return all(x.is_zero() for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def to_field(self, desc: FieldDescriptor) -> "Matrix":
        return Matrix(desc, [[desc.const(x) for x in r] for r in self.rows])

    def to_strs(self):
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return "ConstMatrix(" + repr(self.to_strs()) + ")"


def bracket(M: ConstMatrix, N: ConstMatrix) -> ConstMatrix:
    M._check(N)
    return M @ N - N @ M


class ConstLieAlgebra:
    """Span of constant matrices closed under the bracket."""

    def __init__(self, basis: Sequence[ConstMatrix], n: int):
        self.basis = list(basis)
        self.n = n
        self._gens = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @classmethod
    def closure(cls, gens: Sequence[ConstMatrix], n: int | None = None) -> "ConstLieAlgebra":
        gens = [g for g in gens if not g.is_zero()]
        if n is None:
            n = gens[0].n if gens else 0
        basis = _independent(gens)
        changed = True
        while changed:
            changed = False
            for a, b in combinations(list(basis), 2):
                c = bracket(a, b)
                if not c.is_zero() and not _in_span(basis, c):
                    basis.append(c)
                    changed = True
        return cls(basis, n)

    def contains(self, M: ConstMatrix) -> bool:
        return M.is_zero() or _in_span(self.basis, M)

    def is_abelian(self) -> bool:
        return all(bracket(a, b).is_zero() for a, b in combinations(self.basis, 2))

    @property
    def generators_count(self) -> int:
        """Smallest number of basis elements generating the algebra (exhaustive)."""
        if self._gens is None:
            d = self.dimension
            self._gens = d
            for k in range(0, d + 1):
                hit = False
                for sub in combinations(self.basis, k):
                    if ConstLieAlgebra.closure(list(sub), self.n).dimension == d:
                        hit = True
                        break
                if hit:
                    self._gens = k
                    break
        return self._gens


def _independent(mats):
    out = []
    for m in mats:
        if not _in_span(out, m):
            out.append(m)
    return out


def _in_span(basis, M: ConstMatrix) -> bool:
    if M.is_zero():
        return True
    if not basis:
        return False
    vecs = [b.flat() for b in basis]
    return rank(vecs + [M.flat()]) == rank(vecs)


def const_coordinates(basis: Sequence[ConstMatrix], M: ConstMatrix):
    """Coordinates of M in a list of independent constant matrices, or None."""
    cols = [b.flat() for b in basis]
    rows = [[c[k] for c in cols] for k in range(len(M.flat()))]
    return solve(rows, M.flat(), ZERO, ONE) if basis else ([] if M.is_zero() else None)


# ---------------------------------------------------------------------------


class Matrix:
    """Rectangular grid of field elements sharing one descriptor."""

    __slots__ = ("desc", "rows")

    def __init__(self, desc: FieldDescriptor, rows):
        out = []
        width = None
        for r in rows:
            rr = []
            for x in r:
                if isinstance(x, FieldElement):
                    if x.desc != desc:
                        raise MixedFields("matrix entry from another field")
                    rr.append(x)
                else:
                    rr.append(desc(x))
            if width is None:
                width = len(rr)
            elif width != len(rr):
                raise SizeMismatch("ragged matrix rows")
            out.append(tuple(rr))
        self.desc = desc
        self.rows = tuple(out)

    @classmethod
    def identity(cls, desc, n):
        return cls(desc, [[desc.one() if i == j else desc.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, desc, n, m=None):
        return cls(desc, [[desc.zero()] * (m or n) for _ in range(n)])

    @classmethod
    def from_columns(cls, desc, cols):
        return cls(desc, [list(r) for r in zip(*cols)])

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [list(c) for c in zip(*self.rows)]

    def __eq__(self, o):
        if isinstance(o, Matrix):
            return self.desc == o.desc and self.rows == o.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def _check(self, o):
        if self.shape != o.shape:
            raise SizeMismatch(f"shapes {self.shape} and {o.shape}")
        if self.desc != o.desc:
            raise MixedFields("matrices over different fields")

    def __add__(self, o):
        if isinstance(o, ConstMatrix):
            o = o.to_field(self.desc)
        self._check(o)
        return Matrix(self.desc, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __sub__(self, o):
        if isinstance(o, ConstMatrix):
            o = o.to_field(self.desc)
        self._check(o)
        return Matrix(self.desc, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __neg__(self):
        return Matrix(self.desc, [[-a for a in r] for r in self.rows])

    def scale(self, k):
        if not isinstance(k, FieldElement):
            k = self.desc(k)
        return Matrix(self.desc, [[a * k for a in r] for r in self.rows])

    def __matmul__(self, o):
        if isinstance(o, ConstMatrix):
            o = o.to_field(self.desc)
        if self.shape[1] != o.shape[0]:
            raise SizeMismatch(f"cannot multiply {self.shape} by {o.shape}")
        if self.desc != o.desc:
            raise MixedFields("matrices over different fields")
        cols = list(zip(*o.rows))
        zero = self.desc.zero()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.desc, out)

    __mul__ = __matmul__

    def apply(self, v):
        return [sum((a * x for a, x in zip(r, v)), self.desc.zero()) for r in self.rows]

    def transpose(self):
        return Matrix(self.desc, list(zip(*self.rows)))

    def derive(self):
        return Matrix(self.desc, [[a.derive() for a in r] for r in self.rows])

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.n)), self.desc.zero())

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def det(self) -> FieldElement:
        n = self.n
        if self.shape != (n, n):
            raise SizeMismatch("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        det = self.desc.one()
        for c in range(n):
            piv = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if piv is None:
                return self.desc.zero()
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                if not m[i][c].is_zero():
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> "Matrix":
        n = self.n
        if self.shape != (n, n):
            raise SizeMismatch("inverse of a non-square matrix")
        zero, one = self.desc.zero(), self.desc.one()
        aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = row_reduce(aug, n)
        if piv != list(range(n)):
            raise SingularGauge("matrix is not invertible")
        return Matrix(self.desc, [r[n:] for r in red])

    def retag(self, desc):
        return Matrix(desc, [[x.retag(desc) for x in r] for r in self.rows])

    def block(self, rows, cols):
        return Matrix(self.desc, [[self.rows[i][j] for j in cols] for i in rows])

    def to_exprs(self):
        return [[x.to_expr() for x in r] for r in self.rows]

    def __repr__(self):
        return "Matrix(" + repr(self.to_exprs()) + ")"


def gauge(P: Matrix, A: Matrix) -> Matrix:
    """P[A] = P^-1 (A P - P')."""
    if P.shape != A.shape:
        raise SizeMismatch("gauge matrix and system differ in size")
    if P.det().is_zero():
        raise SingularGauge("gauge matrix has zero determinant")
    return P.inverse() @ (A @ P - P.derive())


def J_matrix(n2: int) -> ConstMatrix:
    if n2 % 2:
        raise OddDimension("symplectic matrices need even size")
    n = n2 // 2
    rows = [[0] * n2 for _ in range(n2)]
    for i in range(n):
        rows[i][n + i] = 1
        rows[n + i][i] = -1
    return ConstMatrix(rows)


def is_hamiltonian(A: Matrix) -> bool:
    if A.n % 2:
        raise OddDimension("Hamiltonian test needs even size")
    J = J_matrix(A.n).to_field(A.desc)
    return (A.transpose() @ J + J @ A).is_zero()


def is_symplectic(P: Matrix) -> bool:
    if P.n % 2:
        raise OddDimension("symplectic test needs even size")
    J = J_matrix(P.n).to_field(P.desc)
    return P.transpose() @ J @ P == J


def is_hamiltonian_const(M: ConstMatrix) -> bool:
    J = J_matrix(M.n)
    return (M.transpose() @ J + J @ M).is_zero()


# ---------------------------------------------------------------------------


def associated_lie_algebra(A: Matrix):
    """A = sum a_k M_k with a_k independent over Q(i); returns (decomposition, algebra)."""
    n, m = A.shape
    entries = [(i, j, A[i, j]) for i in range(n) for j in range(m) if not A[i, j].is_zero()]
    if not entries:
        return [], ConstLieAlgebra([], n)
    vecs = coefficient_vectors([e for _, _, e in entries])
    chosen = []
    for k, v in enumerate(vecs):
        if rank([vecs[c] for c in chosen] + [v]) > len(chosen):
            chosen.append(k)
    cols = [vecs[c] for c in chosen]
    rows = [[c[r] for c in cols] for r in range(len(vecs[0]))]
    mats = [[[ZERO] * m for _ in range(n)] for _ in chosen]
    for (i, j, _), v in zip(entries, vecs):
        x = solve(rows, v, ZERO, ONE)
        for k, c in enumerate(x):
            mats[k][i][j] = c
    decomposition = [(entries[c][2], ConstMatrix(M)) for c, M in zip(chosen, mats)]
    algebra = ConstLieAlgebra.closure([M for _, M in decomposition], n)
    return decomposition, algebra


def is_maximally_reduced(A: Matrix) -> bool:
    """m = r test: decomposition length equals the minimal generator count of Lie(A)."""
    dec, alg = associated_lie_algebra(A)
    return len(dec) == alg.generators_count


def _form_value(u, v, form: Matrix):
    return sum((u[i] * form[i, j] * v[j] for i in range(len(u)) for j in range(len(v))
                if not form[i, j].is_zero() and not u[i].is_zero() and not v[j].is_zero()),
               form.desc.zero())


def symplectic_gram_schmidt(vectors, form=None):
    """Symplectic basis e_1..e_2n from a basis, so that the Gram matrix of the form is J.

    The partner of the first vector is looked for at position n+1 first,
    then in order.  ``form`` defaults to J.
    """
    vectors = [list(v) for v in vectors]
    n2 = len(vectors)
    if n2 % 2:
        raise OddDimension("need an even number of vectors")
    desc = vectors[0][0].desc
    if form is None:
        form = J_matrix(n2)
    if isinstance(form, ConstMatrix):
        form = form.to_field(desc)
    if not (form.transpose() + form).is_zero():
        raise DegenerateForm("form is not skew-symmetric")
    if form.det().is_zero():
        raise DegenerateForm("form is degenerate")
    if Matrix.from_columns(desc, vectors).det().is_zero():
        raise DependentInput("vectors are linearly dependent")
    firsts, seconds = _sgs(vectors, form)
    return firsts + seconds


def _sgs(vs, form):
    if not vs:
        return [], []
    n = len(vs) // 2
    e = vs[0]
    order = [n] + [k for k in range(1, len(vs)) if k != n]
    partner = None
    for k in order:
        w = _form_value(e, vs[k], form)
        if not w.is_zero():
            partner = k
            break
    if partner is None:
        raise DegenerateForm("no partner for a basis vector")
    inv = w.inverse()
    f = [x * inv for x in vs[partner]]
    rest = []
    for k, u in enumerate(vs):
        if k in (0, partner):
            continue
        a = _form_value(u, f, form)
        b = _form_value(u, e, form)
        rest.append([ui - a * ei + b * fi for ui, ei, fi in zip(u, e, f)])
    fs, ss = _sgs(rest, form)
    return [e] + fs, [f] + ss
