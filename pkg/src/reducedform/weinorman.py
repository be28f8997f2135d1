"""Closed-form fundamental matrices for abelian systems.

Solutions are written with opaque primitive symbols whose derivatives are
stored, e.g. W with W' = a (an integral) or E with E' = a E (an exponential).
A formal expression is a Laurent polynomial in those symbols with field
coefficients.  Nothing here decides whether a primitive lies in the field;
that is the job of the membership tests upstream.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InconsistentPrimitives, NonAbelianInput, ShapeMismatch
from .field import FieldDescriptor, FieldElement, GaussianRational
from .linsys import ConstMatrix, J_matrix, Matrix, associated_lie_algebra, bracket


class FormalExpr:
    """sum of c * prod(symbol^e) with c a field element and integer e (possibly negative)."""

    __slots__ = ("desc", "terms")

    def __init__(self, desc: FieldDescriptor, terms=None):
        self.desc = desc
        clean = {}
        for mono, c in (terms or {}).items():
            if not c.is_zero():
                clean[mono] = c
        self.terms = clean

    @classmethod
    def of(cls, desc, x):
        if isinstance(x, FormalExpr):
            return x
        if not isinstance(x, FieldElement):
            x = desc(x) if isinstance(x, str) else desc.const(GaussianRational.of(x))
        return cls(desc, {(): x})

    @classmethod
    def symbol(cls, desc, name, power=1):
        return cls(desc, {((name, power),): desc.one()})

    def is_zero(self):
        return not self.terms

    def symbols(self):
        return {s for mono in self.terms for s, _ in mono}

    def __add__(self, o):
        o = FormalExpr.of(self.desc, o)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return FormalExpr(self.desc, out)

    __radd__ = __add__

    def __neg__(self):
        return FormalExpr(self.desc, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-FormalExpr.of(self.desc, o))

    def __rsub__(self, o):
        return FormalExpr.of(self.desc, o) - self

    def __mul__(self, o):
        o = FormalExpr.of(self.desc, o)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return FormalExpr(self.desc, out)

    __rmul__ = __mul__

    def __eq__(self, o):
        if not isinstance(o, FormalExpr):
            o = FormalExpr.of(self.desc, o)
        return (self - o).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms))

    def derive(self, prims: dict) -> "FormalExpr":
        out = FormalExpr(self.desc)
        for mono, c in self.terms.items():
            out = out + FormalExpr(self.desc, {mono: c.derive()})
            for k, (s, e) in enumerate(mono):
                if s not in prims:
                    raise InconsistentPrimitives(f"no derivative stored for {s}")
                rest = mono[:k] + ((s, e - 1),) + mono[k + 1:]
                rest = tuple(p for p in rest if p[1] != 0)
                out = out + FormalExpr(self.desc, {rest: c.scale(GaussianRational.of(e))}) * prims[s].derivative
        return out

    def __repr__(self):
        return f"FormalExpr({self.to_str()})"

    def to_str(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            syms = "*".join(s if e == 1 else f"{s}^{e}" for s, e in mono)
            if not syms:
                parts.append(c.to_expr())
            elif c.is_constant() and c.constant_value() == 1:
                parts.append(syms)
            else:
                parts.append(f"({c.to_expr()})*{syms}")
        return " + ".join(parts)


def _mono_mul(m1, m2):
    d = dict(m1)
    for s, e in m2:
        d[s] = d.get(s, 0) + e
    return tuple(sorted((s, e) for s, e in d.items() if e != 0))


@dataclass
class FormalPrimitive:
    name: str
    derivative: FormalExpr | None
    kind: str  # "integral", "exponential" or "affine"


class FundamentalMatrixExpr:
    def __init__(self, desc, rows, primitives=None):
        self.desc = desc
        self.rows = [[FormalExpr.of(desc, x) for x in r] for r in rows]
        self.primitives = dict(primitives or {})

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __matmul__(self, o):
        if isinstance(o, FundamentalMatrixExpr):
            rows2 = o.rows
            prims = {**self.primitives, **o.primitives}
        else:
            rows2 = [[FormalExpr.of(self.desc, x) for x in r] for r in _rows_of(o)]
            prims = self.primitives
        n, m, p = len(self.rows), len(rows2), len(rows2[0])
        out = []
        for i in range(n):
            row = []
            for j in range(p):
                acc = FormalExpr(self.desc)
                for k in range(m):
                    a, b = self.rows[i][k], rows2[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return FundamentalMatrixExpr(self.desc, out, prims)

    def left(self, A) -> "FundamentalMatrixExpr":
        """A @ self for a field or constant matrix A."""
        rows = [[FormalExpr.of(self.desc, x) for x in r] for r in _rows_of(A)]
        return FundamentalMatrixExpr(self.desc, rows, self.primitives) @ self

    def transpose(self):
        return FundamentalMatrixExpr(self.desc, [list(c) for c in zip(*self.rows)], self.primitives)

    def derive(self):
        return FundamentalMatrixExpr(self.desc, [[x.derive(self.primitives) for x in r] for r in self.rows],
                                     self.primitives)

    def __eq__(self, o):
        other = o.rows if isinstance(o, FundamentalMatrixExpr) else _rows_of(o)
        return all(x == y for r, s in zip(self.rows, other) for x, y in zip(r, s))

    def __sub__(self, o):
        return FundamentalMatrixExpr(self.desc, [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, o.rows)],
                                     self.primitives)

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def to_strs(self):
        return [[x.to_str() for x in r] for r in self.rows]

    def __repr__(self):
        return f"FundamentalMatrixExpr({self.to_strs()})"


def _rows_of(A):
    if isinstance(A, (Matrix, ConstMatrix)):
        return [list(r) for r in A.rows]
    return A


# ---------------------------------------------------------------------------


def _exp_nilpotent(desc, sym: str, N: ConstMatrix, n: int):
    """exp(W N) as a formal matrix, W a primitive symbol."""
    rows = [[FormalExpr.of(desc, 1 if i == j else 0) for j in range(n)] for i in range(n)]
    power = ConstMatrix.identity(n)
    fact = 1
    W = FormalExpr.symbol(desc, sym)
    Wk = FormalExpr.of(desc, 1)
    for k in range(1, n + 1):
        power = power @ N
        if power.is_zero():
            break
        fact *= k
        Wk = Wk * W
        for i in range(n):
            for j in range(n):
                c = power[i, j]
                if not c.is_zero():
                    rows[i][j] = rows[i][j] + Wk * desc.const(c * GaussianRational.of(Fraction(1, fact)))
    return rows


def _split_diagonal(M: ConstMatrix):
    n = M.n
    S = ConstMatrix([[M[i, j] if i == j else 0 for j in range(n)] for i in range(n)])
    N = M - S
    if N.is_nilpotent() and bracket(S, N).is_zero():
        return S, N
    raise ShapeMismatch("only matrices with commuting diagonal and nilpotent parts are supported")


def solve_abelian(R: Matrix) -> FundamentalMatrixExpr:
    """Fundamental matrix of Y' = R Y as an ordered product of exponentials."""
    desc = R.desc
    n = R.n
    dec, alg = associated_lie_algebra(R)
    if not alg.is_abelian():
        raise NonAbelianInput("associated Lie algebra is not abelian")
    U = FundamentalMatrixExpr(desc, [[1 if i == j else 0 for j in range(n)] for i in range(n)])
    prims = {}
    for k, (f, M) in enumerate(dec, start=1):
        S, N = _split_diagonal(M)
        if not N.is_zero():
            name = f"W{k}"
            prims[name] = FormalPrimitive(name, FormalExpr.of(desc, f), "integral")
            U = U @ FundamentalMatrixExpr(desc, _exp_nilpotent(desc, name, N, n))
        if not S.is_zero():
            U = U @ _exp_diagonal(desc, f, S, k, prims)
    U.primitives = prims
    return U


def _exp_diagonal(desc, f, S: ConstMatrix, k: int, prims: dict):
    """exp((int f) S), one exponential symbol per class of rationally related eigenvalues."""
    n = S.n
    vals = [S[i, i] for i in range(n)]
    classes = []  # [base value, lcm of ratio denominators]
    for v in vals:
        if v.is_zero():
            continue
        for cl in classes:
            r = v / cl[0]
            if r.is_real():
                q = int(r.re.denominator)
                cl[1] = cl[1] * q // gcd(cl[1], q)
                break
        else:
            classes.append([v, 1])
    exps = [None] * n
    for c, (base, q) in enumerate(classes, start=1):
        name = f"E{k}" if len(classes) == 1 else f"E{k}_{c}"
        rate = f.scale(base * GaussianRational.of(Fraction(1, q)))
        prims[name] = FormalPrimitive(name, FormalExpr(desc, {((name, 1),): rate}), "exponential")
        for i, v in enumerate(vals):
            if exps[i] is None and not v.is_zero() and (v / base).is_real():
                exps[i] = (name, int((v / base).re * q))
    rows = [[FormalExpr.of(desc, 0) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = FormalExpr.of(desc, 1) if exps[i] is None else FormalExpr.symbol(desc, *exps[i])
    return FundamentalMatrixExpr(desc, rows)


def verify_fundamental(U: FundamentalMatrixExpr, A: Matrix) -> bool:
    """derive(U) == A U after substituting the stored primitive derivatives."""
    for p in U.primitives.values():
        if p.derivative is None:
            raise InconsistentPrimitives(f"primitive {p.name} has no derivative")
        if p.derivative.desc != A.desc:
            raise InconsistentPrimitives(f"primitive {p.name} lives over another field")
    return (U.derive() - U.left(A)).is_zero()


# ---------------------------------------------------------------------------
# templates for the three normal-block cases


def fundamental_shape(case: str, desc: FieldDescriptor | None = None, shape=None) -> FundamentalMatrixExpr:
    """Symplectic fundamental-matrix template for a reduced table shape.

    With a ReducedShape the primitives carry the derivatives that make the
    template solve that shape's system; otherwise they are left symbolic.
    """
    from .sp4 import ADDITIVE_GN, MULTIPLICATIVE_GN, TRIVIAL

    if shape is not None:
        desc = shape.desc
        case = shape.case
    if desc is None:
        from .field import make_field
        desc = make_field("t")
    s = lambda name, e=1: FormalExpr.symbol(desc, name, e)
    W1, W2, W3 = s("W1"), s("W2"), s("W3")
    one, zero = FormalExpr.of(desc, 1), FormalExpr.of(desc, 0)
    d = {}
    if case == TRIVIAL:
        rows = [[one, W1, W3, W2], [zero, one, W2, zero], [zero, zero, one, zero], [zero, zero, -W1, one]]
        if shape is not None:
            d = {"W1": shape.a12, "W2": shape.a14, "W3": W2 * shape.a12 - W1 * shape.a14 + shape.a13}
    elif case == ADDITIVE_GN:
        L = s("L")
        rows = [[one, W1, W3, W2 + L * W1], [zero, one, W2, L], [zero, zero, one, zero], [zero, zero, -W1, one]]
        if shape is not None:
            d = {"W1": shape.a12, "W2": -W1 * shape.a24 + shape.a14,
                 "W3": W2 * shape.a12 - W1 * shape.a14 + shape.a13, "L": shape.a24}
    elif case == MULTIPLICATIVE_GN:
        E, Einv = s("E"), s("E", -1)
        rows = [[one, E * W1, W3, W2 * Einv], [zero, E, W2, zero], [zero, zero, one, zero],
                [zero, zero, -W1, Einv]]
        if shape is not None:
            d = {"W1": -W1 * shape.a22 + shape.a12, "W2": W2 * shape.a22 + shape.a14,
                 "W3": W2 * shape.a12 - W1 * shape.a14 + shape.a13, "E": E * shape.a22}
    else:
        raise ShapeMismatch(f"no template for case {case!r}")
    prims = {}
    names = {"W1", "W2", "W3"} | ({"L"} if case == ADDITIVE_GN else set()) | ({"E"} if case == MULTIPLICATIVE_GN else set())
    for name in sorted(names):
        der = d.get(name)
        der = None if der is None else FormalExpr.of(desc, der)
        kind = "exponential" if name == "E" else ("integral" if der is None or not der.symbols() else "affine")
        prims[name] = FormalPrimitive(name, der, kind)
    return FundamentalMatrixExpr(desc, rows, prims)


def is_formally_symplectic(U: FundamentalMatrixExpr) -> bool:
    J = J_matrix(U.n)
    return U.transpose() @ FundamentalMatrixExpr(U.desc, [list(r) for r in J.rows]) @ U == J.rows


def block_determinant(U: FundamentalMatrixExpr, rows=(1, 3), cols=(1, 3)) -> FormalExpr:
    (a, b), (c, d) = [[U[i, j] for j in cols] for i in rows]
    return a * d - b * c
