"""Linear differential operators over the coefficient field.

An operator is ``sum c_i * d^i`` where ``d`` is the field's derivation
(``w * d/dt``).  Besides the ring operations this module holds the
solvers that decide membership questions in the field: rational solutions,
Risch equations, limited integration, and a bounded search for
exponential (hyperexponential) solutions of order-2 operators.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Sequence

from .errors import BoundOverflow, DegenerateInput, MixedFields, UnsupportedRadical, ZeroDivisor
from .field import (
    FieldDescriptor,
    FieldElement,
    GaussianRational,
    ONE,
    POLY_ONE,
    POLY_ZERO,
    Poly,
    RatFunc,
    RAT_ZERO,
    ZERO,
    coefficient_vectors,
    factor_irreducible,
    format_poly,
    poly_gcd,
    poly_gcdex,
)
from .linalg import const_nullspace, row_reduce, solve

DEFAULT_DEGREE_CAP = 64


class DiffOp:
    """sum(c[i] * d^i) with coefficients in one field."""

    __slots__ = ("desc", "c")

    def __init__(self, desc: FieldDescriptor, coeffs: Sequence):
        cs = [desc(x) if not isinstance(x, FieldElement) else x for x in coeffs]
        for x in cs:
            if x.desc != desc:
                raise MixedFields("operator coefficient from another field")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.desc = desc
        self.c = tuple(cs)

    @classmethod
    def d(cls, desc: FieldDescriptor) -> "DiffOp":
        return cls(desc, [desc.zero(), desc.one()])

    @classmethod
    def first_order(cls, a: FieldElement) -> "DiffOp":
        """d - a."""
        return cls(a.desc, [-a, a.desc.one()])

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> FieldElement:
        return self.c[-1]

    def coeff(self, i: int) -> FieldElement:
        return self.c[i] if 0 <= i < len(self.c) else self.desc.zero()

    def _same(self, o: "DiffOp"):
        if o.desc != self.desc:
            raise MixedFields("operators over different fields")

    def __eq__(self, o):
        if isinstance(o, DiffOp):
            return self.desc == o.desc and self.c == o.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __add__(self, o: "DiffOp") -> "DiffOp":
        self._same(o)
        n = max(len(self.c), len(o.c))
        return DiffOp(self.desc, [self.coeff(i) + o.coeff(i) for i in range(n)])

    def __neg__(self):
        return DiffOp(self.desc, [-x for x in self.c])

    def __sub__(self, o):
        return self + (-o)

    def left_scale(self, a: FieldElement) -> "DiffOp":
        return DiffOp(self.desc, [a * x for x in self.c])

    def shift(self, k: int) -> "DiffOp":
        """self * d^k."""
        return DiffOp(self.desc, [self.desc.zero()] * k + list(self.c))

    def d_times(self) -> "DiffOp":
        """d o self  (uses d a = a d + a')."""
        if not self.c:
            return self
        out = [x.derive() for x in self.c] + [self.desc.zero()]
        for i, x in enumerate(self.c):
            out[i + 1] = out[i + 1] + x
        return DiffOp(self.desc, out)

    def __mul__(self, o):
        if isinstance(o, FieldElement):
            o = DiffOp(self.desc, [o])
        self._same(o)
        if not self.c or not o.c:
            return DiffOp(self.desc, [])
        acc = [self.desc.zero()] * (self.order + o.order + 1)
        cur = o
        for i, a in enumerate(self.c):
            if i:
                cur = cur.d_times()
            if not a.is_zero():
                for j, x in enumerate(cur.c):
                    if not x.is_zero():
                        acc[j] = acc[j] + a * x
        return DiffOp(self.desc, acc)

    def apply(self, y: FieldElement) -> FieldElement:
        acc = self.desc.zero()
        cur = y
        for i, a in enumerate(self.c):
            if i:
                cur = cur.derive()
            if not a.is_zero():
                acc = acc + a * cur
        return acc

    __call__ = apply

    def monic(self) -> "DiffOp":
        if not self.c:
            return self
        inv = self.lc().inverse()
        return DiffOp(self.desc, [x * inv for x in self.c])

    def conjugate(self) -> "DiffOp":
        """Coefficientwise sqrt -> -sqrt (a differential automorphism only for plain derivations)."""
        return DiffOp(self.desc, [x.conjugate() for x in self.c])

    def retag(self, desc: FieldDescriptor) -> "DiffOp":
        return DiffOp(desc, [x.retag(desc) for x in self.c])

    def is_base(self) -> bool:
        return all(x.is_base() for x in self.c)

    def to_plain(self) -> "DiffOp":
        """Rewrite over d/dt: (w d/dt)^(k+1) = w d/dt o (w d/dt)^k."""
        if self.desc.is_plain:
            return self
        pd = self.desc.plain()
        w = self.desc.weight.retag(pd)
        power = DiffOp(pd, [pd.one()])
        acc = DiffOp(pd, [])
        for i, a in enumerate(self.c):
            if i:
                power = power.d_times().left_scale(w)
            acc = acc + power.left_scale(a.retag(pd))
        return acc

    def to_exprs(self):
        return [x.to_expr() for x in self.c]

    def __repr__(self):
        return "DiffOp[" + ", ".join(self.to_exprs()) + "]"


def op_mul(l1: DiffOp, l2: DiffOp) -> DiffOp:
    return l1 * l2


def right_divide(L: DiffOp, R: DiffOp):
    """(Q, rem) with L = Q*R + rem and order(rem) < order(R)."""
    if R.is_zero():
        raise ZeroDivisor("right division by the zero operator")
    L._same(R)
    desc = L.desc
    q = [desc.zero()] * max(L.order - R.order + 1, 0)
    rem = L
    inv = R.lc().inverse()
    while not rem.is_zero() and rem.order >= R.order:
        k = rem.order - R.order
        f = rem.lc() * inv
        q[k] = q[k] + f
        rem = rem - DiffOp(desc, [desc.zero()] * k + [f]) * R
    return DiffOp(desc, q), rem


def _remainder_vectors(L: DiffOp, m: int):
    """Coordinates of d^j mod L (right remainders) for j = 0..m."""
    n = L.order
    desc = L.desc
    inv = L.lc().inverse()
    out = []
    cur = DiffOp(desc, [desc.one()])
    for j in range(m + 1):
        if j:
            cur = cur.d_times()
            if cur.order == n:
                f = cur.lc() * inv
                cur = cur - L.left_scale(f)
        out.append([cur.coeff(k) for k in range(n)])
    return out


def lclm(*ops: DiffOp) -> DiffOp:
    """Monic least common left multiple."""
    ops = [L for L in ops]
    if not ops or any(L.is_zero() for L in ops):
        raise ZeroDivisor("lclm of the zero operator")
    if len(ops) > 2:
        acc = ops[0]
        for L in ops[1:]:
            acc = lclm(acc, L)
        return acc
    if len(ops) == 1:
        return ops[0].monic()
    l1, l2 = ops
    l1._same(l2)
    desc = l1.desc
    if l1.order == 0:
        return l2.monic()
    if l2.order == 0:
        return l1.monic()
    top = l1.order + l2.order
    r1 = _remainder_vectors(l1, top)
    r2 = _remainder_vectors(l2, top)
    for m in range(max(l1.order, l2.order), top + 1):
        rows = []
        rhs = []
        for k in range(l1.order):
            rows.append([r1[j][k] for j in range(m)])
            rhs.append(-r1[m][k])
        for k in range(l2.order):
            rows.append([r2[j][k] for j in range(m)])
            rhs.append(-r2[m][k])
        x = solve(rows, rhs, desc.zero(), desc.one())
        if x is not None:
            return DiffOp(desc, list(x) + [desc.one()])
    raise AssertionError("lclm search exhausted")  # unreachable: order sum always works


# ---------------------------------------------------------------------------
# polynomial form of base operators


def _as_base_polys(L: DiffOp):
    """Polynomial coefficients of a plain operator with base coefficients, content removed."""
    if not L.desc.is_plain:
        raise ValueError("operator must use the plain derivation")
    if not L.is_base():
        raise UnsupportedRadical("operator has radical coefficients")
    den = POLY_ONE
    for x in L.c:
        d = x.base.den
        if not d.is_one():
            den = den * d.exact_div(poly_gcd(den, d))
    qs = [x.base.num * den.exact_div(x.base.den) for x in L.c]
    g = POLY_ZERO
    for q in qs:
        g = poly_gcd(g, q)
        if g.is_one():
            break
    if not g.is_one() and not g.is_zero():
        qs = [q.exact_div(g) for q in qs]
    return qs


def _ord(q: Poly, p: Poly):
    v = 0
    while True:
        a, r = q.divmod(p)
        if not r.is_zero():
            return v, q
        q = a
        v += 1


def _falling(k: int) -> list:
    """Coefficients (low->high) of r(r-1)...(r-k+1)."""
    poly = Poly.const(1)
    for j in range(k):
        poly = poly * Poly([-j, 1])
    return poly


def _mod_inverse(a: Poly, p: Poly) -> Poly:
    s, _, g = poly_gcdex(a % p, p)
    if not g.is_one():
        raise ZeroDivisionError("not invertible modulo p")
    return s % p


@dataclass
class SingularPoint:
    """Local data at one singular point.

    ``poly`` is the monic irreducible polynomial whose roots are the point
    (None for infinity).  ``exponents`` lists the Q(i) roots of the
    indicial polynomial with multiplicity; ``complete`` is False when some
    indicial roots are not in Q(i) or depend on the conjugate root chosen.
    """

    poly: Poly | None
    exponents: list
    regular: bool
    indicial: Poly | None
    complete: bool = True

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    def label(self, var: str = "t") -> str:
        if self.poly is None:
            return "infinity"
        return f"roots of {format_poly(self.poly, var)}"

    def exponent_list(self):
        out = []
        for e, m in self.exponents:
            out.extend([e] * m)
        return sorted(out, key=lambda g: (g.re, g.im))

    def integer_exponents(self):
        return sorted({int(e.re) for e, _ in self.exponents if e.is_integer()})


@dataclass
class ExponentReport:
    points: list
    var: str = "t"

    def at(self, poly: Poly | None) -> SingularPoint | None:
        for sp in self.points:
            if (sp.poly is None and poly is None) or (sp.poly is not None and poly is not None and sp.poly == poly.monic()):
                return sp
        return None

    @property
    def infinity(self) -> SingularPoint:
        return self.at(None)

    def as_dict(self):
        out = []
        for sp in self.points:
            out.append({
                "point": sp.label(self.var),
                "exponents": [str(e) for e in sp.exponent_list()],
                "regular": sp.regular,
                "complete": sp.complete,
            })
        return out


def _indicial_finite(qs, p: Poly):
    """Indicial data at the roots of irreducible monic p."""
    n = len(qs) - 1
    vs = {}
    us = {}
    for i, q in enumerate(qs):
        if q.is_zero():
            continue
        vs[i], us[i] = _ord(q, p)
    m = min(vs[i] - i for i in vs)
    idx = [i for i in vs if vs[i] - i == m]
    regular = n in idx
    dp = p.derivative() % p
    # coefficient of r^k as a residue mod p
    top = max(idx)
    res = [POLY_ZERO] * (top + 1)
    for i in idx:
        e = (us[i] * (dp ** vs[i])) % p
        f = _falling(i)
        for k, x in enumerate(f.c):
            res[k] = (res[k] + e.scale(x)) % p
    inv = _mod_inverse(res[top], p)
    res = [(x * inv) % p for x in res]
    if all(x.is_const() for x in res):
        ind = Poly([x.coeff(0) for x in res])
        roots, complete = _gaussian_roots_with_flag(ind)
        if p.degree == 1:
            complete = complete
        return SingularPoint(p, roots, regular, ind, complete)
    # the indicial polynomial depends on the chosen root; keep common Q(i) roots
    g = POLY_ZERO
    for j in range(p.degree):
        g = poly_gcd(g, Poly([x.coeff(j) for x in res]))
    roots, _ = _gaussian_roots_with_flag(g) if not g.is_const() else ([], True)
    return SingularPoint(p, roots, regular, None, False)


def _gaussian_roots_with_flag(ind: Poly):
    roots = []
    total = 0
    for f, m in factor_irreducible(ind):
        if f.degree == 1:
            roots.append((-f.c[0] / f.c[1], m))
            total += m
    roots.sort(key=lambda em: (em[0].re, em[0].im))
    return roots, total == ind.degree


def _indicial_infinity(qs):
    n = len(qs) - 1
    degs = {i: q.degree - i for i, q in enumerate(qs) if not q.is_zero()}
    b = max(degs.values())
    idx = [i for i in degs if degs[i] == b]
    regular = n in idx
    ind_mu = POLY_ZERO
    for i in idx:
        ind_mu = ind_mu + _falling(i).scale(qs[i].lc())
    # exponent r at infinity means y ~ t^(-r): substitute mu = -r
    ind = Poly([x * (-1) ** k for k, x in enumerate(ind_mu.c)]).monic()
    roots, complete = _gaussian_roots_with_flag(ind)
    return SingularPoint(None, roots, regular, ind, complete)


def local_exponents(L: DiffOp, points: Sequence[Poly] | None = None) -> ExponentReport:
    """Exponents at finite singular points and at infinity.

    Twisted operators are first rewritten over d/dt.  Extra ``points``
    (e.g. ordinary points) may be requested explicitly.
    """
    P = L.to_plain()
    qs = _as_base_polys(P)
    if len(qs) <= 1:
        return ExponentReport([], L.desc.var)
    out = []
    for p, _ in factor_irreducible(qs[-1]):
        out.append(_indicial_finite(qs, p))
    for p in points or ():
        p = p.monic()
        if all(sp.poly != p for sp in out):
            out.append(_indicial_finite(qs, p))
    out.append(_indicial_infinity(qs))
    return ExponentReport(out, L.desc.var)


# ---------------------------------------------------------------------------
# rational solutions


@dataclass
class RationalSolutionSpace:
    basis: list
    operator: DiffOp | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def nonconstant(self):
        return [y for y in self.basis if not y.is_constant()]


def _check_cap(bound, cap):
    if cap is not None and bound > cap:
        raise BoundOverflow(bound, cap)


def _poly_solutions_basis(qs, den: Poly, bound: int, desc: FieldDescriptor):
    """Basis of numerators N (deg <= bound) with sum q_i (N/den)^(i) = 0."""
    if bound < 0:
        return []
    cols = []
    for j in range(bound + 1):
        y = RatFunc(Poly.monomial(j), den)
        acc = RAT_ZERO
        cur = y
        for i, q in enumerate(qs):
            if i:
                cur = cur.derivative()
            if not q.is_zero():
                acc = acc + RatFunc.of(q) * cur
        cols.append(desc.embed(acc))
    vecs = coefficient_vectors(cols)
    null = const_nullspace(vecs)
    out = []
    for v in null:
        num = Poly([v[j] for j in range(bound + 1)])
        out.append(RatFunc(num, den))
    return out


def base_rational_solutions(L: DiffOp, degree_cap=DEFAULT_DEGREE_CAP):
    """Solutions in Q(i)(t) of a plain operator with base coefficients (as RatFuncs)."""
    qs = _as_base_polys(L)
    n = len(qs) - 1
    if n <= 0:
        return []
    den = POLY_ONE
    for p, _ in factor_irreducible(qs[-1]):
        sp = _indicial_finite(qs, p)
        ints = sp.integer_exponents()
        if ints and ints[0] < 0:
            _check_cap(-ints[0] * p.degree, degree_cap)
            den = den * p ** (-ints[0])
    inf = _indicial_infinity(qs)
    mus = [-e for e in inf.integer_exponents()]
    if not mus:
        return []
    bound = max(mus) + den.degree
    _check_cap(bound, degree_cap)
    return _poly_solutions_basis(qs, den, bound, L.desc.base_field())


def _radical_companion(L: DiffOp) -> DiffOp:
    """Operator M on B such that L(B*sqrt(s)) = sqrt(s) * M(B); base plain field."""
    desc = L.desc
    base = desc.base_field()
    s = base.embed(desc.half_log_derivative())
    shifted = DiffOp(base, [s, base.one()])
    power = DiffOp(base, [base.one()])
    acc = DiffOp(base, [])
    for i, a in enumerate(L.c):
        if i:
            power = shifted * power
        acc = acc + power.left_scale(base.embed(a.base))
    return acc


def _base_candidates(M: DiffOp, cap):
    """Candidates A + B sqrt(s) from an operator with base coefficients."""
    desc = M.desc
    base = desc.base_field()
    out = []
    B = M.retag(base)
    for r in base_rational_solutions(B, cap):
        out.append(FieldElement(desc, r, RAT_ZERO))
    if desc.has_extension:
        for r in base_rational_solutions(_radical_companion(M), cap):
            out.append(FieldElement(desc, RAT_ZERO, r))
    return out


def rational_solutions(L: DiffOp, degree_cap=DEFAULT_DEGREE_CAP) -> RationalSolutionSpace:
    """Basis over Q(i) of the solutions of L(y) = 0 lying in the field."""
    if L.is_zero():
        raise ZeroDivisor("rational solutions of the zero operator")
    desc = L.desc
    P = L.to_plain()
    pdesc = P.desc
    if P.order == 0:
        return RationalSolutionSpace([], L)
    if P.is_base():
        cands = _base_candidates(P, degree_cap)
        return RationalSolutionSpace([y.retag(desc) for y in cands], L)
    M = lclm(P, P.conjugate())
    if not M.is_base():
        raise AssertionError("lclm with conjugate should have base coefficients")
    cands = _base_candidates(M, degree_cap)
    if not cands:
        return RationalSolutionSpace([], L)
    images = [P.apply(y) for y in cands]
    null = const_nullspace(coefficient_vectors(images))
    basis = []
    for v in null:
        y = pdesc.zero()
        for c, cand in zip(v, cands):
            if not c.is_zero():
                y = y + cand.scale(c)
        basis.append(y.retag(desc))
    return RationalSolutionSpace(basis, L)


# ---------------------------------------------------------------------------
# Risch equations and limited integration


def _plain(x: FieldElement) -> FieldElement:
    """x / w viewed over the plain derivation."""
    desc = x.desc
    if desc.is_plain:
        return x
    return (x / desc.weight).retag(desc.plain())


def risch_operator(f: FieldElement, g: FieldElement) -> DiffOp:
    """Plain operator whose field solutions contain those of d y = f y + g."""
    ft, gt = _plain(f), _plain(g)
    base = DiffOp.first_order(ft)
    if gt.is_zero():
        return base
    left = DiffOp.first_order(gt.derive() / gt)
    return left * base


def risch_solve(f: FieldElement, g: FieldElement, degree_cap=DEFAULT_DEGREE_CAP):
    """Some y in the field with derive(y) = f*y + g, or None."""
    if f.desc != g.desc:
        raise MixedFields("Risch equation over two fields")
    desc = f.desc
    ft, gt = _plain(f), _plain(g)
    L = risch_operator(f, g)
    sols = rational_solutions(L, degree_cap).basis
    if gt.is_zero():
        nz = [y for y in sols if not y.is_zero()]
        return nz[0].retag(desc) if nz else None
    for y in sols:
        r = (y.derive() - ft * y) / gt
        if r.is_zero():
            continue
        if not r.is_constant():
            raise AssertionError("Risch reduction produced a non-constant ratio")
        return (y.scale(r.constant_value().inverse())).retag(desc)
    return None


@dataclass
class IntegrableSpace:
    """Q(i)-combinations c of the inputs f_j with sum c_j f_j = derive(h), h in the field."""

    inputs: list
    combos: list  # list of (coefficient list, antiderivative)
    operator: DiffOp | None
    solutions: RationalSolutionSpace | None

    @property
    def dimension(self) -> int:
        return len(self.combos)


def integrable_combinations(fs: Sequence[FieldElement], degree_cap=DEFAULT_DEGREE_CAP) -> IntegrableSpace:
    """All integrable Q(i)-combinations of fs, via the rational solutions of lclm(d - f'/f)*d."""
    if not fs:
        raise DegenerateInput("no functions given")
    desc = fs[0].desc
    ft = [_plain(f) for f in fs]
    pdesc = ft[0].desc
    nz = [f for f in ft if not f.is_zero()]
    L = None
    sols = None
    ys = []
    if nz:
        firsts = [DiffOp.first_order(f.derive() / f) for f in nz]
        L = lclm(*firsts) * DiffOp.d(pdesc)
        sols = rational_solutions(L, degree_cap)
        ys = [y for y in sols.basis if not y.is_constant()]
    m = len(ft)
    # relations sum c_j f_j + sum d_k y_k' = 0, so h = -sum d_k y_k
    cols = list(ft) + [y.derive() for y in ys]
    vecs = coefficient_vectors(cols)
    null = const_nullspace(vecs)
    rows = [v[:m] + v[m:] for v in null]
    red, piv = row_reduce(rows, m + len(ys)) if rows else ([], [])
    combos = []
    for r, pc in zip(red, piv):
        if pc >= m:
            continue  # relation among the y' alone
        c = r[:m]
        h = pdesc.zero()
        for d, y in zip(r[m:], ys):
            if not d.is_zero():
                h = h - y.scale(d)
        combos.append((c, h.retag(desc)))
    return IntegrableSpace(list(fs), combos, L, sols)


def antiderivative(a: FieldElement, degree_cap=DEFAULT_DEGREE_CAP):
    """h in the field with derive(h) = a, or None."""
    if a.is_zero():
        return a.desc.zero()
    sp = integrable_combinations([a], degree_cap)
    if not sp.combos:
        return None
    c, h = sp.combos[0]
    return h.scale(c[0].inverse())


@dataclass
class LimitedIntegral:
    beta: GaussianRational
    h: FieldElement
    beta_free: bool = False

    def __iter__(self):
        yield self.beta
        yield self.h


def limited_integration(f: FieldElement, g: FieldElement, degree_cap=DEFAULT_DEGREE_CAP):
    """(beta, h) with derive(h) = f + beta*g, or None.

    When g itself is integrable beta is not determined; 0 is returned and
    ``beta_free`` is set.
    """
    if f.is_zero() and g.is_zero():
        raise DegenerateInput("limited integration of two zero functions")
    desc = f.desc
    if f.is_zero():
        return LimitedIntegral(ZERO, desc.zero(), antiderivative(g, degree_cap) is not None)
    sp = integrable_combinations([f, g], degree_cap)
    with_f = [(c, h) for c, h in sp.combos if not c[0].is_zero()]
    free = any(c[0].is_zero() and not c[1].is_zero() for c, _ in sp.combos)
    if not with_f:
        return None
    c, h = with_f[0]
    k = c[0].inverse()
    beta = c[1] * k
    h = h.scale(k)
    if free and not beta.is_zero():
        for c2, h2 in sp.combos:
            if c2[0].is_zero() and not c2[1].is_zero():
                s = beta / c2[1]
                h = h - h2.scale(s)
                beta = ZERO
                break
    return LimitedIntegral(beta, h, free)


# ---------------------------------------------------------------------------
# exponential solutions of order-2 operators over Q(i)(t)


@dataclass
class ExpSolution:
    """y with y'/y = u, u = P + sum e_p p'/p + R'/R (plain derivation)."""

    u: FieldElement
    poly_part: Poly
    residues: dict
    R: Poly

    @property
    def algebraic(self) -> bool:
        return self.poly_part.is_zero() and all(e.is_real() for e in self.residues.values())


@dataclass
class ExpSearch:
    solutions: list
    complete: bool
    notes: list = dc_field(default_factory=list)


def _laurent_infinity(r: RatFunc, nterms: int):
    """r = t^nu * sum_k A_k t^-k; returns (nu, [A_0..A_{nterms-1}]) or (None, []) for zero."""
    if r.is_zero():
        return None, []
    num, den = r.num, r.den
    nu = num.degree - den.degree
    # series in x = 1/t of num(1/x) x^dn / (den(1/x) x^dd)
    nrev = list(reversed(num.c))
    drev = list(reversed(den.c))
    inv0 = drev[0].inverse()
    out = []
    for k in range(nterms):
        acc = nrev[k] if k < len(nrev) else ZERO
        for j in range(1, min(k, len(drev) - 1) + 1):
            acc = acc - drev[j] * out[k - j]
        out.append(acc * inv0)
    return nu, out


def _riccati_poly_parts(a: RatFunc, b: RatFunc, notes: list):
    """Candidate (P, u_{-1}) for u' + u^2 + a u + b = 0 with P of degree >= 0.

    Returns (candidates, complete).
    """
    NEG = -10 ** 9
    nu_a, A = _laurent_infinity(a, 0)
    nu_b, _ = _laurent_infinity(b, 0)
    nu_a = NEG if nu_a is None else nu_a
    nu_b = NEG if nu_b is None else nu_b
    degs = set()
    if nu_b != NEG and nu_b >= 0 and nu_b % 2 == 0:
        degs.add(nu_b // 2)
    if nu_a != NEG and nu_a >= 0:
        degs.add(nu_a)
    if nu_a != NEG and nu_b != NEG and nu_b - nu_a >= 0:
        degs.add(nu_b - nu_a)
    complete = True
    cands = []
    for d in sorted(degs):
        N = max(2 * d, nu_a + d, nu_b)
        # coefficients needed down to t^(nu - d - 2)
        _, A = _laurent_infinity(a, d + 3)
        _, B = _laurent_infinity(b, d + 3)

        def coef_a(deg):
            k = nu_a - deg
            return A[k] if nu_a != NEG and 0 <= k < len(A) else ZERO

        def coef_b(deg):
            k = nu_b - deg
            return B[k] if nu_b != NEG and 0 <= k < len(B) else ZERO

        def E_at(u: dict, M: int):
            acc = coef_b(M)
            acc = acc + u.get(M + 1, ZERO) * (M + 1)
            for i, ui in u.items():
                j = M - i
                if j in u:
                    acc = acc + ui * u[j]
                acc = acc + ui * coef_a(M - i)
            return acc

        # leading coefficient: c^2 [2d=N] + A0 c [nu_a+d=N] + B0 [nu_b=N] = 0
        q2 = ONE if 2 * d == N else ZERO
        q1 = coef_a(nu_a) if nu_a + d == N else ZERO
        q0 = coef_b(nu_b) if nu_b == N else ZERO
        lead = []
        if not q2.is_zero():
            disc = q1 * q1 - q0 * 4
            sq = disc.sqrt()
            if sq is None:
                continue
            lead = {(-q1 + sq) / 2, (-q1 - sq) / 2}
        elif not q1.is_zero():
            lead = {-q0 / q1}
        else:
            continue
        for c in lead:
            if c.is_zero():
                continue
            u = {d: c}
            ok = True
            for k in range(1, d + 2):
                M = N - k
                z0 = E_at(u, M)
                u[d - k] = ONE
                z1 = E_at(u, M)
                lam = z1 - z0
                if lam.is_zero():
                    del u[d - k]
                    if z0.is_zero():
                        complete = False
                        notes.append(f"degenerate Riccati branch at degree {d - k}")
                    ok = False
                    break
                u[d - k] = -z0 / lam
            if not ok:
                continue
            P = Poly([u.get(j, ZERO) for j in range(d + 1)])
            cands.append((P, u[-1]))
    return cands, complete


def _poly_solutions(M: DiffOp, bound: int):
    qs = _as_base_polys(M)
    return [r.num for r in _poly_solutions_basis(qs, POLY_ONE, bound, M.desc)]


def exponential_solutions(L: DiffOp) -> ExpSearch:
    """Hyperexponential solutions over Q(i)(t) of a plain order-2 operator with base coefficients."""
    notes = []
    P = L.to_plain()
    if not P.is_base() or P.desc.has_extension and not all(x.rad.is_zero() for x in P.c):
        return ExpSearch([], False, ["radical coefficients are not supported"])
    if P.order != 2:
        raise ValueError("exponential search is implemented for order 2")
    base = P.desc.base_field()
    Pb = P.retag(base)
    qs = _as_base_polys(Pb)
    complete = True
    local = []
    for p, _ in factor_irreducible(qs[-1]):
        sp = _indicial_finite(qs, p)
        if not sp.regular:
            complete = False
            notes.append(f"irregular singularity at roots of {format_poly(p, base.var)}")
        if not sp.complete and p.degree > 1:
            complete = False
            notes.append(f"indicial roots outside Q(i) at roots of {format_poly(p, base.var)}")
        es = [e for e, _ in sp.exponents]
        if not es:
            continue
        local.append((p, es))
    a = RatFunc(qs[1], qs[2])
    b = RatFunc(qs[0], qs[2])
    pcands, ok = _riccati_poly_parts(a, b, notes)
    complete = complete and ok
    inf = _indicial_infinity(qs)
    cands = [(P_, mu) for P_, mu in pcands]
    for e, _ in inf.exponents:
        cands.append((POLY_ZERO, -e))
    found = []
    seen = set()
    choices = [[(p, e) for e in es] for p, es in local]
    for P_, mu in cands:
        for combo in product(*choices) if choices else [()]:
            s = mu
            for p, e in combo:
                s = s - e * p.degree
            if not s.is_integer() or s.re < 0:
                continue
            deg_r = int(s.re)
            u0 = RatFunc.of(P_)
            for p, e in combo:
                u0 = u0 + RatFunc(p.derivative().scale(e), p)
            shift = base.embed(u0)
            sh = DiffOp(base, [shift, base.one()])
            power = DiffOp(base, [base.one()])
            acc = DiffOp(base, [])
            for i, q in enumerate(qs):
                if i:
                    power = sh * power
                acc = acc + power.left_scale(base.poly(q))
            for R in _poly_solutions(acc, deg_r):
                u = u0 + RatFunc(R.derivative(), R)
                if u in seen:
                    continue
                seen.add(u)
                found.append(ExpSolution(base.embed(u), P_, {p: e for p, e in combo}, R.monic()))
    return ExpSearch(found, complete, notes)
