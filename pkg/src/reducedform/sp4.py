"""Reduction of 4x4 Hamiltonian systems once the normal block is reduced.

The five constant matrices below span everything that can appear after the
2x2 normal block has been put in reduced form.  With E_ij the unit matrix
(1-based):

    M1 = E12 - E43    M2 = E14 + E23    M3 = E13
    Ma = E24          Mm = E22 - E44

M1 M2 = -M2 M1 = M3 and every other product of two of M1, M2, M3, Ma
vanishes, so exp(f M) = Id + f M for those four.

Each abelianity test either builds a unipotent gauge P = Id + y1 M1 + y2 M2
and checks the result by a direct gauge computation, or records the
operators and Risch instances that have no solution in the field.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .diffop import (
    DEFAULT_DEGREE_CAP,
    DiffOp,
    antiderivative,
    integrable_combinations,
    limited_integration,
    local_exponents,
    rational_solutions,
    risch_operator,
    risch_solve,
)
from .errors import (
    NonUnimodular,
    ShapeMismatch,
    SideConditionFails,
    UnknownTarget,
    UnsupportedField,
    UnsupportedRadical,
    UnsupportedTwistedDerivation,
)
from .field import ONE, ZERO, FieldElement, GaussianRational, hermite_split
from .kovacic2 import ADDITIVE, FINITE, MULTIPLICATIVE, NveClassification
from .linsys import (
    ConstMatrix,
    Matrix,
    _in_span,
    associated_lie_algebra,
    bracket,
    gauge,
    is_symplectic,
)

_E = ConstMatrix.unit
M1 = _E(1, 2, 4) - _E(4, 3, 4)
M2 = _E(1, 4, 4) + _E(2, 3, 4)
M3 = _E(1, 3, 4)
MA = _E(2, 4, 4)
MM = _E(2, 2, 4) - _E(4, 4, 4)
BASIS = {"M1": M1, "M2": M2, "M3": M3, "Ma": MA, "Mm": MM}

TRIVIAL = "TrivialGN"
ADDITIVE_GN = "AdditiveGN"
MULTIPLICATIVE_GN = "MultiplicativeGN"

_CASE_OF = {FINITE: TRIVIAL, ADDITIVE: ADDITIVE_GN, MULTIPLICATIVE: MULTIPLICATIVE_GN}


def _fm(desc, coeffs: dict) -> Matrix:
    """sum of f * BASIS[name] as a matrix over desc."""
    out = Matrix.zeros(desc, 4)
    for name, f in coeffs.items():
        if f is None or f.is_zero():
            continue
        out = out + BASIS[name].to_field(desc).scale(f)
    return out


def unipotent(desc, y1: FieldElement, y2: FieldElement) -> Matrix:
    """Id + y1 M1 + y2 M2."""
    return Matrix.identity(desc, 4) + _fm(desc, {"M1": y1, "M2": y2})


# ---------------------------------------------------------------------------
# lifting and normal form


def lift_reduction(p: Matrix) -> Matrix:
    """Embed a unimodular 2x2 gauge on coordinates 2 and 4 of a 4x4 identity."""
    if p.shape != (2, 2):
        raise ShapeMismatch("expected a 2x2 reduction matrix")
    if not p.det() == 1:
        raise NonUnimodular("2x2 reduction matrix must have determinant 1")
    desc = p.desc
    z, o = desc.zero(), desc.one()
    return Matrix(desc, [
        [o, z, z, z],
        [z, p[0, 0], z, p[0, 1]],
        [z, z, o, z],
        [z, p[1, 0], z, p[1, 1]],
    ])


@dataclass
class ReducedShape:
    case: str
    a12: FieldElement
    a13: FieldElement
    a14: FieldElement
    a24: FieldElement | None = None
    a22: FieldElement | None = None
    B: Matrix | None = None

    @property
    def desc(self):
        return self.a12.desc

    def coefficients(self) -> dict:
        c = {"a12": self.a12, "a13": self.a13, "a14": self.a14}
        if self.a24 is not None:
            c["a24"] = self.a24
        if self.a22 is not None:
            c["a22"] = self.a22
        return c

    def reconstruct(self) -> Matrix:
        return _fm(self.desc, {"M1": self.a12, "M2": self.a14, "M3": self.a13,
                               "Ma": self.a24, "Mm": self.a22})


def shape_of(B: Matrix, case: str, check_side=True, degree_cap=DEFAULT_DEGREE_CAP) -> ReducedShape:
    """Read a table shape off B; raises ShapeMismatch if B is not of that shape."""
    if B.shape != (4, 4):
        raise ShapeMismatch("expected a 4x4 matrix")
    sh = ReducedShape(case, B[0, 1], B[0, 2], B[0, 3], B=B)
    if case == ADDITIVE_GN:
        sh.a24 = B[1, 3]
    elif case == MULTIPLICATIVE_GN:
        sh.a22 = B[1, 1]
    elif case != TRIVIAL:
        raise ShapeMismatch(f"unknown table case {case!r}")
    if sh.reconstruct() != B:
        raise ShapeMismatch(f"matrix is not of the {case} shape")
    if check_side:
        _check_side(sh, degree_cap)
    return sh


def _check_side(sh: ReducedShape, degree_cap):
    desc = sh.desc
    if sh.case == ADDITIVE_GN:
        L = antiderivative(sh.a24, degree_cap)
        if L is not None:
            regauge = Matrix(desc, [[desc.one(), L], [desc.zero(), desc.one()]])
            raise SideConditionFails("the Ma coefficient has an antiderivative in the field", regauge)
    elif sh.case == MULTIPLICATIVE_GN:
        E = risch_solve(sh.a22, desc.zero(), degree_cap)
        if E is not None:
            regauge = Matrix(desc, [[E, desc.zero()], [desc.zero(), E.inverse()]])
            raise SideConditionFails("the Mm coefficient is a logarithmic derivative in the field", regauge)


def table_form(A_N: Matrix, cls: NveClassification, degree_cap=DEFAULT_DEGREE_CAP) -> ReducedShape:
    if cls.case not in _CASE_OF:
        raise ShapeMismatch(f"normal block case {cls.case} has no table row")
    P_N = lift_reduction(cls.P)
    return shape_of(gauge(P_N, A_N), _CASE_OF[cls.case], degree_cap=degree_cap)


def normalize_table(A_N: Matrix, cls: NveClassification, degree_cap=DEFAULT_DEGREE_CAP):
    """table_form, falling back to the trivial row when a side condition fails.

    Returns (shape, P_N, notes), P_N being the 4x4 gauge actually used.
    """
    notes = []
    p = cls.P
    case = _CASE_OF.get(cls.case)
    if case is None:
        raise ShapeMismatch(f"normal block case {cls.case} has no table row")
    while True:
        P_N = lift_reduction(p)
        B = gauge(P_N, A_N)
        try:
            return shape_of(B, case, degree_cap=degree_cap), P_N, notes
        except SideConditionFails as exc:
            if case == TRIVIAL or exc.regauge is None:
                raise
            notes.append(f"{case} side condition fails ({exc}); regauged to {TRIVIAL}")
            p = p @ exc.regauge
            case = TRIVIAL


# ---------------------------------------------------------------------------
# maximal abelian targets


@dataclass(frozen=True)
class AbelianTarget:
    """A maximal abelian subalgebra of the ambient algebra.

    family is one of 'nilpotent' span(a1 M1 + a2 M2, M3), 'additive_line'
    span(Ma + a1 M1 + a2 M2, M3), 'additive_plane' span(M2, M3, Ma) and
    'multiplicative' span(Mm + a1 M1 + a2 M2, M3).
    """

    family: str
    alpha1: GaussianRational = ZERO
    alpha2: GaussianRational = ZERO

    @property
    def basis(self):
        a1, a2 = self.alpha1, self.alpha2
        mix = M1.scale(a1) + M2.scale(a2)
        if self.family == "nilpotent":
            gens = [mix, M3]
        elif self.family == "additive_line":
            gens = [MA + mix, M3]
        elif self.family == "additive_plane":
            gens = [M2, M3, MA]
        elif self.family == "multiplicative":
            gens = [MM + mix, M3]
        else:
            raise UnknownTarget(f"unknown target family {self.family!r}")
        return [g for g in gens if not g.is_zero()]

    def describe(self) -> str:
        a1, a2 = self.alpha1, self.alpha2
        lead = {"nilpotent": "", "additive_line": "Ma", "multiplicative": "Mm"}.get(self.family)
        if lead is None:
            return "span(M2, M3, Ma)"
        terms = [lead] if lead else []
        for c, name in ((a1, "M1"), (a2, "M2")):
            if not c.is_zero():
                cs = str(c)
                if any(ch in cs[1:] for ch in "+-"):
                    cs = f"({cs})"
                terms.append(name if c == ONE else f"{cs}*{name}")
        if not terms:
            return "span(M3)"
        return f"span({' + '.join(terms)}, M3)"

    def contains(self, B: Matrix) -> bool:
        dec, _ = associated_lie_algebra(B)
        basis = self.basis
        return all(_in_span(basis, M) for _, M in dec)


@dataclass
class AbelianityCertificate:
    target: AbelianTarget
    B: Matrix
    P: Matrix
    reduced: Matrix
    y1: FieldElement
    y2: FieldElement
    h: FieldElement | None = None
    condition: str = ""
    operator: DiffOp | None = None  # integration operator whose solution gave h

    def replay(self) -> dict:
        _, alg = associated_lie_algebra(self.reduced)
        desc = self.B.desc
        checks = {}
        if self.operator is not None and self.h is not None:
            checks["witness"] = self.operator.apply(self.h.retag(self.operator.desc)).is_zero()
        return checks | {
            "gauge": gauge(self.P, self.B) == self.reduced,
            "unipotent": self.P == unipotent(desc, self.y1, self.y2),
            "symplectic": is_symplectic(self.P),
            "in_target": self.target.contains(self.reduced),
            "abelian": alg.is_abelian(),
        }

    @property
    def ok(self) -> bool:
        return all(self.replay().values())


@dataclass
class Obstruction:
    """One unsolvable instance: an integration operator or a Risch equation."""

    kind: str  # "operator", "risch" or "normal_block"
    statement: str
    operator: DiffOp | None = None
    exponents: object = None
    risch: tuple | None = None  # (f, g) for derive(y) = f y + g
    system: Matrix | None = None  # 2x2 normal block, for the normal_block kind
    cap: int = DEFAULT_DEGREE_CAP

    def replay(self) -> bool:
        if self.kind == "risch":
            f, g = self.risch
            return risch_solve(f, g, self.cap) is None
        if self.kind == "normal_block":
            from .kovacic2 import BOREL, classify_and_reduce
            return classify_and_reduce(self.system, self.cap).case == BOREL
        sols = rational_solutions(self.operator, self.cap)
        return sols.dimension == 1 and all(y.is_constant() for y in sols.basis)


ABELIAN = "abelian"
NON_ABELIAN = "non_abelian"
INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    outcome: str
    certificate: AbelianityCertificate | None = None
    obstructions: list = dc_field(default_factory=list)
    reason: str = ""

    @property
    def is_abelian(self) -> bool:
        return self.outcome == ABELIAN

    def replay(self) -> bool:
        if self.outcome == ABELIAN:
            return self.certificate.ok
        if self.outcome == NON_ABELIAN:
            return bool(self.obstructions) and all(o.replay() for o in self.obstructions)
        return True


def _operator_obstruction(fs, statement, degree_cap):
    sp = integrable_combinations(fs, degree_cap)
    L = sp.operator
    rep = local_exponents(L) if L is not None else None
    return Obstruction("operator", statement, L, rep, cap=degree_cap)


def _certify(target, B, y1, y2, condition, h=None, operator=None) -> Verdict:
    desc = B.desc
    P = unipotent(desc, y1, y2)
    cert = AbelianityCertificate(target, B, P, gauge(P, B), y1, y2, h, condition, operator)
    if not cert.ok:
        raise AssertionError(f"certificate for {condition} does not replay: {cert.replay()}")
    return Verdict(ABELIAN, cert)


def _gr(x) -> GaussianRational:
    return GaussianRational.of(x)


# ---------------------------------------------------------------------------
# the three abelianity tests


def abelianity_trivial(shape: ReducedShape, degree_cap=DEFAULT_DEGREE_CAP) -> Verdict:
    if shape.case != TRIVIAL:
        raise ShapeMismatch("abelianity_trivial needs the trivial table row")
    desc = shape.desc
    B = shape.reconstruct()
    a12, a14 = shape.a12, shape.a14
    zero = desc.zero()
    if a12.is_zero() and a14.is_zero():
        return _certify(AbelianTarget("nilpotent"), B, zero, zero, "condition 1")
    sp = integrable_combinations([a12, a14], degree_cap)
    if sp.dimension >= 2:
        y1 = antiderivative(a12, degree_cap)
        y2 = antiderivative(a14, degree_cap)
        return _certify(AbelianTarget("nilpotent"), B, y1, y2, "condition 1")
    if sp.dimension == 1:
        (c1, c2), h = sp.combos[0]
        lead = -c2 if not c2.is_zero() else c1
        c1, c2, h = c1 / lead, c2 / lead, h.scale(lead.inverse())
        # c1 a12 + c2 a14 = h'; the target direction is alpha1 M1 + alpha2 M2
        alpha2, alpha1 = c1, -c2
        if not alpha1.is_zero() and not alpha2.is_zero():
            k = (alpha1 * alpha2 * 2).inverse()
            y1, y2 = h.scale(alpha1 * k), h.scale(-alpha2 * k)
        elif alpha1.is_zero():
            y1, y2 = h.scale(alpha2.inverse()), zero
        else:
            y1, y2 = zero, h.scale(-alpha1.inverse())
        return _certify(AbelianTarget("nilpotent", alpha1, alpha2), B, y1, y2, "condition 2", h, sp.operator)
    L = sp.operator
    ob = Obstruction("operator", "no Q(i)-combination of the M1 and M2 coefficients is integrable",
                     L, local_exponents(L), cap=degree_cap)
    return Verdict(NON_ABELIAN, obstructions=[ob])


def abelianity_additive(shape: ReducedShape, degree_cap=DEFAULT_DEGREE_CAP) -> Verdict:
    if shape.case != ADDITIVE_GN:
        raise ShapeMismatch("abelianity_additive needs the additive table row")
    desc = shape.desc
    B = shape.reconstruct()
    a12, a14, a24 = shape.a12, shape.a14, shape.a24
    zero = desc.zero()
    # (a): the M1 coefficient integrates
    y1 = antiderivative(a12, degree_cap)
    if y1 is not None:
        return _certify(AbelianTarget("additive_plane"), B, y1, zero, "condition a")
    obs = [_operator_obstruction([a12], "the M1 coefficient has no antiderivative", degree_cap)]
    # (b): y1' = a12 - alpha1 a24, then y2' = a14 - a24 y1 - alpha2 a24
    first = limited_integration(a12, a24, degree_cap)
    if first is None:
        obs.append(_operator_obstruction(
            [a12, a24], "no constant alpha1 makes a12 - alpha1 a24 integrable", degree_cap))
        return Verdict(NON_ABELIAN, obstructions=obs)
    alpha1, y1 = -first.beta, first.h
    rest = a14 - a24 * y1
    if rest.is_zero():
        alpha2, y2 = ZERO, zero
    else:
        second = limited_integration(rest, a24, degree_cap)
        if second is None:
            obs.append(_operator_obstruction(
                [rest, a24], "no constant alpha2 makes a14 - a24 y1 - alpha2 a24 integrable", degree_cap))
            return Verdict(NON_ABELIAN, obstructions=obs)
        alpha2, y2 = -second.beta, second.h
    return _certify(AbelianTarget("additive_line", alpha1, alpha2), B, y1, y2, "condition b")


def abelianity_multiplicative(shape: ReducedShape, degree_cap=DEFAULT_DEGREE_CAP) -> Verdict:
    if shape.case != MULTIPLICATIVE_GN:
        raise ShapeMismatch("abelianity_multiplicative needs the multiplicative table row")
    desc = shape.desc
    B = shape.reconstruct()
    a12, a14, a22 = shape.a12, shape.a14, shape.a22
    zero = desc.zero()
    obs = []
    ys = []
    for f, g, name in ((-a22, a12, "y1' = -a22 y1 + a12"), (a22, a14, "y2' = a22 y2 + a14")):
        if g.is_zero():
            ys.append(zero)
            continue
        y = risch_solve(f, g, degree_cap)
        if y is None:
            ob = Obstruction("risch", f"{name} has no solution in the field", risch_operator(f, g),
                             risch=(f, g), cap=degree_cap)
            obs.append(ob)
        ys.append(y)
    if obs:
        return Verdict(NON_ABELIAN, obstructions=obs)
    return _certify(AbelianTarget("multiplicative"), B, ys[0], ys[1], "Risch pair")


def abelianity(shape: ReducedShape, degree_cap=DEFAULT_DEGREE_CAP) -> Verdict:
    test = {TRIVIAL: abelianity_trivial, ADDITIVE_GN: abelianity_additive,
            MULTIPLICATIVE_GN: abelianity_multiplicative}[shape.case]
    return test(shape, degree_cap)


# ---------------------------------------------------------------------------
# possible Galois algebras inside a target


@dataclass(frozen=True)
class SubalgebraFamily:
    """span of generators; each generator maps a basis name to a number or a parameter name."""

    label: str
    generators: tuple
    parameters: tuple = ()
    condition: str = ""

    def instantiate(self, **values):
        out = []
        for g in self.generators:
            M = ConstMatrix.zeros(4)
            for name, c in g:
                c = values[c] if isinstance(c, str) else c
                M = M + BASIS[name].scale(c)
            out.append(M)
        return out


def _fam(label, gens, params=(), condition=""):
    return SubalgebraFamily(label, tuple(tuple(g) for g in gens), tuple(params), condition)


def subalgebra_report(target: AbelianTarget):
    """Subalgebras of a maximal abelian target that can still be the Galois algebra."""
    if not isinstance(target, AbelianTarget):
        raise UnknownTarget(f"not a target descriptor: {target!r}")
    a1, a2 = target.alpha1, target.alpha2
    mix = [("M1", a1), ("M2", a2)]
    zero = _fam("0", [])
    if target.family == "nilpotent":
        return [zero, _fam("full", [mix, [("M3", 1)]]),
                _fam("span(a1*M1 + a2*M2)", [mix], condition="(a1, a2) != (0, 0)"),
                _fam("span(M3)", [[("M3", 1)]])]
    if target.family == "additive_line":
        return [zero, _fam("full", [[("Ma", 1)] + mix, [("M3", 1)]]),
                _fam("span(Ma + a1*M1 + a2*M2 + a3*M3)", [[("Ma", 1)] + mix + [("M3", "a3")]], ["a3"])]
    if target.family == "additive_plane":
        return [zero, _fam("full", [[("M2", 1)], [("M3", 1)], [("Ma", 1)]]),
                _fam("span(a2*M2 + a3*M3, Ma)", [[("M2", "a2"), ("M3", "a3")], [("Ma", 1)]], ["a2", "a3"]),
                _fam("span(M2, a3*M3 + Ma)", [[("M2", 1)], [("M3", "a3"), ("Ma", 1)]], ["a3"], "a3 != 0"),
                _fam("span(M3, a2*M2 + Ma)", [[("M3", 1)], [("M2", "a2"), ("Ma", 1)]], ["a2"], "a2 != 0"),
                _fam("span(a2*M2 + a3*M3 + Ma)", [[("M2", "a2"), ("M3", "a3"), ("Ma", 1)]], ["a2", "a3"])]
    if target.family == "multiplicative":
        return [zero, _fam("full", [[("Mm", 1)] + mix, [("M3", 1)]]),
                _fam("span(Mm + a3*M3)", [[("Mm", 1)] + mix + [("M3", "a3")]], ["a3"])]
    raise UnknownTarget(f"unknown target family {target.family!r}")


# ---------------------------------------------------------------------------
# removing integrable parts from a reduced form


def _exp_nilpotent(F: Matrix) -> Matrix:
    n = F.n
    out = Matrix.identity(F.desc, n)
    term = Matrix.identity(F.desc, n)
    for k in range(1, n + 1):
        term = (term @ F).scale(F.desc.const(GaussianRational.of(Fraction(1, k))))
        if term.is_zero():
            break
        out = out + term
    return out


def simplify_reduced(B: Matrix):
    """(Q, Q[B]) where Q removes the integrable part of each nilpotent coefficient."""
    desc = B.desc
    dec, alg = associated_lie_algebra(B)
    if not alg.is_abelian():
        raise ShapeMismatch("simplify_reduced needs an abelian associated algebra")
    F = Matrix.zeros(desc, B.n)
    expected = Matrix.zeros(desc, B.n)
    for a, M in dec:
        Mf = M.to_field(desc)
        if not M.is_nilpotent():
            expected = expected + Mf.scale(a)
            continue
        try:
            f, g = hermite_split(a)
        except (UnsupportedRadical, UnsupportedTwistedDerivation) as exc:
            raise UnsupportedField(str(exc)) from exc
        F = F + Mf.scale(f)
        expected = expected + Mf.scale(g)
    Q = _exp_nilpotent(F)
    out = gauge(Q, B)
    if out != expected:
        raise AssertionError("simplification gauge did not remove the integrable parts")
    return Q, out


def bracket_table(names):
    """{(x, y): [x, y]} over the named basis matrices."""
    return {(x, y): bracket(BASIS[x], BASIS[y]) for x in names for y in names}


# Expected brackets [row, column] for the two non-trivial normal block cases,
# as {basis name: coefficient}.
EXPECTED_TABLES = {
    "additive": (("Ma", "M1", "M2", "M3"), {
        ("Ma", "M1"): {"M2": -1}, ("M1", "Ma"): {"M2": 1},
        ("M1", "M2"): {"M3": 2}, ("M2", "M1"): {"M3": -2},
    }),
    "multiplicative": (("Mm", "M1", "M2", "M3"), {
        ("Mm", "M1"): {"M1": -1}, ("Mm", "M2"): {"M2": 1},
        ("M1", "Mm"): {"M1": 1}, ("M2", "Mm"): {"M2": -1},
        ("M1", "M2"): {"M3": 2}, ("M2", "M1"): {"M3": -2},
    }),
}


def check_bracket_tables():
    """[(table, row, column, ok)] comparing computed brackets with EXPECTED_TABLES."""
    out = []
    for label, (names, nonzero) in EXPECTED_TABLES.items():
        table = bracket_table(names)
        for (x, y), got in table.items():
            want = ConstMatrix.zeros(4)
            for name, c in nonzero.get((x, y), {}).items():
                want = want + BASIS[name].scale(c)
            out.append((label, x, y, got == want))
    return out


def check_products():
    """M1 M2 = -M2 M1 = M3, every other product among M1, M2, M3 is zero."""
    names = ("M1", "M2", "M3")
    ok = BASIS["M1"] @ BASIS["M2"] == BASIS["M3"] and BASIS["M2"] @ BASIS["M1"] == -BASIS["M3"]
    for x in names:
        for y in names:
            if {x, y} != {"M1", "M2"}:
                ok = ok and (BASIS[x] @ BASIS[y]).is_zero()
    return ok
