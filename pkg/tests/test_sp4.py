import pytest

from reducedform.errors import NonUnimodular, ShapeMismatch, SideConditionFails, UnknownTarget
from reducedform.field import GaussianRational, make_field
from reducedform.kovacic2 import classify_and_reduce
from reducedform.linsys import Matrix, associated_lie_algebra, bracket, is_symplectic
from reducedform.nve import normalize_variational
from reducedform.sp4 import (
    ABELIAN,
    ADDITIVE_GN,
    M1,
    M2,
    M3,
    MA,
    MM,
    MULTIPLICATIVE_GN,
    NON_ABELIAN,
    TRIVIAL,
    AbelianTarget,
    ReducedShape,
    abelianity,
    abelianity_additive,
    abelianity_multiplicative,
    abelianity_trivial,
    check_bracket_tables,
    check_products,
    lift_reduction,
    normalize_table,
    shape_of,
    simplify_reduced,
    subalgebra_report,
)

from test_nve import HILL, hill_A, hill_column
from theorem_fixtures import FIXTURES, shapes

G = make_field("t")
t = G.t
z = G.zero()


def fm(desc, *pairs):
    out = Matrix.zeros(desc, 4)
    for f, M in pairs:
        out = out + M.to_field(desc).scale(f)
    return out


def test_lift_reduction():
    assert lift_reduction(Matrix.identity(G, 2)) == Matrix.identity(G, 4)
    p = Matrix(G, [[t, 1], [t ** 2 - 1, t]])
    assert is_symplectic(lift_reduction(p))
    with pytest.raises(NonUnimodular):
        lift_reduction(Matrix(G, [[2, 0], [0, 1]]))


def test_hill_table_form():
    f, fp, i = HILL.t, HILL.sqrtD, HILL("i")
    ns = normalize_variational(hill_A(HILL), hill_column(HILL))
    cls = classify_and_reduce(ns.N)
    shape, P_N, notes = normalize_table(ns.A_N, cls)
    assert shape.case == TRIVIAL and not notes
    Gx = f ** 2 * (-2 * f ** 6 - 4 + f ** 2) / (4 * f ** 6 - f ** 2 + 2)
    assert shape.a12 == 4 * Gx
    assert shape.a14 == -i / fp ** 2
    assert shape.a13.is_zero()
    zero, one = HILL.zero(), HILL.one()
    # determinant-one lift, so the corner is +1/f'
    assert P_N == Matrix(HILL, [[one, zero, zero, zero], [zero, fp, zero, zero], [zero, zero, one, zero],
                                [zero, 8 * i * (f ** 8 - f ** 2) / fp, zero, 1 / fp]])


def test_additive_shape_and_side_condition():
    sh = shape_of(fm(G, (1 / t, MA)), ADDITIVE_GN)
    assert sh.a24 == 1 / t
    with pytest.raises(SideConditionFails) as e:
        shape_of(fm(G, (t, MA)), ADDITIVE_GN)
    assert e.value.regauge[0, 1] == t ** 2 / 2


def test_multiplicative_side_condition():
    assert shape_of(fm(G, (1 / (2 * t), MM)), MULTIPLICATIVE_GN).case == MULTIPLICATIVE_GN
    H = make_field("t", "t")
    with pytest.raises(SideConditionFails) as e:
        shape_of(fm(H, (1 / (2 * H.t), MM)), MULTIPLICATIVE_GN)
    assert e.value.regauge[0, 0] * e.value.regauge[1, 1] == H.one()


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        shape_of(fm(G, (t, MA)), TRIVIAL)


def test_trivial_condition_1():
    v = abelianity_trivial(ReducedShape(TRIVIAL, 2 * t, z, 3 * t ** 2))
    c = v.certificate
    assert v.outcome == ABELIAN and c.condition == "condition 1"
    assert (c.y1 - t ** 2).is_constant() and (c.y2 - t ** 3).is_constant()
    assert c.reduced == fm(G, (-t ** 4, M3))


def test_trivial_condition_2():
    v = abelianity_trivial(ReducedShape(TRIVIAL, 1 / t, z, 2 / t))
    c = v.certificate
    assert c.condition == "condition 2"
    assert (c.target.alpha1, c.target.alpha2) == (1, 2)
    assert c.y1.is_zero()
    assert c.target.describe() == "span(M1 + 2*M2, M3)"


def test_trivial_non_abelian():
    v = abelianity_trivial(ReducedShape(TRIVIAL, 1 / t, z, 1 / (t - 1)))
    assert v.outcome == NON_ABELIAN and v.replay()


def test_additive_conditions():
    v = abelianity_additive(ReducedShape(ADDITIVE_GN, 2 * t, z, z, a24=1 / t))
    c = v.certificate
    assert c.condition == "condition a" and c.y1 == t ** 2
    assert associated_lie_algebra(c.reduced)[1].is_abelian()
    assert c.reduced[0, 3] == -t  # M2 coefficient a14 - a24 y1
    v = abelianity_additive(ReducedShape(ADDITIVE_GN, 1 / t, z, z, a24=1 / t))
    assert v.certificate.condition == "condition b" and v.certificate.target.alpha1 == 1
    assert v.certificate.y1.is_zero()
    v = abelianity_additive(ReducedShape(ADDITIVE_GN, 1 / t, z, z, a24=t))
    assert v.outcome == NON_ABELIAN


def test_multiplicative_conditions():
    v = abelianity_multiplicative(ReducedShape(MULTIPLICATIVE_GN, G.one(), z, z, a22=1 / t))
    assert v.certificate.y1 == t / 2 and v.certificate.y2.is_zero()
    v = abelianity_multiplicative(ReducedShape(MULTIPLICATIVE_GN, G.one(), z, G.one(), a22=G.one()))
    assert (v.certificate.y1, v.certificate.y2) == (G.one(), G(-1))


def test_constant_witness_remark():
    f, g = t ** 2 + 1 / t, t
    a1, a2 = 2, -3
    B = fm(G, (f * a1, M1), (f * a2, M2), (f, MM), (g, M3))
    v = abelianity(shape_of(B, MULTIPLICATIVE_GN))
    assert v.is_abelian
    assert (v.certificate.y1, v.certificate.y2) == (G(a1), G(-a2))


def test_subalgebra_reports():
    labels = lambda tg: [f.label for f in subalgebra_report(tg)]
    assert labels(AbelianTarget("multiplicative")) == ["0", "full", "span(Mm + a3*M3)"]
    nil = AbelianTarget("nilpotent", GaussianRational(1), GaussianRational(2))
    assert labels(nil) == ["0", "full", "span(a1*M1 + a2*M2)", "span(M3)"]
    assert len(subalgebra_report(AbelianTarget("additive_plane"))) == 6
    fam = subalgebra_report(AbelianTarget("additive_plane"))[2]
    gens = fam.instantiate(a2=1, a3=5)
    assert all(bracket(x, y).is_zero() for x in gens for y in gens)
    with pytest.raises(UnknownTarget):
        subalgebra_report("span(M1)")


def test_simplify_worked_example():
    X = make_field("x")
    x = X.t
    M = fm(X, ((1 + x ** 2) / x, M1), ((x ** 3 - 4 * x ** 2 + 1) / (x - 4), M3))
    Q, out = simplify_reduced(M)
    assert Q == Matrix.identity(X, 4) + fm(X, (x ** 2 / 2, M1), (x ** 3 / 3, M3))
    assert out == fm(X, (1 / x, M1), (1 / (x - 4), M3))


def test_simplify_simple_poles_only():
    B = fm(G, (1 / t, M1), (1 / (t - 1), M3))
    Q, out = simplify_reduced(B)
    assert Q == Matrix.identity(G, 4) and out == B


def test_simplify_polynomial():
    Q, out = simplify_reduced(fm(G, (t ** 2 + 1, M3), (t, M2)))
    assert out.is_zero()


def test_bracket_tables():
    assert all(ok for *_, ok in check_bracket_tables())
    assert check_products()
    assert bracket(M1, M2) == M3.scale(2)


# criterion 7: every synthetic fixture replays

@pytest.mark.parametrize("label,shape,abelian", list(shapes()), ids=[f[0] for f in FIXTURES])
def test_theorem_fixture_replays(label, shape, abelian):
    v = abelianity(shape)
    assert v.is_abelian == abelian
    if abelian:
        c = v.certificate
        checks = c.replay()
        assert all(checks.values()), checks
        assert c.target.contains(c.reduced)
        dec, _ = associated_lie_algebra(c.reduced)
        assert all(bracket(M, N).is_zero() for _, M in dec for _, N in dec)
    else:
        assert v.obstructions and all(o.replay() for o in v.obstructions)


def test_fixture_counts():
    for case in (TRIVIAL, ADDITIVE_GN, MULTIPLICATIVE_GN):
        ab = [f for f in FIXTURES if f[1] == case and f[3]]
        non = [f for f in FIXTURES if f[1] == case and not f[3]]
        assert len(ab) >= 5 and len(non) >= 3
