import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reducedform.diffop import (
    DiffOp,
    antiderivative,
    integrable_combinations,
    lclm,
    limited_integration,
    local_exponents,
    op_mul,
    rational_solutions,
    right_divide,
    risch_solve,
)
from reducedform.errors import BoundOverflow, DegenerateInput, ZeroDivisor
from reducedform.expr import parse_poly
from reducedform.field import GaussianRational, coefficient_vectors, make_field
from reducedform.linalg import const_nullspace

from conftest import base_elements

G = make_field("t")
t = G.t
d = DiffOp.d(G)


def op(*coeffs, desc=G):
    return DiffOp(desc, [desc(c) if isinstance(c, str) else c for c in coeffs])


def test_products():
    assert op_mul(d, d) == op(0, 0, 1)
    assert d * op(t) == op(1, t)
    L = op(-1 / t, 1) * op(1 / t, 1)
    for y in (t, t ** 2, 1 / t):
        assert L.apply(y) == op(-1 / t, 1).apply(op(1 / t, 1).apply(y))


def test_right_divide():
    q, r = right_divide(op(0, 0, 1), d)
    assert q == d and r.is_zero()
    q, r = right_divide(op(0, 0, 1), op(-1 / t, 1))
    assert r.is_zero()
    q, r = right_divide(d, op(0, 0, 1))
    assert q.is_zero() and r == d
    with pytest.raises(ZeroDivisor):
        right_divide(d, DiffOp(G, []))


def test_lclm_examples():
    L = op(t, 2 * t ** 2, 1 + t)
    assert lclm(L, L) == L.monic()
    M = lclm(op(-1 / t, 1), d)
    assert M == op(0, 0, 1)
    M = lclm(op(-1, 1), op(-2, 1))
    for R in (op(-1, 1), op(-2, 1)):
        assert right_divide(M, R)[1].is_zero()
    assert M.order == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(base_elements(), min_size=2, max_size=3), st.lists(base_elements(), min_size=2, max_size=2))
def test_lclm_right_divisible(c1, c2):
    L1, L2 = DiffOp(G, c1 + [G.one()]), DiffOp(G, c2 + [G.one()])
    M = lclm(L1, L2)
    assert right_divide(M, L1)[1].is_zero()
    assert right_divide(M, L2)[1].is_zero()
    assert M.order <= L1.order + L2.order


@settings(max_examples=40, deadline=None)
@given(st.lists(base_elements(), min_size=1, max_size=3), st.lists(base_elements(), min_size=1, max_size=3),
       st.lists(base_elements(), min_size=1, max_size=2))
def test_mul_associative_and_division(a, b, c):
    A, B, C = DiffOp(G, a), DiffOp(G, b), DiffOp(G, c)
    assert (A * B) * C == A * (B * C)
    if not B.is_zero():
        q, r = right_divide(A, B)
        assert q * B + r == A
        assert r.is_zero() or r.order < B.order


def _exps(report, poly_text):
    return [str(e) for e in report.at(parse_poly(poly_text) if poly_text else None).exponent_list()]


def test_local_exponents_simple():
    rep = local_exponents(op(-1, t))
    assert _exps(rep, "t") == ["1"]
    rep = local_exponents(op(0, 0, 1), points=[parse_poly("t - 3")])
    assert _exps(rep, "t - 3") == ["0", "1"]


HILL = make_field("t", "4*t^6 - t^2 + 2")
HILL_L = op(0, HILL("3*t^2*(48*t^8 - 24*t^4 + 96*t^2 - 1)/(4*t^6 - t^2 + 2)^2"),
            HILL("(44*t^6 - 3*t^2 - 2)/((4*t^6 - t^2 + 2)*t)"), 1, desc=HILL)


def test_hill_operator_exponents():
    rep = local_exponents(HILL_L)
    assert _exps(rep, "t") == ["0", "1", "3"]
    assert _exps(rep, None) == ["0", "0", "8"]
    # Fuchs relation: the residue of the d^2 coefficient at a root of D is 2,
    # so the three exponents there sum to 3 - 2 = 1
    assert _exps(rep, "t^6 - 1/4*t^2 + 1/2") == ["-1/2", "0", "3/2"]


def test_hill_operator_is_the_limited_integration_operator():
    D = HILL("4*t^6 - t^2 + 2")
    D32 = D * HILL.sqrtD
    F1 = HILL("4*t^2*(-2*t^6 + t^2 - 4)") / D32
    F2 = HILL("i") / D32
    sp = integrable_combinations([F1.scale(4), F2])
    assert sp.operator == HILL_L
    assert sp.dimension == 0
    sols = rational_solutions(HILL_L)
    assert sols.dimension == 1 and sols.basis[0].is_constant()


def test_hill_h0_solution():
    F = make_field("t", "4*t^6 - t^2")
    D32 = F("4*t^6 - t^2") * F.sqrtD
    F1 = F("4*t^2*(-2*t^6 + t^2)") / D32
    F2 = F("i") / D32
    sp = integrable_combinations([F1.scale(4), F2])
    sols = rational_solutions(sp.operator)
    assert sols.dimension == 2
    # (8t^4 - 1)/(t^2 sqrt(4t^4 - 1)) with sqrt(4t^6 - t^2) = t sqrt(4t^4 - 1)
    target = F("(8*t^4 - 1)/t") / F.sqrtD
    assert sp.operator.apply(target).is_zero()
    rel = const_nullspace(coefficient_vectors(sols.basis + [target]))
    assert rel and not rel[0][-1].is_zero()


def test_rational_solutions_basics():
    sols = rational_solutions(op(0, 0, 1))
    assert sols.dimension == 2
    assert all(op(0, 0, 1).apply(y).is_zero() for y in sols.basis)
    # t^2 y'' + 3t y' + y: double exponent -1 at 0, solutions 1/t and log(t)/t
    L = op(1, 3 * t, t ** 2)
    sols = rational_solutions(L)
    assert sols.dimension == 1 and (sols.basis[0] * t).is_constant()


def test_degree_cap_overflow():
    with pytest.raises(BoundOverflow):
        rational_solutions(op(-70, t), degree_cap=64)
    assert rational_solutions(op(-70, t), degree_cap=80).dimension == 1


def test_risch_examples():
    y = risch_solve(G.zero(), 3 * t ** 2)
    assert y.derive() == 3 * t ** 2
    assert risch_solve(G.one(), G.one()) == G(-1)
    assert risch_solve(1 / t, G.one()) is None


def test_risch_homogeneous_means_nonzero():
    y = risch_solve(2 / t, G.zero())
    assert y is not None and (y / t ** 2).is_constant()
    assert risch_solve(G.one(), G.zero()) is None


def test_limited_integration_examples():
    beta, h = limited_integration(2 * t, 1 / t)
    assert beta == 0 and h.derive() == 2 * t
    beta, h = limited_integration(1 / t ** 2, 1 / t)
    assert beta == 0 and h.derive() == 1 / t ** 2
    res = limited_integration(1 / t, 2 / t)
    assert res.beta == GaussianRational(-1, 0) / 2 and res.h.is_constant()
    assert limited_integration(1 / t, 1 / (t - 1)) is None
    with pytest.raises(DegenerateInput):
        limited_integration(G.zero(), G.zero())


def test_antiderivative():
    assert antiderivative(1 / t) is None
    assert antiderivative(3 * t ** 2).derive() == 3 * t ** 2
