"""The library's rational-solution and Risch solvers against brute-force ansatz oracles."""
import random

import pytest
import sympy

from reducedform.diffop import DiffOp, rational_solutions, risch_solve
from reducedform.field import make_field

import oracles
from oracles import t

G = make_field("t")
COUNT = 110


def rpoly(rng, deg):
    return sum(rng.randint(-3, 3) * t ** k for k in range(deg + 1))


def rrat(rng):
    """Small rational function of degree <= 1 over degree <= 1."""
    num = rpoly(rng, 1) or sympy.Integer(1)
    den = rpoly(rng, 1)
    if den == 0:
        den = sympy.Integer(1)
    return sympy.cancel(num / den)


def operator_instance(seed):
    """Order <= 2 operators with polynomial coefficients of degree <= 3.

    Three families: plain random, Euler operators with integer exponents
    (rational solutions with poles), and (a d + b) o (y d - y') which
    has the known solution y.
    """
    rng = random.Random(seed)
    kind = seed % 3
    if kind == 0:
        order = rng.choice([1, 2])
        coeffs = [rpoly(rng, rng.randint(0, 3)) for _ in range(order)]
        lead = rpoly(rng, rng.randint(0, 3))
        if lead == 0:
            lead = t
        return coeffs + [lead]
    if kind == 1:
        r1, r2 = rng.randint(-3, 3), rng.randint(-3, 3)
        c = rng.randint(-2, 2)
        s = t - c
        # s^2 d^2 + (1 - r1 - r2) s d + r1 r2, solutions s^r1, s^r2 (and a log when r1 = r2)
        return [sympy.Integer(r1 * r2), (1 - r1 - r2) * s, s ** 2]
    y = rrat(rng)
    num, den = sympy.fraction(sympy.together(y))
    m = [sympy.expand(-(sympy.diff(num, t) * den - num * sympy.diff(den, t))), sympy.expand(num * den)]
    a = rng.randint(0, 1)
    b = rng.randint(-2, 2) if a else rng.choice([-2, -1, 1, 2])
    if a == 0:
        return [b * x for x in m]
    # (d + b) o (m1 d + m0) = m1 d^2 + (m1' + m0 + b m1) d + (m0' + b m0)
    return [sympy.expand(sympy.diff(m[0], t) + b * m[0]),
            sympy.expand(sympy.diff(m[1], t) + m[0] + b * m[1]),
            m[1]]


def library_op(coeffs):
    return DiffOp(G, [G.parse(oracles.to_text(c)) for c in coeffs])


@pytest.mark.parametrize("seed", range(COUNT))
def test_rational_solutions_match_oracle(seed):
    coeffs = operator_instance(seed)
    space = rational_solutions(library_op(coeffs))
    dim, den = oracles.kernel_dimension(coeffs)
    assert space.dimension == dim
    for y in space.basis:
        assert oracles.in_ansatz_kernel(coeffs, oracles.to_sympy(y), den)


def risch_instance(seed):
    """f, g small; every other instance is built around a known solution."""
    rng = random.Random(10_000 + seed)
    f = rrat(rng) if rng.random() < 0.8 else sympy.Integer(0)
    if seed % 2:
        y0 = rrat(rng)
        g = sympy.cancel(sympy.diff(y0, t) - f * y0)
    else:
        g = rrat(rng) if rng.random() < 0.9 else sympy.Integer(0)
    return f, g


@pytest.mark.parametrize("seed", range(COUNT))
def test_risch_solve_matches_oracle(seed):
    f, g = risch_instance(seed)
    y = risch_solve(G.parse(oracles.to_text(f)), G.parse(oracles.to_text(g)))
    if g == 0:
        # the homogeneous case asks for a nonzero solution
        dim, _ = oracles.kernel_dimension([-f, sympy.Integer(1)])
        expected = dim > 0
    else:
        expected = oracles.risch_exists(f, g)
    assert (y is not None) == expected
    if y is not None:
        ys = oracles.to_sympy(y)
        assert sympy.simplify(sympy.diff(ys, t) - f * ys - g) == 0
        if g == 0:
            assert ys != 0
