"""Brute-force ansatz solvers in sympy, independent of the library's solvers."""
import sympy

t = sympy.Symbol("t")
ANSATZ_DEGREE = 8


def to_sympy(x):
    """FieldElement over Q(i)(t) -> sympy expression."""
    return sympy.sympify(x.to_expr().replace("^", "**"), locals={"t": t, "i": sympy.I})


def to_text(e) -> str:
    return str(sympy.together(e)).replace("**", "^").replace("I", "i")


def _denominator(polys):
    """Product of the distinct irreducible factors of the given polynomials, each
    raised to the largest power keeping the total degree within the ansatz."""
    factors = set()
    for p in polys:
        p = sympy.Poly(p, t)
        if p.degree() <= 0:
            continue
        for f, _ in sympy.factor_list(p.as_expr(), t)[1]:
            if sympy.Poly(f, t).degree() > 0:
                factors.add(sympy.Poly(f, t).monic().as_expr())
    den = sympy.Integer(1)
    if not factors:
        return den
    total = sum(sympy.Poly(f, t).degree() for f in factors)
    k = max(ANSATZ_DEGREE // total, 1)
    for f in factors:
        den *= f ** k
    return den


def _unknown_poly(n, name):
    cs = sympy.symbols(f"{name}0:{n + 1}")
    return sum(c * t ** k for k, c in enumerate(cs)), list(cs)


def _equations(expr, unknowns):
    num = sympy.numer(sympy.together(expr))
    num = sympy.expand(num)
    if num == 0:
        return []
    return sympy.Poly(num, t).coeffs()


def _linear_system(eqs, unknowns):
    if not eqs:
        return sympy.zeros(0, len(unknowns)), sympy.zeros(0, 1)
    A, b = sympy.linear_eq_to_matrix(eqs, unknowns)
    return A, b


def apply_op(coeffs, y):
    out = 0
    cur = y
    for k, c in enumerate(coeffs):
        if k:
            cur = sympy.diff(cur, t)
        out += c * cur
    return out


def kernel_dimension(coeffs):
    """Dimension of the rational solutions of sum coeffs[k] d^k inside the ansatz."""
    lc_den = sympy.numer(sympy.together(coeffs[-1]))
    dens = [sympy.denom(sympy.together(c)) for c in coeffs]
    den = _denominator([lc_den] + dens)
    N, cs = _unknown_poly(ANSATZ_DEGREE + sympy.Poly(den, t).degree(), "c")
    eqs = _equations(apply_op(coeffs, N / den), cs)
    A, _ = _linear_system(eqs, cs)
    return len(cs) - A.rank(), den


def in_ansatz_kernel(coeffs, y, den) -> bool:
    """y solves the operator and y*den is a polynomial of bounded degree."""
    if sympy.simplify(apply_op(coeffs, y)) != 0:
        return False
    p = sympy.cancel(y * den)
    if sympy.denom(p).free_symbols:
        return False
    return sympy.Poly(sympy.numer(p), t).degree() <= ANSATZ_DEGREE + sympy.Poly(den, t).degree()


def risch_exists(f, g) -> bool:
    """Is there y = N/den in the ansatz with y' = f y + g?"""
    dens = [sympy.denom(sympy.together(f)), sympy.denom(sympy.together(g))]
    den = _denominator(dens)
    N, cs = _unknown_poly(ANSATZ_DEGREE + sympy.Poly(den, t).degree(), "c")
    y = N / den
    eqs = _equations(sympy.diff(y, t) - f * y - g, cs)
    if not eqs:
        return True
    A, b = _linear_system(eqs, cs)
    if A.rows == 0:
        return True
    return A.rank() == A.row_join(b).rank()
