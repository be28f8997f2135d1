"""Exact arithmetic for Q(i)(t), optionally extended by one square root.

Elements are stored as ``a + b*sqrt(s)`` where ``a`` and ``b`` are rational
functions in one variable over the Gaussian rationals and ``s`` is a
squarefree polynomial.  The derivation is ``w * d/dt`` for a weight ``w``
held by the field descriptor.
"""
from __future__ import annotations

from fractions import Fraction

from functools import lru_cache
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import (
    DivisionByZero,
    MixedFields,
    UnsupportedRadical,
    UnsupportedTwistedDerivation,
    ZeroPolynomial,
)

_Q0 = mpq(0)
_Q1 = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class GaussianRational:
    """A number re + im*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating point values are not exact")
        return GaussianRational(x, 0)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, mpq)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, o):
        o = _gr(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _gr(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        o = _gr(o)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, o):
        o = _gr(o)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational(self.re * o.re, _Q0)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if self.is_zero():
            raise DivisionByZero("inverse of zero constant")
        if not self.im:
            return GaussianRational(1 / self.re, _Q0)
        n = self.re * self.re + self.im * self.im
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, o):
        o = _gr(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = _gr(o)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = ONE
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    def sqrt(self):
        """Square root in Q(i) if one exists, else None."""
        if self.is_zero():
            return ZERO
        if not self.im:
            r = _rational_sqrt(self.re) if self.re > 0 else None
            if r is not None:
                return GaussianRational(r, 0)
            r = _rational_sqrt(-self.re)
            if r is not None:
                return GaussianRational(0, r)
            return None
        # (x + yi)^2 = re + im*i  =>  x^2 = (re + |z|)/2
        n = _rational_sqrt(self.re * self.re + self.im * self.im)
        if n is None:
            return None
        x = _rational_sqrt((self.re + n) / 2)
        if x is None or not x:
            return None
        return GaussianRational(x, self.im / (2 * x))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_constant(self)


def _rational_sqrt(q: mpq):
    if q < 0:
        return None
    import gmpy2
    n, d = q.numerator, q.denominator
    if not gmpy2.is_square(n) or not gmpy2.is_square(d):
        return None
    return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))


def _gr(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, mpq)):
        return GaussianRational(x, 0)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def format_constant(c: GaussianRational) -> str:
    def rat(q):
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    if not c.im:
        return rat(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{rat(c.im)}*i"
    sign = "+" if c.im > 0 else "-"
    mag = -c.im if c.im < 0 else c.im
    im = "i" if mag == 1 else f"{rat(mag)}*i"
    return f"({rat(c.re)}{sign}{im})"


# ---------------------------------------------------------------------------
# dense univariate polynomials


class Poly:
    """Dense polynomial over Q(i), coefficient k multiplies t**k."""

    __slots__ = ("c", "_h")

    def __init__(self, coeffs: Iterable = ()):
        cs = [GaussianRational.of(x) for x in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.c = tuple(cs)
        self._h = None

    @classmethod
    def _raw(cls, cs: list) -> "Poly":
        while cs and cs[-1].is_zero():
            cs.pop()
        p = cls.__new__(cls)
        p.c = tuple(cs)
        p._h = None
        return p

    @classmethod
    def const(cls, x) -> "Poly":
        return cls((x,))

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Poly":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_const(self) -> bool:
        return len(self.c) <= 1

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 1

    def is_real(self) -> bool:
        return all(not x.im for x in self.c)

    def lc(self) -> GaussianRational:
        return self.c[-1] if self.c else ZERO

    def coeff(self, k: int) -> GaussianRational:
        return self.c[k] if 0 <= k < len(self.c) else ZERO

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.c)
        return self._h

    def __add__(self, o: "Poly") -> "Poly":
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for k, x in enumerate(b):
            cs[k] = cs[k] + x
        return Poly._raw(cs)

    def __neg__(self):
        return Poly._raw([-x for x in self.c])

    def __sub__(self, o: "Poly") -> "Poly":
        return self + (-o)

    def scale(self, k) -> "Poly":
        k = GaussianRational.of(k)
        if k.is_zero():
            return POLY_ZERO
        if k == 1:
            return self
        return Poly._raw([x * k for x in self.c])

    def __mul__(self, o: "Poly") -> "Poly":
        a, b = self.c, o.c
        if not a or not b:
            return POLY_ZERO
        if len(a) == 1:
            return o.scale(a[0])
        if len(b) == 1:
            return self.scale(b[0])
        if all(not x.im for x in a) and all(not x.im for x in b):
            ar = [x.re for x in a]
            br = [x.re for x in b]
            out = [_Q0] * (len(a) + len(b) - 1)
            for i, x in enumerate(ar):
                if not x:
                    continue
                for j, y in enumerate(br):
                    out[i + j] += x * y
            return Poly._raw([GaussianRational(x, _Q0) for x in out])
        ar = [x.re for x in a]
        ai = [x.im for x in a]
        br = [x.re for x in b]
        bi = [x.im for x in b]
        n = len(a) + len(b) - 1
        outr = [_Q0] * n
        outi = [_Q0] * n
        for i in range(len(a)):
            xr, xi = ar[i], ai[i]
            for j in range(len(b)):
                yr, yi = br[j], bi[j]
                outr[i + j] += xr * yr - xi * yi
                outi[i + j] += xr * yi + xi * yr
        return Poly._raw([GaussianRational(r, s) for r, s in zip(outr, outi)])

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        r = POLY_ONE
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    def divmod(self, d: "Poly"):
        if d.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.degree < d.degree:
            return POLY_ZERO, self
        inv = d.lc().inverse()
        rem = list(self.c)
        dd = d.degree
        dc = d.c
        q = [ZERO] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            x = rem[k]
            if x.is_zero():
                continue
            f = x * inv
            q[k - dd] = f
            for j in range(dd + 1):
                if not dc[j].is_zero():
                    rem[k - dd + j] = rem[k - dd + j] - f * dc[j]
        return Poly._raw(q), Poly._raw(rem[:dd])

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def __mod__(self, d):
        return self.divmod(d)[1]

    def exact_div(self, d: "Poly") -> "Poly":
        q, r = self.divmod(d)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.lc().inverse())

    def derivative(self) -> "Poly":
        return Poly._raw([x * k for k, x in enumerate(self.c)][1:])

    def __call__(self, x):
        acc = ZERO if isinstance(x, GaussianRational) else None
        if acc is None:
            # Horner with generic ring elements (polys, field elements)
            acc = 0
            for coef in reversed(self.c):
                acc = acc * x + coef
            return acc
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def compose(self, q: "Poly") -> "Poly":
        acc = POLY_ZERO
        for coef in reversed(self.c):
            acc = acc * q + Poly.const(coef)
        return acc

    def to_str(self, var: str = "t") -> str:
        return format_poly(self, var)

    def __repr__(self):
        return f"Poly({format_poly(self, 't')})"


POLY_ZERO = Poly()
POLY_ONE = Poly([1])
T = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q(i); gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
        b = b.monic()
    return a.monic()


def poly_gcdex(a: Poly, b: Poly):
    """Return (s, t, g) with s*a + t*b = g = gcd(a, b) monic."""
    r0, r1 = a, b
    s0, s1 = POLY_ONE, POLY_ZERO
    t0, t1 = POLY_ZERO, POLY_ONE
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return s0, t0, r0
    k = r0.lc().inverse()
    return s0.scale(k), t0.scale(k), r0.scale(k)


def poly_diophantine(a: Poly, b: Poly, c: Poly):
    """Solve s*a + t*b = c with deg s < deg b (gcd(a, b) must divide c)."""
    s, t, g = poly_gcdex(a, b)
    q, r = c.divmod(g)
    if not r.is_zero():
        raise ArithmeticError("gcd does not divide right-hand side")
    s = s * q
    t = t * q
    if not b.is_const():
        qq, s = s.divmod(b)
        t = t + qq * a
    elif not b.is_zero():
        t = t + (s * a).exact_div(b)
        s = POLY_ZERO
    return s, t


def squarefree_decomposition(p: Poly):
    """Yun's algorithm: p = lc * prod(q_k^k); returns (lc, [q_1, q_2, ...])."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree decomposition of zero")
    lc = p.lc()
    f = p.monic()
    out = []
    if f.is_const():
        return lc, out
    d = f.derivative()
    a = poly_gcd(f, d)
    b = f.exact_div(a)
    c = d.exact_div(a)
    dd = c - b.derivative()
    while not b.is_const():
        a = poly_gcd(b, dd)
        out.append(a)
        b = b.exact_div(a)
        c = dd.exact_div(a)
        dd = c - b.derivative()
    while out and out[-1].is_one():
        out.pop()
    return lc, out


def squarefree_part(p: Poly):
    """Write p = s*c^2 with s squarefree; the leading constant stays in s."""
    lc, parts = squarefree_decomposition(p)
    s = Poly.const(lc)
    c = POLY_ONE
    for k, q in enumerate(parts, start=1):
        if k % 2:
            s = s * q
        if k // 2:
            c = c * q ** (k // 2)
    return s, c


@lru_cache(maxsize=4096)
def factor_irreducible(p: Poly):
    """Monic irreducible factors over Q(i) with multiplicities (uses sympy)."""
    import sympy
    from sympy.polys.domains import QQ_I

    if p.is_const():
        return ()
    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(int(c.re.numerator), int(c.re.denominator))
              + sympy.I * sympy.Rational(int(c.im.numerator), int(c.im.denominator))
              for c in reversed(p.c)]
    sp = sympy.Poly(coeffs, x, domain=QQ_I)
    _, facs = sp.factor_list()
    out = []
    for f, m in facs:
        cs = []
        for c in reversed(f.all_coeffs()):
            re, im = sympy.re(c), sympy.im(c)
            cs.append(GaussianRational(mpq(int(re.p), int(re.q)), mpq(int(im.p), int(im.q))))
        out.append((Poly(cs).monic(), int(m)))
    out.sort(key=lambda fm: (fm[0].degree, format_poly(fm[0], "t")))
    return tuple(out)


def gaussian_roots(p: Poly):
    """Roots of p lying in Q(i), as (root, multiplicity) pairs."""
    out = []
    for f, m in factor_irreducible(p):
        if f.degree == 1:
            out.append((-f.c[0] / f.c[1], m))
    return out


def format_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.c[k]
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not c.im:
            neg = c.re < 0
        elif not c.re:
            neg = c.im < 0
        else:
            neg = False
        mag = -c if neg else c
        body = format_constant(mag)
        if mono:
            body = mono if mag == 1 else f"{body}*{mono}"
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += f" {'-' if neg else '+'} {body}"
    return out


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """num/den with gcd 1 and monic den."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num: Poly, den: Poly = POLY_ONE, _canonical=False):
        if not _canonical:
            if den.is_zero():
                raise DivisionByZero("zero denominator")
            if num.is_zero():
                num, den = POLY_ZERO, POLY_ONE
            elif not den.is_const():
                g = poly_gcd(num, den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            if not den.is_one():
                k = den.lc()
                if k != 1:
                    k = k.inverse()
                    num = num.scale(k)
                    den = den.scale(k)
        self.num = num
        self.den = den
        self._h = None

    @classmethod
    def of(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls(x, POLY_ONE, True)
        return cls(Poly.const(x), POLY_ONE, True)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_one()

    def is_const(self):
        return self.den.is_one() and self.num.is_const()

    def __eq__(self, o):
        if isinstance(o, RatFunc):
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def __add__(self, o: "RatFunc") -> "RatFunc":
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            if self.den.is_one():
                return RatFunc(self.num + o.num, POLY_ONE, True)
            return RatFunc(self.num + o.num, self.den)
        if self.den.is_one():
            return RatFunc(self.num * o.den + o.num, o.den, True)
        if o.den.is_one():
            return RatFunc(self.num + o.num * self.den, self.den, True)
        g = poly_gcd(self.den, o.den)
        if g.is_one():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, True)
        b1 = self.den.exact_div(g)
        d1 = o.den.exact_div(g)
        return RatFunc(self.num * d1 + o.num * b1, b1 * o.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, True)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "RatFunc") -> "RatFunc":
        if self.num.is_zero() or o.num.is_zero():
            return RAT_ZERO
        if self.den.is_one() and o.den.is_one():
            return RatFunc(self.num * o.num, POLY_ONE, True)
        # cross-cancel to keep things small
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        a = self.num if g1.is_one() else self.num.exact_div(g1)
        d = o.den if g1.is_one() else o.den.exact_div(g1)
        c = o.num if g2.is_one() else o.num.exact_div(g2)
        b = self.den if g2.is_one() else self.den.exact_div(g2)
        return RatFunc(a * c, b * d, True)

    def scale(self, k) -> "RatFunc":
        k = GaussianRational.of(k)
        if k.is_zero():
            return RAT_ZERO
        return RatFunc(self.num.scale(k), self.den, True)

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, o: "RatFunc") -> "RatFunc":
        return self * o.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, True)

    def derivative(self) -> "RatFunc":
        if self.den.is_one():
            return RatFunc(self.num.derivative(), POLY_ONE, True)
        # (n/d)' = (n'd - nd')/d^2, reduced via the squarefree structure of d
        d = self.den
        dp = d.derivative()
        g = poly_gcd(d, dp)
        dg = d.exact_div(g)
        num = self.num.derivative() * dg - self.num * dp.exact_div(g)
        return RatFunc(num, dg * d)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self, 't')})"


RAT_ZERO = RatFunc(POLY_ZERO, POLY_ONE, True)
RAT_ONE = RatFunc(POLY_ONE, POLY_ONE, True)


def _wrap(s: str) -> str:
    return s if _is_atomic(s) else f"({s})"


def _is_atomic(s: str) -> bool:
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-*/ ":
            return False
    return True


def format_ratfunc(r: RatFunc, var: str = "t") -> str:
    n = format_poly(r.num, var)
    if r.den.is_one():
        return n
    return f"{_wrap(n)}/{_wrap(format_poly(r.den, var))}"


# ---------------------------------------------------------------------------
# field descriptor and elements


class FieldDescriptor:
    """Q(i)(var)[sqrt(extension)] with derivation weight * d/dvar.

    ``radical_scale`` c records the cofactor of a user-supplied radicand
    D = s*c^2, so that the symbol ``sqrtD`` means c*sqrt(s).
    """

    __slots__ = ("var", "extension", "radical_scale", "weight_base", "weight_rad",
                 "_key", "_half_log_der", "_plain")

    def __init__(self, var: str = "t", extension: Poly | None = None,
                 radical_scale: Poly = POLY_ONE,
                 weight_base: RatFunc = RAT_ONE, weight_rad: RatFunc = RAT_ZERO):
        if extension is not None:
            if extension.is_const():
                raise ValueError("extension must be a nonconstant squarefree polynomial")
            s, c = squarefree_part(extension)
            if not c.is_one():
                raise ValueError("extension must be squarefree; use make_field to canonicalize")
        elif not weight_rad.is_zero():
            raise ValueError("radical weight without an extension")
        if weight_base.is_zero() and weight_rad.is_zero():
            raise ValueError("derivation weight must be nonzero")
        self.var = var
        self.extension = extension
        self.radical_scale = radical_scale
        self.weight_base = weight_base
        self.weight_rad = weight_rad
        self._key = (var, extension, radical_scale, weight_base, weight_rad)
        self._half_log_der = None
        self._plain = None

    def __eq__(self, o):
        if self is o:
            return True
        if isinstance(o, FieldDescriptor):
            return self._key == o._key
        return NotImplemented

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        ext = format_poly(self.extension, self.var) if self.extension is not None else None
        return f"FieldDescriptor(var={self.var!r}, extension={ext!r}, weight={self.weight.to_expr()!r})"

    @property
    def has_extension(self) -> bool:
        return self.extension is not None

    @property
    def is_plain(self) -> bool:
        return self.weight_rad.is_zero() and self.weight_base == RAT_ONE

    @property
    def weight(self) -> "FieldElement":
        return FieldElement(self, self.weight_base, self.weight_rad)

    def half_log_derivative(self) -> RatFunc:
        """s'/(2s), so that d/dt sqrt(s) = (s'/(2s)) sqrt(s)."""
        if self._half_log_der is None:
            s = self.extension
            self._half_log_der = RatFunc(s.derivative(), s.scale(2))
        return self._half_log_der

    def plain(self) -> "FieldDescriptor":
        """Same field with the plain derivation d/dt."""
        if self.is_plain:
            return self
        if self._plain is None:
            self._plain = FieldDescriptor(self.var, self.extension, self.radical_scale)
        return self._plain

    def with_weight(self, w: "FieldElement") -> "FieldDescriptor":
        return FieldDescriptor(self.var, self.extension, self.radical_scale, w.base, w.rad)

    def base_field(self) -> "FieldDescriptor":
        """Q(i)(t) with the plain derivation."""
        return FieldDescriptor(self.var)

    # element constructors
    def zero(self) -> "FieldElement":
        return FieldElement(self, RAT_ZERO, RAT_ZERO)

    def one(self) -> "FieldElement":
        return FieldElement(self, RAT_ONE, RAT_ZERO)

    def const(self, c) -> "FieldElement":
        return FieldElement(self, RatFunc.of(GaussianRational.of(c)), RAT_ZERO)

    def poly(self, p: Poly) -> "FieldElement":
        return FieldElement(self, RatFunc.of(p), RAT_ZERO)

    def rat(self, num: Poly, den: Poly = POLY_ONE) -> "FieldElement":
        return FieldElement(self, RatFunc(num, den), RAT_ZERO)

    @property
    def t(self) -> "FieldElement":
        return self.poly(T)

    @property
    def sqrtD(self) -> "FieldElement":
        """The square root of the radicand as the user wrote it."""
        if self.extension is None:
            raise UnsupportedRadical("field has no square-root extension")
        return FieldElement(self, RAT_ZERO, RatFunc.of(self.radical_scale))

    @property
    def sqrt_s(self) -> "FieldElement":
        if self.extension is None:
            raise UnsupportedRadical("field has no square-root extension")
        return FieldElement(self, RAT_ZERO, RAT_ONE)

    def embed(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.desc == self:
                return x
            return x.retag(self)
        if isinstance(x, RatFunc):
            return FieldElement(self, x, RAT_ZERO)
        if isinstance(x, Poly):
            return self.poly(x)
        return self.const(x)

    def parse(self, text: str) -> "FieldElement":
        from .expr import parse_field_element
        return parse_field_element(text, self)

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, str):
            return self.parse(x)
        return self.embed(x)


def make_field(var: str = "t", extension=None, derivation=None) -> FieldDescriptor:
    """Build a descriptor, canonicalizing the radicand to its squarefree part.

    ``extension`` may be a Poly or an expression string in ``var``;
    ``derivation`` may be None (plain d/dt), an expression string (which may
    use ``sqrtD``) or a FieldElement.
    """
    if isinstance(extension, str):
        from .expr import parse_poly
        extension = parse_poly(extension, var)
    scale = POLY_ONE
    if extension is not None:
        s, c = squarefree_part(extension)
        if s.is_const():
            raise ValueError("radicand is a constant times a square; no extension needed")
        extension, scale = s, c
    desc = FieldDescriptor(var, extension, scale)
    if derivation is None:
        return desc
    if isinstance(derivation, str):
        w = desc.parse(derivation)
    else:
        w = derivation
    if w.is_zero():
        raise ValueError("derivation weight must be nonzero")
    return desc.with_weight(w)


class FieldElement:
    """base + rad*sqrt(s) in a descriptor's field."""

    __slots__ = ("desc", "base", "rad", "_h")

    def __init__(self, desc: FieldDescriptor, base: RatFunc, rad: RatFunc = RAT_ZERO):
        if not rad.is_zero() and desc.extension is None:
            raise UnsupportedRadical("radical part in a field without extension")
        self.desc = desc
        self.base = base
        self.rad = rad
        self._h = None

    def _check(self, o) -> "FieldElement":
        if isinstance(o, FieldElement):
            if o.desc is not self.desc and o.desc != self.desc:
                raise MixedFields("operands live in different fields")
            return o
        if isinstance(o, (int, mpq, GaussianRational)):
            return self.desc.const(o)
        if isinstance(o, (Poly, RatFunc)):
            return self.desc.embed(o)
        raise TypeError(f"cannot combine FieldElement with {type(o).__name__}")

    def is_zero(self) -> bool:
        return self.base.is_zero() and self.rad.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_base(self) -> bool:
        return self.rad.is_zero()

    def is_constant(self) -> bool:
        return self.rad.is_zero() and self.base.is_const()

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.base.num.coeff(0)

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.desc == o.desc and self.base == o.base and self.rad == o.rad
        if isinstance(o, (int, mpq, GaussianRational)):
            return self.rad.is_zero() and self.base == RatFunc.of(GaussianRational.of(o))
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.base, self.rad))
        return self._h

    def __add__(self, o):
        o = self._check(o)
        return FieldElement(self.desc, self.base + o.base, self.rad + o.rad)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.desc, -self.base, -self.rad)

    def __sub__(self, o):
        o = self._check(o)
        return FieldElement(self.desc, self.base - o.base, self.rad - o.rad)

    def __rsub__(self, o):
        return self._check(o) - self

    def __mul__(self, o):
        o = self._check(o)
        a, b, c, d = self.base, self.rad, o.base, o.rad
        if b.is_zero() and d.is_zero():
            return FieldElement(self.desc, a * c, RAT_ZERO)
        s = RatFunc.of(self.desc.extension) if (not b.is_zero() and not d.is_zero()) else None
        base = a * c
        if s is not None:
            base = base + b * d * s
        rad = a * d + b * c
        return FieldElement(self.desc, base, rad)

    __rmul__ = __mul__

    def conjugate(self) -> "FieldElement":
        """sqrt(s) -> -sqrt(s)."""
        return FieldElement(self.desc, self.base, -self.rad)

    def norm(self) -> RatFunc:
        """self * conjugate(self), a base rational function."""
        if self.rad.is_zero():
            return self.base * self.base
        return self.base * self.base - self.rad * self.rad * RatFunc.of(self.desc.extension)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("division by zero field element")
        if self.rad.is_zero():
            return FieldElement(self.desc, self.base.inverse(), RAT_ZERO)
        n = self.norm().inverse()
        return FieldElement(self.desc, self.base * n, -(self.rad * n))

    def __truediv__(self, o):
        o = self._check(o)
        if o.is_zero():
            raise DivisionByZero("division by zero field element")
        if o.rad.is_zero():
            inv = o.base.inverse()
            return FieldElement(self.desc, self.base * inv, self.rad * inv)
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self._check(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.rad.is_zero():
            return FieldElement(self.desc, self.base ** k, RAT_ZERO)
        r = self.desc.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    def scale(self, k) -> "FieldElement":
        k = GaussianRational.of(k)
        return FieldElement(self.desc, self.base.scale(k), self.rad.scale(k))

    def plain_derivative(self) -> "FieldElement":
        """d/dt ignoring the weight."""
        base = self.base.derivative()
        if self.rad.is_zero():
            return FieldElement(self.desc, base, RAT_ZERO)
        rad = self.rad.derivative() + self.rad * self.desc.half_log_derivative()
        return FieldElement(self.desc, base, rad)

    def derive(self) -> "FieldElement":
        d = self.plain_derivative()
        if self.desc.is_plain:
            return d
        return d * self.desc.weight

    def retag(self, desc: FieldDescriptor) -> "FieldElement":
        """Same value viewed in a descriptor with the same underlying field."""
        if desc.var != self.desc.var or desc.extension != self.desc.extension:
            if not (self.rad.is_zero() and desc.var == self.desc.var):
                raise MixedFields("retag requires the same underlying field")
        return FieldElement(desc, self.base, self.rad)

    def to_expr(self) -> str:
        """Serialize in the expression grammar (sqrtD is the user radicand)."""
        v = self.desc.var
        parts = []
        if not self.base.is_zero():
            parts.append(format_ratfunc(self.base, v))
        if not self.rad.is_zero():
            r = self.rad / RatFunc.of(self.desc.radical_scale)
            if r == RAT_ONE:
                parts.append("sqrtD")
            else:
                parts.append(f"{_wrap(format_ratfunc(r, v))}*sqrtD")
        if not parts:
            return "0"
        return " + ".join(parts)

    def __repr__(self):
        return f"FieldElement({self.to_expr()})"

    __str__ = to_expr


def derive(x: FieldElement) -> FieldElement:
    return x.derive()


def arith(op: str, x: FieldElement, y: FieldElement) -> FieldElement:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Hermite reduction


def hermite_reduce(num: Poly, den: Poly):
    """Split num/den (proper) as g' + a/d with d squarefree.

    Returns (g: RatFunc, a: Poly, d: Poly).
    """
    g = RAT_ZERO
    a = num
    d = den
    dminus = poly_gcd(d, d.derivative())
    dstar = d.exact_div(dminus)
    while dminus.degree > 0:
        dm2 = poly_gcd(dminus, dminus.derivative())
        dmstar = dminus.exact_div(dm2)
        coef = -(dstar * dminus.derivative()).exact_div(dminus)
        b, c = poly_diophantine(coef, dmstar, a)
        a = c - (b.derivative() * dstar).exact_div(dmstar)
        g = g + RatFunc(b, dminus)
        dminus = dm2
    return g, a, dstar


def _integrate_poly(p: Poly) -> Poly:
    return Poly._raw([ZERO] + [x / (k + 1) for k, x in enumerate(p.c)])


def hermite_split(a: FieldElement):
    """a = f' + g with g proper and squarefree-denominated, w = 1 only."""
    if not a.desc.is_plain:
        raise UnsupportedTwistedDerivation("hermite_split needs the plain derivation")
    if not a.rad.is_zero():
        raise UnsupportedRadical("hermite_split needs a base rational function")
    q, r = a.base.num.divmod(a.base.den)
    f = RatFunc.of(_integrate_poly(q))
    if r.is_zero():
        return FieldElement(a.desc, f), a.desc.zero()
    g, num, d = hermite_reduce(r, a.base.den)
    return FieldElement(a.desc, f + g), FieldElement(a.desc, RatFunc(num, d))


# ---------------------------------------------------------------------------
# Q(i)-linear coordinates


def coefficient_vectors(elems: Sequence[FieldElement]):
    """Map field elements to Q(i) vectors so that linear relations are preserved.

    Everything is put over one common denominator; the vector is the list of
    coefficients of the base numerator followed by the radical numerator.
    """
    den = POLY_ONE
    for x in elems:
        for r in (x.base, x.rad):
            if not r.den.is_one():
                den = den * r.den.exact_div(poly_gcd(den, r.den))
    nums = []
    for x in elems:
        b = x.base.num * den.exact_div(x.base.den)
        r = x.rad.num * den.exact_div(x.rad.den) if not x.rad.is_zero() else POLY_ZERO
        nums.append((b, r))
    nb = max((b.degree for b, _ in nums), default=-1) + 1
    nr = max((r.degree for _, r in nums), default=-1) + 1
    out = []
    for b, r in nums:
        out.append([b.coeff(k) for k in range(nb)] + [r.coeff(k) for k in range(nr)])
    return out
