"""Gaussian elimination over exact fields (Q(i) constants or field elements)."""
from __future__ import annotations

from .field import FieldElement, GaussianRational


def _size(x) -> int:
    if isinstance(x, FieldElement):
        s = x.base.num.degree + x.base.den.degree
        if not x.rad.is_zero():
            s += x.rad.num.degree + x.rad.den.degree + 1
        return s
    return 0


def row_reduce(rows, ncols=None):
    """Reduced row echelon form; returns (rows, pivot_columns). Rows are copied."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(m)):
            x = m[i][c]
            if not x.is_zero():
                sz = _size(x)
                if best is None or sz < best[1]:
                    best = (i, sz)
                    if sz == 0:
                        break
        if best is None:
            continue
        i = best[0]
        m[r], m[i] = m[i], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], GaussianRational) else m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for j in range(len(m)):
            if j != r and not m[j][c].is_zero():
                f = m[j][c]
                m[j] = [a - f * b for a, b in zip(m[j], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows, ncols, zero, one):
    """Basis of {x : rows * x = 0}, each basis vector as a list."""
    if not rows:
        return [[one if j == k else zero for j in range(ncols)] for k in range(ncols)]
    red, piv = row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(piv):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def solve(rows, rhs, zero, one):
    """One solution x of rows * x = rhs, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = row_reduce(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [zero] * ncols
    for r, c in enumerate(piv):
        x[c] = red[r][ncols]
    return x


def rank(rows, ncols=None) -> int:
    return len(row_reduce(rows, ncols)[1])


def const_nullspace(vectors):
    """Q(i)-linear relations among coefficient vectors (given as columns)."""
    from .field import ONE, ZERO
    n = len(vectors)
    if n == 0:
        return []
    length = max((len(v) for v in vectors), default=0)
    rows = [[(v[k] if k < len(v) else ZERO) for v in vectors] for k in range(length)]
    rows = [r for r in rows if any(not x.is_zero() for x in r)]
    return nullspace(rows, n, ZERO, ONE)
