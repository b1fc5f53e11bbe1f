"""Determinants over polynomial rings and subresultants in one variable."""

from __future__ import annotations

from .poly import Poly


def det(matrix: list[list[Poly]]) -> Poly:
    """Fraction-free (Bareiss) determinant of a square matrix of polynomials."""
    n = len(matrix)
    if n == 0:
        return Poly.const(1)
    m = [[Poly._lift(e) for e in row] for row in matrix]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly.const(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev) if not prev.is_constant() else num / prev.constant_value()
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def _coeff_rows(f: Poly, g: Poly, var: str, j: int) -> tuple[list[list[Poly]], int]:
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    m, n = f.degree(var), g.degree(var)
    width = m + n - j
    zero = Poly.zero()
    rows = []
    for k in range(n - j):
        shift = n - j - 1 - k
        rows.append([fc.get(width - 1 - col - shift, zero) if 0 <= width - 1 - col - shift <= m else zero
                     for col in range(width)])
    for k in range(m - j):
        shift = m - j - 1 - k
        rows.append([gc.get(width - 1 - col - shift, zero) if 0 <= width - 1 - col - shift <= n else zero
                     for col in range(width)])
    return rows, width


def subresultant(f: Poly, g: Poly, var: str, j: int) -> Poly:
    """The j-th subresultant polynomial of ``f`` and ``g`` with respect to ``var``."""
    m, n = f.degree(var), g.degree(var)
    if not 0 <= j < min(m, n) + (1 if m != n else 0):
        raise ValueError(f"subresultant index {j} out of range for degrees {m}, {n}")
    if j == min(m, n):
        # S_n = lc(g)^(m-n-1) * g for n < m
        hi, lo = (f, g) if m > n else (g, f)
        lc = lo.coeffs_in(var)[lo.degree(var)]
        return lc ** (max(m, n) - min(m, n) - 1) * lo
    rows, width = _coeff_rows(f, g, var, j)
    size = m + n - 2 * j
    t = Poly.var(var)
    out = Poly.zero()
    for i in range(j + 1):
        col = width - 1 - i
        mat = [row[: size - 1] + [row[col]] for row in rows]
        out = out + det(mat) * t ** i
    return out


def principal_subresultant(f: Poly, g: Poly, var: str, j: int) -> Poly:
    S = subresultant(f, g, var, j)
    return S.coeffs_in(var).get(j, Poly.zero())


def gcd_degree(f: Poly, g: Poly, var: str) -> int:
    """Degree in ``var`` of gcd(f, g) over the fraction field of the other variables."""
    if f.is_zero():
        return g.degree(var)
    if g.is_zero():
        return f.degree(var)
    m, n = f.degree(var), g.degree(var)
    for j in range(min(m, n)):
        if not principal_subresultant(f, g, var, j).is_zero():
            return j
    return min(m, n)
