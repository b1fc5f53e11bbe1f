"""Univariate tools over Q: gcd, square-free decomposition, Sturm chains.

Internally polynomials are dense coefficient lists, lowest degree first.
Public functions take and return :class:`Poly`.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly


class ZeroPolynomialError(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


# -- dense helpers ---------------------------------------------------------

def _trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lc = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lc
        q[k] = c
        if c:
            for i, bc in enumerate(b):
                r[k + i] -= c * bc
    return _trim(q), _trim(r[: len(b) - 1])


def _monic(a: list) -> list:
    a = _trim(a)
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def _primitive_positive(a: list) -> list:
    """Scale by a positive rational so the coefficients are coprime integers."""
    a = _trim(a)
    if not a:
        return a
    p = Poly.from_dense(a, "t")
    c = p.content()
    return [x / c for x in a]


def _gcd(a: list, b: list) -> list:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
        b = _primitive_positive(b)
    return _monic(a)


def _deriv(a: list) -> list:
    return _trim([i * c for i, c in enumerate(a)][1:])


def _mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _eval(a: list, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _dense(h: Poly) -> tuple[list, str]:
    var = h.univariate_var() or (h.vars[0] if h.vars else "t")
    return _trim(h.dense(var)), var


def _require_nonzero(h: Poly, what: str) -> None:
    if h.is_zero():
        raise ZeroPolynomialError(f"{what} of the zero polynomial")


# -- gcd and square-free structure -----------------------------------------

def gcd_uni(a: Poly, b: Poly) -> Poly:
    """Monic gcd of two univariate polynomials in the same variable."""
    if a.is_zero() and b.is_zero():
        raise ZeroPolynomialError("gcd of two zero polynomials")
    va, vb = a.univariate_var(), b.univariate_var()
    if va and vb and va != vb:
        raise ValueError(f"gcd of polynomials in different variables {va}, {vb}")
    var = va or vb or "t"
    return Poly.from_dense(_gcd(a.dense(var), b.dense(var)), var)


def derivative(h: Poly) -> Poly:
    a, var = _dense(h)
    return Poly.from_dense(_deriv(a), var)


def squarefree_decomposition(h: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Yun's algorithm: ``h = unit * prod(a_i ** i)`` with monic, square-free,
    pairwise coprime ``a_i``.  Only factors of positive degree are listed."""
    _require_nonzero(h, "square-free decomposition")
    a, var = _dense(h)
    unit = a[-1]
    a = _monic(a)
    out = []
    if len(a) == 1:
        return unit, out
    b = _deriv(a)
    c = _gcd(a, b)
    w = _divmod(a, c)[0]
    y = _divmod(b, c)[0]
    i = 1
    while len(w) > 1:
        z = _trim([yy - ww for yy, ww in zip(y + [0] * len(w), _deriv(w) + [0] * len(y))])
        g = _gcd(w, z)
        if len(g) > 1:
            out.append((Poly.from_dense(g, var), i))
        w = _divmod(w, g)[0]
        y = _divmod(z, g)[0]
        i += 1
    return unit, out


def squarefree_part(h: Poly) -> Poly:
    _require_nonzero(h, "square-free part")
    a, var = _dense(h)
    if len(a) == 1:
        return Poly.from_dense([Fraction(1)], var)
    return Poly.from_dense(_monic(_divmod(a, _gcd(a, _deriv(a)))[0]), var)


def squarefree_square_split(h: Poly) -> tuple[Poly, Poly]:
    """Return ``(m, d)`` with ``h == m * d**2``.

    ``m`` is the odd-multiplicity part of ``h`` and carries the unit
    (leading coefficient) of ``h``; ``d`` is monic.
    """
    unit, parts = squarefree_decomposition(h)
    var = h.univariate_var() or (h.vars[0] if h.vars else "t")
    m = Poly.const(unit, (var,))
    d = Poly.const(1, (var,))
    for a, k in parts:
        if k % 2:
            m = m * a
        d = d * a ** (k // 2)
    return m.with_vars((var,)), d.with_vars((var,))


# -- Sturm chains and real roots -------------------------------------------

def sturm_sequence(h: Poly) -> list[list]:
    """Sturm chain of the square-free part of ``h`` (dense lists).

    Remainders are negated and rescaled by their positive content, which
    keeps the sign pattern intact while bounding coefficient growth.
    """
    _require_nonzero(h, "Sturm sequence")
    a, _ = _dense(h)
    g = _gcd(a, _deriv(a))
    p0 = _primitive_positive(_divmod(a, g)[0] if len(g) > 1 else a)
    chain = [p0]
    p1 = _primitive_positive(_deriv(p0))
    if p1:
        chain.append(p1)
    while len(chain[-1]) > 1:
        r = _divmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(_primitive_positive([-c for c in r]))
    return chain


def _variations(signs: list[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def _signs_at(chain: list[list], x) -> list[int]:
    if x == float("inf") or x == "+inf":
        return [_sign(p[-1]) for p in chain]
    if x == float("-inf") or x == "-inf":
        return [_sign(p[-1]) * (-1) ** (len(p) - 1) for p in chain]
    return [_sign(_eval(p, x)) for p in chain]


def _count(chain, lo, hi) -> int:
    return _variations(_signs_at(chain, lo)) - _variations(_signs_at(chain, hi))


def sturm_real_roots(h: Poly, interval=None) -> int:
    """Number of distinct real roots of ``h``.

    ``interval=(lo, hi)`` restricts the count to ``lo < x <= hi``; either
    end may be ``None`` for an unbounded side.
    """
    chain = sturm_sequence(h)
    lo, hi = interval if interval is not None else (None, None)
    lo = "-inf" if lo is None else Fraction(lo)
    hi = "+inf" if hi is None else Fraction(hi)
    return _count(chain, lo, hi)


def root_bound(h: Poly) -> Fraction:
    """Cauchy bound: every real root lies strictly inside ``(-B, B)``."""
    a, _ = _dense(h)
    lc = abs(a[-1])
    return 1 + max((abs(c) / lc for c in a[:-1]), default=Fraction(0))


def isolate_real_roots(h: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` each holding exactly one real root, sorted."""
    chain = sturm_sequence(h)
    B = root_bound(h)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = _count(chain, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def positive_intervals(h: Poly) -> int:
    """Number of maximal open intervals of R on which ``h > 0``.

    Real roots are isolated on the square-free part; a root changes the
    sign of ``h`` exactly when it has odd multiplicity, i.e. when it is a
    root of the odd part ``m`` of ``h = m * d**2``.
    """
    _require_nonzero(h, "positive intervals")
    a, _ = _dense(h)
    if len(a) == 1:
        return 1 if a[0] > 0 else 0
    m, _d = squarefree_square_split(h)
    m_chain = sturm_sequence(m) if m.degree() > 0 else None
    roots = isolate_real_roots(h)
    sign = _sign(a[-1]) * (-1) ** (len(a) - 1)
    count = 1 if sign > 0 else 0
    for lo, hi in roots:
        odd = m_chain is not None and _count(m_chain, lo, hi) == 1
        if odd:
            sign = -sign
        if sign > 0:
            count += 1
    return count


def poly_sqrt(h: Poly) -> Poly | None:
    """Exact square root of a univariate polynomial with square leading coefficient, or None."""
    a, var = _dense(h)
    if not a:
        return Poly.const(0, (var,))
    if (len(a) - 1) % 2:
        return None
    from .scalar import rational_sqrt_split

    lc = a[-1]
    if lc < 0:
        return None
    r, k = rational_sqrt_split(lc)
    if k != 1:
        return None
    n = (len(a) - 1) // 2
    s = [Fraction(0)] * (n + 1)
    s[n] = r
    for k_ in range(n - 1, -1, -1):
        # coefficient of x^(n + k_) in s^2 determines s[k_]
        acc = a[n + k_]
        for i in range(k_ + 1, n + 1):
            j = n + k_ - i
            if k_ < j <= n:
                acc -= s[i] * s[j]
        s[k_] = acc / (2 * r)
    root = Poly.from_dense(s, var)
    return root if root * root == h else None
