"""Sparse multivariate polynomials and rational functions over exact scalars.

A :class:`Poly` maps exponent tuples to coefficients (``Fraction`` or
:class:`TowerElem`).  Variables are kept in a fixed global order so that two
polynomials over overlapping variable sets can always be aligned, and terms
are listed in graded lexicographic order (highest first) for printing.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from .scalar import TowerElem, collapse

VAR_ORDER = ("x", "y", "z", "s", "t", "α", "β", "γ", "σ", "λ")


def _var_key(name: str):
    if name in VAR_ORDER:
        return (0, VAR_ORDER.index(name), "")
    return (1, 0, name)


def _sorted_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_var_key))


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, TowerElem))


class Poly:
    """Immutable sparse polynomial.  Build with :meth:`var`, :meth:`const`
    or ``Poly({exponents: coeff}, vars)``."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping | None = None, vars: Iterable[str] = ()):
        vars = tuple(vars)
        canon = _sorted_vars(vars)
        if len(canon) != len(vars):
            raise ValueError(f"repeated variable in {vars}")
        perm = [vars.index(v) for v in canon]
        out = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(vars):
                raise ValueError("exponent vector does not match variable list")
            c = collapse(c)
            if c == 0:
                continue
            key = tuple(exps[i] for i in perm)
            if key in out:
                c = collapse(out[key] + c)
                if c == 0:
                    del out[key]
                    continue
            out[key] = c
        self.vars = canon
        self.terms = out
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, vars: tuple[str, ...]) -> "Poly":
        # terms already canonical: no zeros, vars sorted
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw({(1,): Fraction(1)}, (name,))

    @classmethod
    def const(cls, value, vars: Iterable[str] = ()) -> "Poly":
        vars = _sorted_vars(vars)
        value = collapse(value)
        if value == 0:
            return cls._raw({}, vars)
        return cls._raw({(0,) * len(vars): value}, vars)

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw({}, ())

    @classmethod
    def from_dense(cls, coeffs, var: str) -> "Poly":
        """Univariate polynomial from coefficients, lowest degree first."""
        return cls({(i,): c for i, c in enumerate(coeffs)}, (var,))

    # -- structure ---------------------------------------------------------

    def with_vars(self, vars: Iterable[str]) -> "Poly":
        vars = _sorted_vars(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in vars:
            idx.append(self.vars.index(v) if v in self.vars else None)
        for v in self.vars:
            if v not in vars and self.degree(v) > 0:
                raise ValueError(f"variable {v} is used and cannot be dropped")
        terms = {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self.terms.items()}
        return Poly._raw(terms, vars)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def trimmed(self) -> "Poly":
        return self.with_vars(self.used_vars())

    def _align(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if self.vars == other.vars:
            return self, other
        vars = _sorted_vars(self.vars + other.vars)
        return self.with_vars(vars), other.with_vars(vars)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        for c in self.terms.values():
            return c
        return Fraction(0)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0]

    def coefficient(self, monomial: Mapping[str, int]):
        key = tuple(monomial.get(v, 0) for v in self.vars)
        if any(k not in self.vars and e for k, e in monomial.items()):
            return Fraction(0)
        return self.terms.get(key, Fraction(0))

    def coeffs_in(self, var: str) -> dict[int, "Poly"]:
        """Coefficients with respect to ``var`` as polynomials in the other variables."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: Poly._raw(t, rest) for k, t in buckets.items()}

    def dense(self, var: str | None = None) -> list:
        """Coefficient list (lowest degree first) of a univariate polynomial."""
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"not univariate: {used}")
            var = used[0] if used else (self.vars[0] if self.vars else "t")
        elif any(v != var for v in used):
            raise ValueError(f"not univariate in {var}: {used}")
        n = self.degree(var)
        out = [Fraction(0)] * (n + 1)
        if var in self.vars:
            i = self.vars.index(var)
            for e, c in self.terms.items():
                out[e[i]] = c
        else:
            for c in self.terms.values():
                out[0] = c
        return out

    def univariate_var(self) -> str | None:
        used = self.used_vars()
        if len(used) > 1:
            raise ValueError(f"not univariate: {used}")
        return used[0] if used else None

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _lift(value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if _is_scalar(value):
            return Poly.const(value)
        raise TypeError(f"cannot use {type(value).__name__} as a polynomial")

    def __add__(self, other):
        if not isinstance(other, Poly):
            if not _is_scalar(other):
                return NotImplemented
            other = Poly.const(other, self.vars)
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            if e in out:
                v = collapse(out[e] + c)
                if v == 0:
                    del out[e]
                else:
                    out[e] = v
            else:
                out[e] = c
        return Poly._raw(out, a.vars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        if not isinstance(other, Poly) and not _is_scalar(other):
            return NotImplemented
        return self + (-Poly._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not _is_scalar(other):
                return NotImplemented
            other = collapse(other)
            if other == 0:
                return Poly._raw({}, self.vars)
            return Poly._raw({e: collapse(c * other) for e, c in self.terms.items()}, self.vars)
        a, b = self._align(other)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return Poly._raw({e: collapse(c) for e, c in out.items() if c != 0}, a.vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero scalar only; see :meth:`exact_div`."""
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                return NotImplemented
            other = other.constant_value()
        if not _is_scalar(other):
            return NotImplemented
        inv = 1 / (Fraction(other) if isinstance(other, int) else other)
        return self * inv

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if _is_scalar(other):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            t = self.trimmed()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from ..io.text import format_poly

        return f"Poly({format_poly(self)!r})"

    # -- calculus and substitution ----------------------------------------

    def diff(self, var: str) -> "Poly":
        if var not in self.vars:
            return Poly._raw({}, self.vars)
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Poly._raw(out, self.vars)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at scalar values for every used variable."""
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.vars, e):
                if k:
                    term = term * point[v] ** k
            total = total + term
        return collapse(total)

    def subs(self, images: Mapping[str, object]) -> "Poly":
        """Compose: replace each variable in ``images`` by a polynomial or scalar."""
        imgs = {v: Poly._lift(images[v]) for v in self.vars if v in images}
        keep = [v for v in self.vars if v not in imgs]
        out_vars = _sorted_vars(keep + [w for p in imgs.values() for w in p.vars])
        powers: dict[str, list[Poly]] = {}

        def power(v: str, k: int) -> Poly:
            lst = powers.setdefault(v, [Poly.const(1, out_vars)])
            while len(lst) <= k:
                lst.append(lst[-1] * imgs[v])
            return lst[k]

        acc: dict = {}
        keep_idx = [(out_vars.index(v), self.vars.index(v)) for v in keep]
        for e, c in self.terms.items():
            mono = [0] * len(out_vars)
            for oi, si in keep_idx:
                mono[oi] = e[si]
            term = Poly._raw({tuple(mono): c}, out_vars)
            for v, k in zip(self.vars, e):
                if k and v in imgs:
                    term = term * power(v, k)
            for ee, cc in term.with_vars(out_vars).terms.items():
                acc[ee] = acc[ee] + cc if ee in acc else cc
        return Poly._raw({e: collapse(c) for e, c in acc.items() if c != 0}, out_vars)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        new = [mapping.get(v, v) for v in self.vars]
        return Poly(self.terms, new)

    def map_coeffs(self, fn) -> "Poly":
        return Poly({e: fn(c) for e, c in self.terms.items()}, self.vars)

    # -- normalisation and division ---------------------------------------

    def content(self) -> Fraction:
        """Positive rational content: the polynomial divided by it has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError("content needs rational coefficients")
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        if not self.terms:
            return self
        return self * (1 / self.content())

    def monic(self) -> "Poly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        lc = self.leading_term()[1]
        return self * (1 / lc)

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Multivariate division by one polynomial in graded-lex order."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        a, b = self._align(divisor)
        lm, lc = b.leading_term()
        inv = 1 / lc
        rem = dict(a.terms)
        quo: dict = {}
        out_rem: dict = {}
        bt = list(b.terms.items())
        while rem:
            e, c = max(rem.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            if all(i >= j for i, j in zip(e, lm)):
                shift = tuple(i - j for i, j in zip(e, lm))
                q = collapse(c * inv)
                quo[shift] = q
                for be, bc in bt:
                    ne = tuple(i + j for i, j in zip(be, shift))
                    v = collapse(rem.get(ne, 0) - q * bc)
                    if v == 0:
                        rem.pop(ne, None)
                    else:
                        rem[ne] = v
            else:
                out_rem[e] = c
                del rem[e]
        return Poly._raw(quo, a.vars), Poly._raw(out_rem, a.vars)

    def exact_div(self, divisor: "Poly") -> "Poly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def divides(self, other: "Poly") -> bool:
        return other.divmod(self)[1].is_zero()


def poly_vars(*names: str) -> tuple[Poly, ...]:
    return tuple(Poly.var(n) for n in names)


def gradient(f: Poly, vars=("x", "y", "z")) -> tuple[Poly, ...]:
    """Partial derivatives of ``f`` with respect to ``vars``."""
    extra = [v for v in f.used_vars() if v not in vars]
    if extra:
        raise ValueError(f"unexpected variables {extra}")
    return tuple(f.diff(v) for v in vars)


def affine_substitute(f: Poly, images) -> Poly:
    """Compose ``f(x, y, z)`` with three affine-linear images."""
    images = list(images)
    if len(images) != 3:
        raise ValueError("affine_substitute expects exactly three images")
    for img in images:
        if isinstance(img, Poly) and img.degree() > 1:
            raise ValueError("image is not affine-linear")
    return f.subs(dict(zip(("x", "y", "z"), images)))


class RatFunc:
    """Quotient of two polynomials with nonzero denominator.

    Univariate rational instances are kept reduced with a monic denominator;
    multivariate ones only get a monic denominator and exact cancellation of
    constant or dividing denominators.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly._lift(num)
        den = Poly.const(1) if den is None else Poly._lift(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num / self.den.constant_value()

    @staticmethod
    def _lift(value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        return RatFunc(value)

    def __add__(self, other):
        if not isinstance(other, (RatFunc, Poly)) and not _is_scalar(other):
            return NotImplemented
        o = RatFunc._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, (RatFunc, Poly)) and not _is_scalar(other):
            return NotImplemented
        return self + (-RatFunc._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (RatFunc, Poly)) and not _is_scalar(other):
            return NotImplemented
        o = RatFunc._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, Poly)) and not _is_scalar(other):
            return NotImplemented
        o = RatFunc._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(1) / (self ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if not isinstance(other, (RatFunc, Poly)) and not _is_scalar(other):
            return NotImplemented
        o = RatFunc._lift(other)
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __repr__(self):
        from ..io.text import format_ratfunc

        return f"RatFunc({format_ratfunc(self)!r})"

    def evaluate(self, point):
        return collapse(self.num.evaluate(point) / self.den.evaluate(point))

    def subs(self, images: Mapping[str, object]) -> "RatFunc":
        return compose(self.num, images) / compose(self.den, images)

    def used_vars(self) -> tuple[str, ...]:
        return _sorted_vars(self.num.used_vars() + self.den.used_vars())


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return num, Poly.const(1)
    if den.is_constant():
        return num / den.constant_value(), Poly.const(1)
    vars_ = _sorted_vars(num.used_vars() + den.used_vars())
    if len(vars_) == 1 and num.is_rational() and den.is_rational():
        from .univariate import gcd_uni

        g = gcd_uni(num, den)
        if g.degree() > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
    else:
        q, r = num.divmod(den)
        if r.is_zero():
            return q, Poly.const(1)
    lc = den.leading_term()[1]
    return num / lc, den / lc


def compose(f: Poly, images: Mapping[str, object]) -> RatFunc:
    """Substitute rational functions into ``f``.

    All images are put over one common denominator ``D`` (product of the
    distinct denominators) and ``f`` is homogenised, so the numerator is a
    single polynomial; the result is ``N / D**deg f``.
    """
    imgs = {v: RatFunc._lift(images[v]) for v in f.used_vars() if v in images}
    if all(r.is_polynomial() for r in imgs.values()):
        return RatFunc(f.subs({v: r.as_poly() for v, r in imgs.items()}))
    dens: list[Poly] = []
    for r in imgs.values():
        if not r.den.is_constant() and all(r.den != d for d in dens):
            dens.append(r.den)
    D = Poly.const(1)
    for d in dens:
        D = D * d
    nums = {}
    for v, r in imgs.items():
        # r = num/den with den one of the factors of D
        nums[v] = r.num * _cofactor(D, r.den, dens)
    deg = max((sum(e[f.vars.index(v)] for v in imgs) for e in f.terms), default=0)
    Dpow = [Poly.const(1)]
    for _ in range(deg):
        Dpow.append(Dpow[-1] * D)
    powers: dict[str, list[Poly]] = {v: [Poly.const(1)] for v in nums}

    def power(v, k):
        lst = powers[v]
        while len(lst) <= k:
            lst.append(lst[-1] * nums[v])
        return lst[k]

    total = Poly.zero()
    idx = {v: f.vars.index(v) for v in imgs}
    other = [(i, v) for i, v in enumerate(f.vars) if v not in imgs]
    for e, c in f.terms.items():
        term = Poly({tuple(e[i] for i, _ in other): c}, [v for _, v in other])
        k = 0
        for v, i in idx.items():
            if e[i]:
                term = term * power(v, e[i])
                k += e[i]
        total = total + term * Dpow[deg - k]
    return RatFunc._raw(total, Dpow[deg]) if not total.is_zero() else RatFunc(0)


def _cofactor(D: Poly, den: Poly, dens: list[Poly]) -> Poly:
    if den.is_constant():
        return D / den.constant_value()
    out = Poly.const(1)
    for d in dens:
        if d != den:
            out = out * d
    return out
