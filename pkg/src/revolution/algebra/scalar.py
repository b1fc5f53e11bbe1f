"""Exact scalars: rationals and a quadratic extension tower over Q.

Rationals are plain :class:`fractions.Fraction` values.  Elements of
Q(sqrt d1)(sqrt d2) are :class:`TowerElem` instances holding one rational
coordinate per basis product sqrt(d_i) * ...; a tower carries at most two
radicands.  The Gaussian unit is available as the radicand -1.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

import sympy

MAX_TOWER_DEPTH = 2

_SCALAR_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, TowerElem) and value.is_rational():
        return value.rational_part()
    raise TypeError(f"not an exact rational: {value!r}")


def format_scalar(value) -> str:
    """Render a rational as ``"num/den"`` with ``den > 0``."""
    q = to_fraction(value)
    return f"{q.numerator}/{q.denominator}"


def parse_scalar(text: str) -> Fraction:
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational literal: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(int(m.group(1)), den)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def squarefree_kernel(n: int) -> tuple[int, int]:
    """Split a nonzero integer as ``n = r**2 * k`` with ``k`` square-free.

    The sign stays with ``k``.
    """
    if n == 0:
        raise ValueError("zero has no square-free kernel")
    sign = -1 if n < 0 else 1
    n = abs(n)
    root = math.isqrt(n)
    if root * root == n:
        return root, sign
    r, k = 1, 1
    for p, e in sympy.factorint(n).items():
        r *= p ** (e // 2)
        if e % 2:
            k *= p
    return r, sign * k


def is_rational_square(a) -> bool:
    a = to_fraction(a)
    return a >= 0 and is_square(a.numerator) and is_square(a.denominator)


def rational_sqrt_split(a) -> tuple[Fraction, int]:
    """Write a nonzero rational as ``r**2 * k`` with ``k`` a square-free integer."""
    a = to_fraction(a)
    num, den = a.numerator, a.denominator
    # sqrt(n/d) = sqrt(n*d)/d
    r, k = squarefree_kernel(num * den)
    return Fraction(r, den), k


class Tower:
    """Q(sqrt d_1)...(sqrt d_n) for square-free radicands, n <= 2."""

    __slots__ = ("radicands",)

    def __init__(self, radicands):
        radicands = tuple(int(d) for d in radicands)
        if len(radicands) > MAX_TOWER_DEPTH:
            raise ValueError(f"tower depth capped at {MAX_TOWER_DEPTH}")
        for d in radicands:
            if d in (0, 1) or squarefree_kernel(d)[0] != 1:
                raise ValueError(f"radicand {d} is not a square-free integer != 0, 1")
        if len(set(radicands)) != len(radicands):
            raise ValueError("repeated radicand")
        self.radicands = radicands

    @property
    def size(self) -> int:
        return 1 << len(self.radicands)

    def __eq__(self, other):
        return isinstance(other, Tower) and self.radicands == other.radicands

    def __hash__(self):
        return hash(self.radicands)

    def __repr__(self):
        return f"Tower{self.radicands}"

    def gen(self, i: int) -> "TowerElem":
        """sqrt(d_i) as a tower element."""
        coords = [Fraction(0)] * self.size
        coords[1 << i] = Fraction(1)
        return TowerElem(self, coords)

    def sqrt(self, a) -> Union[Fraction, "TowerElem"]:
        """sqrt(a) for rational ``a`` whose kernel is 1 or one of the radicands."""
        a = to_fraction(a)
        if a == 0:
            return Fraction(0)
        r, k = rational_sqrt_split(a)
        if k == 1:
            return r
        if k in self.radicands:
            return r * self.gen(self.radicands.index(k))
        raise ValueError(f"sqrt({a}) does not lie in {self!r}")

    def _basis_product(self, a: int, b: int) -> tuple[int, Fraction]:
        factor = 1
        common = a & b
        for i, d in enumerate(self.radicands):
            if common >> i & 1:
                factor *= d
        return a ^ b, Fraction(factor)


class TowerElem:
    """An element of a :class:`Tower`; immutable."""

    __slots__ = ("tower", "coords")

    def __init__(self, tower: Tower, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != tower.size:
            raise ValueError("coordinate count does not match tower")
        self.tower = tower
        self.coords = coords

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_part(self) -> Fraction:
        return self.coords[0]

    def collapse(self) -> Union[Fraction, "TowerElem"]:
        return self.coords[0] if self.is_rational() else self

    def _coerce(self, other) -> "TowerElem | None":
        if isinstance(other, TowerElem):
            if other.tower != self.tower:
                if other.is_rational():
                    other = other.coords[0]
                elif self.is_rational():
                    return other
                else:
                    raise ValueError("mixing elements of different towers")
            else:
                return other
        if isinstance(other, (int, Fraction)):
            coords = [Fraction(0)] * self.tower.size
            coords[0] = Fraction(other)
            return TowerElem(self.tower, coords)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.tower != self.tower:
            return o + self.coords[0]
        return TowerElem(self.tower, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(self.tower, [-c for c in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TowerElem(self.tower, [c * other for c in self.coords])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.tower != self.tower:
            return o * self.coords[0]
        out = [Fraction(0)] * self.tower.size
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(o.coords):
                if b == 0:
                    continue
                k, f = self.tower._basis_product(i, j)
                out[k] += a * b * f
        return TowerElem(self.tower, out)

    __rmul__ = __mul__

    def conjugate(self, i: int) -> "TowerElem":
        """Flip the sign of sqrt(d_i)."""
        return TowerElem(
            self.tower, [-c if k >> i & 1 else c for k, c in enumerate(self.coords)]
        )

    def inverse(self) -> "TowerElem":
        if all(c == 0 for c in self.coords):
            raise ZeroDivisionError("inverse of zero")
        num = TowerElem(self.tower, [1] + [0] * (self.tower.size - 1))
        cur = self
        for i in range(len(self.tower.radicands)):
            conj = cur.conjugate(i)
            num = num * conj
            cur = cur * conj
        return num * (1 / cur.coords[0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = TowerElem(self.tower, [1] + [0] * (self.tower.size - 1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, TowerElem):
            if other.tower == self.tower:
                return self.coords == other.coords
            return self.is_rational() and other.is_rational() and self.coords[0] == other.coords[0]
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.tower, self.coords))

    def __bool__(self):
        return any(c != 0 for c in self.coords)

    def __repr__(self):
        return f"TowerElem({self.tower.radicands}, {[str(c) for c in self.coords]})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            rad = 1
            for i, d in enumerate(self.tower.radicands):
                if k >> i & 1:
                    rad *= d
            if k == 0:
                parts.append(str(c))
            else:
                unit = "i" if rad == -1 else f"sqrt({rad})"
                parts.append(f"{c}*{unit}")
        return "(" + " + ".join(parts) + ")" if parts else "0"


Scalar = Union[Fraction, TowerElem]


def gaussian_unit() -> TowerElem:
    """The imaginary unit i with i**2 = -1."""
    return Tower((-1,)).gen(0)


def collapse(value) -> Scalar:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, TowerElem):
        return value.collapse()
    return value
