"""Plücker line geometry over Q.

A line through ``p`` with direction ``v`` has coordinates ``(v : p x v)``.
Two lines meet (or are parallel) exactly when their pairing
``<X, Y> = x . ybar + xbar . y`` vanishes, and a 6-vector is a line exactly
when it pairs to zero with itself.  The axis of a surface of revolution
annihilates the pairing with every surface normal, so it is found in the
nullspace of the stacked pairing rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

from .algebra.scalar import is_rational_square

Vec3 = tuple[Fraction, Fraction, Fraction]
Vec6 = tuple[Fraction, ...]


def cross(a, b) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _fractions(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in v)


def primitive_vector(v: Sequence) -> tuple[Fraction, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    v = _fractions(v)
    den = lcm(*(c.denominator for c in v))
    ints = [int(c * den) for c in v]
    g = 0
    for i in ints:
        g = gcd(g, i)
    if g == 0:
        raise ValueError("zero vector")
    lead = next(i for i in ints if i)
    if lead < 0:
        g = -g
    return tuple(Fraction(i // g) for i in ints)


def pairing(l1: Sequence, l2: Sequence) -> Fraction:
    """The symmetric bilinear form ``x . ybar + xbar . y`` on 6-vectors."""
    return dot(l1[:3], l2[3:]) + dot(l1[3:], l2[:3])


@dataclass(frozen=True)
class PluckerLine:
    """Homogeneous coordinates ``(direction : moment)``; equality is projective."""

    coords: Vec6

    def __post_init__(self):
        coords = _fractions(self.coords)
        if len(coords) != 6:
            raise ValueError("Plücker coordinates need six entries")
        if all(c == 0 for c in coords):
            raise ValueError("all Plücker coordinates are zero")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_point_dir(cls, point, direction) -> "PluckerLine":
        p, v = _fractions(point), _fractions(direction)
        if all(c == 0 for c in v):
            raise ValueError("zero direction")
        return cls(v + cross(p, v))

    @property
    def direction(self) -> Vec3:
        return self.coords[:3]

    @property
    def moment(self) -> Vec3:
        return self.coords[3:]

    def is_line(self) -> bool:
        return pairing(self.coords, self.coords) == 0

    def is_affine(self) -> bool:
        return any(c != 0 for c in self.direction)

    def point(self) -> Vec3:
        """Point of the line closest to the origin, ``v x m / |v|^2``."""
        v = self.direction
        n = dot(v, v)
        if n == 0:
            raise ValueError("ideal line has no affine point")
        return tuple(c / n for c in cross(v, self.moment))

    def canonical(self) -> Vec6:
        return primitive_vector(self.coords)

    def equivalent(self, other: "PluckerLine", allow_sign: bool = True) -> bool:
        """Projective equality; ``allow_sign`` also matches a flipped moment block."""
        if self.canonical() == other.canonical():
            return True
        if allow_sign:
            flipped = other.direction + tuple(-c for c in other.moment)
            return self.canonical() == primitive_vector(flipped)
        return False

    def __eq__(self, other):
        if not isinstance(other, PluckerLine):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())


def line_from_point_dir(point, direction) -> PluckerLine:
    return PluckerLine.from_point_dir(point, direction)


def pairing_row(normal) -> Vec6:
    """Row ``r`` with ``r . A == <normal, A>`` for every 6-vector ``A``."""
    c = normal.coords if isinstance(normal, PluckerLine) else _fractions(normal)
    return c[3:] + c[:3]


@dataclass(frozen=True)
class SolutionSpace:
    """Basis of the solutions of a homogeneous system in six unknowns."""

    basis: tuple[Vec6, ...]
    rank: int
    rows: tuple[Vec6, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) forward elimination on an integer matrix."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _integer_row(row) -> list[int]:
    row = _fractions(row)
    den = lcm(*(c.denominator for c in row)) if row else 1
    return [int(c * den) for c in row]


def nullspace(rows: Sequence[Sequence]) -> SolutionSpace:
    """Exact basis of ``{A : row . A = 0 for all rows}`` in Q^6."""
    int_rows = [_integer_row(r) for r in rows if any(Fraction(c) != 0 for c in r)]
    if not int_rows:
        basis = tuple(tuple(Fraction(int(i == j)) for i in range(6)) for j in range(6))
        return SolutionSpace(basis, 0, tuple(_fractions(r) for r in rows))
    ech, pivots = _echelon(int_rows)
    free = [c for c in range(6) if c not in pivots]
    basis = []
    for fc in free:
        sol = [Fraction(0)] * 6
        sol[fc] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            acc = sum((ech[k][j] * sol[j] for j in range(pc + 1, 6)), Fraction(0))
            sol[pc] = -acc / ech[k][pc]
        basis.append(primitive_vector(sol))
    return SolutionSpace(tuple(basis), len(pivots), tuple(_fractions(r) for r in rows))


@dataclass(frozen=True)
class AxisCandidates:
    """Affine lines extracted from a solution space.

    ``family`` marks a solution space too large to single out one axis
    (dimension >= 3, or a pencil consisting entirely of lines); ``lines`` then
    holds representatives only.
    """

    lines: tuple[PluckerLine, ...]
    dimension: int
    family: bool = False
    basis: tuple[Vec6, ...] = ()
    note: str = ""
    rank: int = field(default=0, compare=False)


def _combine(lam, mu, b1, b2) -> Vec6:
    return tuple(lam * x + mu * y for x, y in zip(b1, b2))


def _pencil_lines(b1: Vec6, b2: Vec6) -> tuple[list[Vec6], str]:
    """Projective roots of <lam*b1 + mu*b2, same> = 0 that are rational."""
    a = pairing(b1, b1)
    b = pairing(b1, b2)
    c = pairing(b2, b2)
    if a == 0 and b == 0 and c == 0:
        return [], "pencil"
    if a == 0:
        # mu * (2*b*lam + c*mu) = 0
        sols = [(Fraction(1), Fraction(0))]
        if b != 0:
            sols.append((c, -2 * b))
        return [_combine(l, m, b1, b2) for l, m in sols], ""
    disc = b * b - a * c
    if disc < 0:
        return [], "pencil quadric has no real points"
    if disc == 0:
        return [_combine(-b, a, b1, b2)], ""
    if not is_rational_square(disc):
        return [], "pencil roots are irrational; no rational axis candidate"
    r = Fraction(isqrt(disc.numerator), isqrt(disc.denominator))
    return [_combine(-b + r, a, b1, b2), _combine(-b - r, a, b1, b2)], ""


def _dedupe(vectors) -> list[PluckerLine]:
    out: list[PluckerLine] = []
    for v in vectors:
        if all(c == 0 for c in v):
            continue
        line = PluckerLine(v)
        if line.is_affine() and line.is_line() and line not in out:
            out.append(line)
    return out


def candidate_axes(space: SolutionSpace) -> AxisCandidates:
    """Affine lines in the solution space, by its dimension."""
    basis = space.basis
    dim = len(basis)
    if dim == 0:
        return AxisCandidates((), 0, rank=space.rank, note="no nontrivial solution")
    if dim == 1:
        lines = _dedupe([basis[0]])
        note = "" if lines else "solution is not an affine line"
        return AxisCandidates(tuple(lines), 1, basis=basis, note=note, rank=space.rank)
    if dim == 2:
        vecs, note = _pencil_lines(basis[0], basis[1])
        if note == "pencil":
            reps = _dedupe([basis[0], basis[1], _combine(1, 1, basis[0], basis[1])])
            return AxisCandidates(tuple(reps), 2, family=True, basis=basis,
                                  note="every member of the pencil is a line", rank=space.rank)
        lines = _dedupe(vecs)
        if not lines and not note:
            note = "pencil lines are all ideal"
        return AxisCandidates(tuple(lines), 2, basis=basis, note=note, rank=space.rank)
    return AxisCandidates(tuple(_family_representatives(basis)), dim, family=True,
                          basis=basis, note="symmetry family", rank=space.rank)


def _family_representatives(basis) -> list[PluckerLine]:
    """One (or a few) affine lines on the Plücker quadric inside a large solution space."""
    reps = _dedupe(basis)
    if reps:
        return reps[:1]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            vecs, _ = _pencil_lines(basis[i], basis[j])
            reps = _dedupe(vecs)
            if reps:
                return reps[:1]
    for coeffs in _small_combinations(len(basis)):
        v = tuple(sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(6))
        reps = _dedupe([v])
        if reps:
            return reps
    return []


def _small_combinations(n: int, bound: int = 1):
    from itertools import product

    for coeffs in product(range(-bound, bound + 1), repeat=n):
        if any(coeffs):
            yield coeffs
