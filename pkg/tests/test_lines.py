"""Plücker lines, the pairing, the exact nullspace and axis candidates."""

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from revolution.lines import (
    PluckerLine,
    SolutionSpace,
    candidate_axes,
    line_from_point_dir,
    nullspace,
    pairing,
    pairing_row,
)
from support import EX1_AXIS, EX1_NORMALS

q = st.fractions(min_value=-9, max_value=9, max_denominator=7)
vec3 = st.tuples(q, q, q)
dir3 = vec3.filter(lambda v: any(v))
vec6 = st.tuples(q, q, q, q, q, q)


def test_line_from_point_dir_examples():
    assert line_from_point_dir((0, 0, 0), (1, 0, 1)).coords == (1, 0, 1, 0, 0, 0)
    assert line_from_point_dir((Fraction(3, 5), Fraction(-4, 5), 0), (4, 3, 0)).coords == (4, 3, 0, 0, 0, 5)
    assert line_from_point_dir((0, 0, 1), (1, 0, 0)).coords == (1, 0, 0, 0, 1, 0)
    with pytest.raises(ValueError):
        line_from_point_dir((1, 2, 3), (0, 0, 0))
    with pytest.raises(ValueError):
        PluckerLine((0,) * 6)


def test_pairing_examples():
    L = (1, 0, 1, 0, 0, 0)
    assert pairing(L, L) == 0
    assert pairing((1, 0, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0)) == 1
    assert pairing((1, 0, 0, 1, 0, 0), (1, 0, 0, 1, 0, 0)) == 2
    assert pairing((4, 3, 0, 0, 0, 5), EX1_NORMALS[0]) == 0


@given(vec6, vec6, vec6, q)
def test_pairing_symmetric_bilinear(a, b, c, lam):
    assert pairing(a, b) == pairing(b, a)
    ab = tuple(x + lam * y for x, y in zip(a, b))
    assert pairing(ab, c) == pairing(a, c) + lam * pairing(b, c)
    assert sum(r * x for r, x in zip(pairing_row(a), b)) == pairing(a, b)


@given(vec3, dir3, q)
def test_line_independent_of_base_point(p, v, t):
    L = line_from_point_dir(p, v)
    shifted = tuple(pi + t * vi for pi, vi in zip(p, v))
    assert L == line_from_point_dir(shifted, v)
    assert L.is_line()
    assert L.equivalent(PluckerLine(tuple(2 * c for c in L.coords)))


@given(vec3, dir3)
def test_point_recovers_line(p, v):
    L = line_from_point_dir(p, v)
    assert line_from_point_dir(L.point(), v) == L


def test_sign_flip_equivalence():
    a = PluckerLine((4, 3, 0, 0, 0, 5))
    b = PluckerLine(EX1_AXIS)
    assert a != b
    assert a.equivalent(b)
    assert not a.equivalent(b, allow_sign=False)


def test_nullspace_ex1():
    space = nullspace([pairing_row(n) for n in EX1_NORMALS])
    assert space.dimension == 1 and space.rank == 5
    assert PluckerLine(space.basis[0]).equivalent(PluckerLine(EX1_AXIS))


def test_nullspace_empty_rows():
    space = nullspace([])
    assert space.dimension == 6 and space.rank == 0


int_rows = st.lists(st.tuples(*[st.integers(-4, 4)] * 6), min_size=1, max_size=7)


@settings(max_examples=150)
@given(int_rows, st.lists(st.tuples(st.integers(-2, 2), st.integers(0, 6)), max_size=3))
def test_nullspace_vs_sympy(rows, combos):
    """Rank-deficient inputs: append integer combinations of earlier rows."""
    rows = [list(r) for r in rows]
    for c, i in combos:
        src = rows[i % len(rows)]
        rows.append([c * v + w for v, w in zip(src, rows[0])])
    space = nullspace(rows)
    M = sympy.Matrix(rows)
    assert space.rank == M.rank()
    assert space.dimension == 6 - M.rank()
    for b in space.basis:
        assert all(sum(Fraction(r) * x for r, x in zip(row, b)) == 0 for row in rows)
    if space.basis:
        assert sympy.Matrix([list(b) for b in space.basis]).rank() == space.dimension


def test_candidates_dim_one_and_zero():
    c = candidate_axes(SolutionSpace(((4, 3, 0, 0, 0, -5),), 5))
    assert [l.coords for l in c.lines] == [(4, 3, 0, 0, 0, -5)]
    assert candidate_axes(SolutionSpace((), 6)).lines == ()
    # not a line: pairing with itself is nonzero
    assert candidate_axes(SolutionSpace(((1, 0, 0, 1, 0, 0),), 5)).lines == ()
    # ideal line: direction block is zero
    assert candidate_axes(SolutionSpace(((0, 0, 0, 0, 0, 1),), 5)).lines == ()


def test_candidates_cylinder_pencil():
    c = candidate_axes(SolutionSpace(((0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1)), 4))
    assert c.dimension == 2 and not c.family
    assert [l.canonical() for l in c.lines] == [(0, 0, 1, 0, 0, 0)]


def test_candidates_irrational_pencil():
    # lam^2 <b1,b1> + 2 lam mu <b1,b2> + mu^2 <b2,b2> with roots lam/mu = +-sqrt(2)
    b1 = (1, 0, 0, 1, 0, 0)   # <b1,b1> = 2
    b2 = (0, 1, 0, 0, -2, 0)  # <b2,b2> = -4
    c = candidate_axes(SolutionSpace((b1, b2), 4))
    assert c.lines == () and "irrational" in c.note


def test_candidates_family():
    basis = ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0))
    c = candidate_axes(SolutionSpace(basis, 3))
    assert c.family and c.dimension == 3 and len(c.lines) >= 1
    assert all(l.is_line() and l.is_affine() for l in c.lines)


@settings(max_examples=100, deadline=None)
@given(st.lists(vec6, min_size=2, max_size=4))
def test_candidates_are_affine_lines_in_space(rows):
    space = nullspace([list(r) for r in rows])
    c = candidate_axes(space)
    for line in c.lines:
        assert line.is_line() and line.is_affine()
        assert all(sum(Fraction(a) * b for a, b in zip(r, line.coords)) == 0 for r in rows)
