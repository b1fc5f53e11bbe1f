"""Shared fixtures and generators for the test suite."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import sympy
from hypothesis import strategies as st

from revolution.algebra.poly import Poly
from revolution.io.text import parse_poly

X, Y, Z, S, T = (Poly.var(v) for v in "xyzst")

F_EX1 = (
    "729*x^6 - 5832*x^5*y + 12150*x^5 + 19440*x^4*y^2 - 40500*x^4*y + 6075*x^4*z^2 - 70750*x^4"
    " - 34560*x^3*y^3 - 32400*x^3*y*z^2 + 444000*x^3*y + 67500*x^3*z^2 + 120000*x^3 + 34560*x^2*y^4"
    " + 144000*x^2*y^3 + 64800*x^2*y^2*z^2 - 781750*x^2*y^2 - 45000*x^2*y*z^2 - 1555000*x^2*y"
    " + 16875*x^2*z^4 - 325000*x^2*z^2 - 189375*x^2 - 18432*x*y^5 - 192000*x*y^4 - 57600*x*y^3*z^2"
    " - 240000*x*y^2*z^2 + 2152500*x*y^2 - 45000*x*y*z^4 + 1200000*x*y*z^2 - 1995000*x*y + 93750*x*z^4"
    " + 156000*x*y^3 + 675000*x*z^2 - 3168750*x + 4096*y^6 + 76800*y^5 + 19200*y^4*z^2 + 232375*y^4"
    " + 240000*y^3*z^2 - 390000*y^3 + 30000*y^2*z^4 + 106250*y^2*z^2 - 388750*y^2 + 187500*y*z^4"
    " - 1525000*y*z^2 + 3287500*y + 15625*z^6 - 406250*z^4 + 2265625*z^2 - 3562500"
)

FHAT_EX1 = (
    "-400 - 104*x^2 - x^4 + 200*y^2 - 48*x*y^2 + 26*x^2*y^2 - 29*y^4 + 12*x*y^4 + y^6 + 200*z^2"
    " - 48*x*z^2 + 26*x^2*z^2 - 58*y^2*z^2 + 24*x*y^2*z^2 + 3*y^4*z^2 - 29*z^4 + 12*x*z^4"
    " + 3*y^2*z^4 + z^6"
)

PROFILE_EX1 = "-400 - 104*x^2 - x^4 + 200*y^2 - 48*x*y^2 + 26*x^2*y^2 - 29*y^4 + 12*x*y^4 + y^6"

# The P2 curve with the corrected constant term (-400); the printed +400 is a typo.
P2_EX2 = "-400 - 104*x^2 - x^4 + 200*s - 48*x*s + 26*x^2*s - 29*s^2 + 12*x*s^2 + s^3"
P2_EX2_PRINTED = "400 - 104*x^2 - x^4 + 200*s - 48*x*s + 26*x^2*s - 29*s^2 + 12*x*s^2 + s^3"

EX1_POINTS = [(-2, 1, 0), (0, 1, 0), (-2, -2, 1), (1, 1, -2), (-2, -2, 2)]
EX1_NORMALS = [
    (5114, -4452, 0, 0, 0, 3790),
    (-3065682, 2678076, 0, 0, 0, 3065682),
    (1161776, 9625632, 11672400, -32970432, 24506576, -16927712),
    (-797368, 5955324, -8737800, 3172848, 10332536, 6752692),
    (122126, 1249332, 3087300, -8673264, 6418852, -2254412),
]
EX1_AXIS = (4, 3, 0, 0, 0, -5)

EX2_PARAM = ("-t^3+t", "t^4+4*t^3+6*t^2+4*t+5", "1")
EX2_SOS = ("t^2+2*t-1", "2*t+2")
EX2_FINAL = (
    "-t^3+t",
    "(2*s*(t^2+2*t-1)+(s^2-1)*(2*t+2))",
    "((1-s^2)*(t^2+2*t-1)+2*s*(2*t+2))",
)
EX2_FINAL_DEN = "s^2+1"

ROOT = Path(__file__).resolve().parents[1]


def poly(text: str, variables=("x", "y", "z", "s", "t")) -> Poly:
    return parse_poly(text, variables)


def tpoly(text: str) -> Poly:
    return parse_poly(text, ("t",))


def to_sympy(p: Poly):
    syms = {v: sympy.Symbol(v) for v in p.vars}
    return sympy.Add(*[
        sympy.Rational(c.numerator, c.denominator)
        * sympy.Mul(*[syms[v] ** e for v, e in zip(p.vars, exps)])
        for exps, c in p.terms.items()
    ])


def from_sympy(expr, variables) -> Poly:
    syms = [sympy.Symbol(v) for v in variables]
    sp = sympy.Poly(sympy.expand(expr), *syms)
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in sp.terms()}, variables)


# -- random surfaces of revolution --------------------------------------------------

def cayley_rotation(a, b, c) -> list[list[Fraction]]:
    """Rational rotation matrix ``(I - K)^-1 (I + K)`` for the skew matrix of ``(a, b, c)``."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    n = 1 + a * a + b * b + c * c
    return [
        [(1 + a * a - b * b - c * c) / n, 2 * (a * b - c) / n, 2 * (a * c + b) / n],
        [2 * (a * b + c) / n, (1 - a * a + b * b - c * c) / n, 2 * (b * c - a) / n],
        [2 * (a * c - b) / n, 2 * (b * c + a) / n, (1 - a * a - b * b + c * c) / n],
    ]


def place(fhat: Poly, R, b) -> Poly:
    """``fhat`` moved so that its x-axis becomes ``b + t * R e1``: ``f(P) = fhat(R^T (P - b))``."""
    rel = [X - b[0], Y - b[1], Z - b[2]]
    local = [sum((R[i][k] * rel[i] for i in range(3)), Poly.zero()) for k in range(3)]
    return fhat.subs(dict(zip(("x", "y", "z"), local)))


small = st.integers(-3, 3)
nonzero_small = st.integers(-3, 3).filter(lambda v: v != 0)


@st.composite
def profiles(draw, max_x: int = 2, max_s: int = 2):
    """Profile ``p(x, s)`` that genuinely depends on both ``x`` and ``s``
    and is not a function of ``x^2 + s`` alone (which would be a sphere family)."""
    terms = {}
    for i in range(max_x + 1):
        for j in range(max_s + 1):
            if i + j <= max(max_x, max_s):
                c = draw(small)
                if c:
                    terms[(i, j)] = Fraction(c)
    terms[(draw(st.integers(1, max_x)), 0)] = Fraction(draw(nonzero_small))
    terms[(0, 1)] = Fraction(draw(nonzero_small))
    terms[(1, 1)] = Fraction(draw(nonzero_small))
    return Poly(terms, ("x", "s"))


@st.composite
def placed_sors(draw):
    """``(f, fhat, p, R, b)`` with ``f`` a rational rigid motion of ``p(x, y^2 + z^2)``."""
    p = draw(profiles())
    fhat = p.subs({"s": Y * Y + Z * Z})
    R = cayley_rotation(draw(small), draw(small), draw(small))
    b = tuple(Fraction(draw(small), draw(st.integers(1, 3))) for _ in range(3))
    return place(fhat, R, b), fhat, p, R, b


def true_axis(R, b):
    from revolution.lines import PluckerLine

    return PluckerLine.from_point_dir(b, (R[0][0], R[1][0], R[2][0]))
