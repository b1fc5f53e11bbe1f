"""Rationality of surfaces of revolution and their parametrization.

Everything here works about the x-axis: the surface is ``p(x, y^2 + z^2)``
for a profile ``p(x, s)``.  The curve ``P2 = {p(x, s) = 0}`` (the profile
pushed through ``(x, y) -> (x, y^2)``) decides rationality of the complex
surface; a proper parametrization of it gives a birational map from the
tubular surface ``y^2 + z^2 = m(x)``, whose real components are counted
from the sign pattern of ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import sympy

from .algebra.poly import Poly, RatFunc, compose
from .algebra.resultants import gcd_degree, subresultant
from .algebra.scalar import gaussian_unit
from .algebra.univariate import (
    gcd_uni,
    positive_intervals,
    squarefree_square_split,
    sturm_real_roots,
)
from .recognition import Isometry, ProfileCurve

T, S = Poly.var("t"), Poly.var("s")
X, Y, Z = Poly.var("x"), Poly.var("y"), Poly.var("z")


class RationalityError(Exception):
    pass


class DegenerateParametrization(RationalityError):
    pass


class ImproperParametrization(RationalityError):
    pass


class SectionNotOnSurface(RationalityError):
    pass


class SOSMismatch(RationalityError):
    pass


class VerificationFailed(RationalityError):
    pass


class ContradictionError(RationalityError):
    pass


# -- curves and parametrizations -------------------------------------------------

@dataclass(frozen=True)
class P2Curve:
    q: Poly
    profile: ProfileCurve | None = None


def _profile_poly(p) -> Poly:
    return p.p if isinstance(p, ProfileCurve) else p


def profile_to_p2(profile) -> P2Curve:
    """The profile already stores ``s = y^2``; only the content is normalised."""
    q = _profile_poly(profile)
    if q.is_rational():
        q = q.primitive()
    return P2Curve(q, profile if isinstance(profile, ProfileCurve) else None)


@dataclass
class CurveParam:
    """``t -> (p(t)/q(t), r(t)/q(t))`` on a curve in the ``(x, s)`` plane."""

    p: Poly
    r: Poly
    q: Poly
    proper: bool | None = None
    inverse: RatFunc | None = None

    def __post_init__(self):
        self.p, self.r, self.q = (Poly._lift(c) for c in (self.p, self.r, self.q))
        for c in (self.p, self.r, self.q):
            if any(v != "t" for v in c.used_vars()):
                raise ValueError("parametrization components must be polynomials in t")
        if self.q.is_zero():
            raise ZeroDivisionError("zero denominator in parametrization")

    @property
    def x(self) -> RatFunc:
        return RatFunc(self.p, self.q)

    @property
    def y(self) -> RatFunc:
        return RatFunc(self.r, self.q)


def validate_param(curve, param: CurveParam) -> bool:
    """True iff the curve equation vanishes identically on the parametrization."""
    q = curve.q if isinstance(curve, P2Curve) else _profile_poly(curve)
    return compose(q, {"x": param.x, "s": param.y}).num.is_zero()


def builtin_p2_param(curve) -> CurveParam | None:
    """``(t, -p0(t)/p1(t))`` when the curve is linear in ``s``; None otherwise."""
    q = curve.q if isinstance(curve, P2Curve) else _profile_poly(curve)
    coeffs = q.coeffs_in("s")
    if q.degree("s") != 1:
        return None
    p0 = coeffs.get(0, Poly.zero()).rename({"x": "t"})
    p1 = coeffs[1].rename({"x": "t"})
    if any(v != "t" for v in p0.used_vars() + p1.used_vars()):
        return None
    return CurveParam(T, -p0, p1)


def param_inverse(param: CurveParam) -> RatFunc | None:
    """Rational inverse ``phi(x, s)`` of a proper parametrization, else None.

    Properness is the degree of ``gcd(p(t)q(l) - p(l)q(t), r(t)q(l) - r(l)q(t))``
    in ``t`` over ``Q(l)``; the inverse is the root of the first subresultant
    of ``p(t) - x q(t)`` and ``r(t) - s q(t)``.
    """
    if all(c.degree("t") <= 0 for c in (param.p, param.r, param.q)):
        raise DegenerateParametrization("both components are constant")
    p, r, q = param.p, param.r, param.q
    pl, rl, ql = (c.rename({"t": "λ"}) for c in (p, r, q))
    F1 = p * ql - pl * q
    F2 = r * ql - rl * q
    if F1.is_zero() and F2.is_zero():
        raise DegenerateParametrization("both components are constant")
    index = gcd_degree(F1, F2, "t")
    if index != 1:
        param.proper = False
        return None
    P1 = p - X * q
    P2 = r - S * q
    phi = _linear_root(P1, P2)
    param.proper = phi is not None
    param.inverse = phi
    return phi


def _linear_root(P1: Poly, P2: Poly) -> RatFunc | None:
    cands = [P for P in (P1, P2) if P.degree("t") == 1]
    if cands:
        lin = cands[0]
    else:
        nz = [P for P in (P1, P2) if P.degree("t") > 0]
        if len(nz) < 2:
            return None
        lin = subresultant(P1, P2, "t", 1)
    c = lin.coeffs_in("t")
    a = c.get(1, Poly.zero())
    if a.is_zero():
        return None
    return RatFunc(-c.get(0, Poly.zero()), a)


# -- reducible profiles ------------------------------------------------------------

@dataclass(frozen=True)
class ProfileSplit:
    """``p(x, y^2) == unit * g(x, y) * g(x, -y)``."""

    g: Poly
    unit: Fraction


def _reflect(g: Poly) -> Poly:
    return g.subs({"y": -Y})


def _solve_linear(columns: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact solution of ``sum_j x_j * columns[j] == rhs`` (unique when it exists), else None."""
    nrows = max(len(rhs), max((len(c) for c in columns), default=0))
    A = [[(col[i] if i < len(col) else Fraction(0)) for col in columns] +
         [rhs[i] if i < len(rhs) else Fraction(0)] for i in range(nrows)]
    ncols = len(columns)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if any(A[i][ncols] != 0 for i in range(r, nrows)):
        return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = A[i][ncols]
    return sol


def _dense(p: Poly, var: str, n: int | None = None) -> list[Fraction]:
    coeffs = p.coeffs_in(var)
    top = max(coeffs, default=-1)
    size = max(top + 1, n or 0)
    return [coeffs[k].constant_value() if k in coeffs else Fraction(0) for k in range(size)]


def _factor_univariate(h: Poly, var: str) -> list[Poly]:
    """Monic irreducible factors over Q (with multiplicity) of a univariate polynomial."""
    sym = sympy.Symbol(var)
    coeffs = list(reversed(_dense(h, var)))
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], sym, domain="QQ")
    out = []
    for fac, mult in sp.factor_list()[1]:
        fac = fac.monic()
        dense = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        out.extend([Poly.from_dense(dense, var)] * mult)
    return out


def profile_split(profile, max_shift: int = 40) -> ProfileSplit | None:
    """Split ``p(x, y^2) = c * g(x, y) * g(x, -y)`` over Q, or None.

    The undetermined factor ``g = sum_j g_j(y) (x - x0)^j`` is fixed order
    by order from a specialisation ``x = x0`` where ``p(x0, y^2)`` is
    square-free: ``g_0`` is one of finitely many choices of conjugate
    factors and each further ``g_j`` solves a linear system whose operator
    ``h -> g_0(y) h(-y) + h(y) g_0(-y)`` is injective.
    """
    p = _profile_poly(profile)
    if not p.is_rational() or p.is_zero():
        return None
    P = p.subs({"s": Y * Y})
    k = p.degree("s")
    n = P.degree("x")
    if k <= 0 or n % 2:
        return None
    half = n // 2
    for x0 in _shifts(max_shift):
        H = P.subs({"x": Fraction(x0)})
        if H.degree("y") != 2 * k or H.subs({"y": 0}).is_zero():
            continue
        if gcd_uni(H, H.diff("y")).degree() > 0:
            continue
        factors = _factor_univariate(H, "y")
        pairs = []
        used = [False] * len(factors)
        for i, phi in enumerate(factors):
            if used[i]:
                continue
            conj = _reflect(phi).monic()
            if conj == phi:
                return None
            j = next((j for j in range(len(factors)) if not used[j] and j != i and factors[j] == conj), None)
            if j is None:
                return None
            used[i] = used[j] = True
            pairs.append((phi, conj))
        lcH = _dense(H, "y")[-1]
        unit = lcH / (-1) ** k
        shifted = P.subs({"x": X + x0})
        layers = [shifted.coeffs_in("x").get(j, Poly.zero()) for j in range(n + 1)]
        for choice in product((0, 1), repeat=len(pairs)):
            g0 = Poly.const(1)
            for (a, b), c in zip(pairs, choice):
                g0 = g0 * (a if c == 0 else b)
            g = _lift_split(g0, unit, layers, half, k)
            if g is None:
                continue
            g = g.subs({"x": X - x0})
            if g * _reflect(g) * unit == P:
                content = g.content()
                g = g.primitive()
                return ProfileSplit(g, unit * content * content)
        return None
    return None


def _shifts(bound: int):
    yield 0
    for i in range(1, bound + 1):
        yield i
        yield -i


def _lift_split(g0: Poly, unit: Fraction, layers: list[Poly], half: int, k: int) -> Poly | None:
    g0r = _reflect(g0)
    cols = []
    for l in range(k + 1):
        mono = Y ** l
        cols.append(_dense(g0 * _reflect(mono) + mono * g0r, "y", 2 * k + 1))
    parts = [g0]
    for j in range(1, half + 1):
        rhs = layers[j] * (1 / unit) if j < len(layers) else Poly.zero()
        for i in range(1, j):
            rhs = rhs - parts[i] * _reflect(parts[j - i])
        sol = _solve_linear(cols, _dense(rhs, "y", 2 * k + 1))
        if sol is None:
            return None
        parts.append(Poly.from_dense(sol, "y"))
    return sum((part * X ** j for j, part in enumerate(parts)), Poly.zero())


# -- tubular surfaces ----------------------------------------------------------------

@dataclass
class TubularData:
    """Birational data between ``T: y^2 + z^2 = m(x)`` and the surface of revolution.

    ``x_map`` is the first coordinate ``p(x)/q(x)`` of the P2 parametrization,
    ``r_tilde/q_tilde`` its reduced second coordinate, and
    ``r_tilde * q_tilde == m * d**2`` with ``m`` the odd-multiplicity part.
    """

    param: CurveParam
    x_map: RatFunc
    r_tilde: Poly
    q_tilde: Poly
    m: Poly
    d: Poly
    inverse: RatFunc
    real_roots: int = 0
    positive_intervals: int = 0

    @property
    def equation(self) -> Poly:
        return Y * Y + Z * Z - self.m

    @property
    def tau(self) -> tuple[RatFunc, RatFunc, RatFunc]:
        """``T -> X``: ``(p/q(x), d(x) y / q~(x), d(x) z / q~(x))``."""
        scale = RatFunc(self.d, self.q_tilde)
        return (self.x_map, scale * Y, scale * Z)

    @property
    def tau_inverse(self) -> tuple[RatFunc, RatFunc, RatFunc]:
        """``X -> T``: ``tau_2 . tau_1`` with ``tau_1 = (phi(x, y^2 + z^2), y, z)``."""
        psi = self.inverse.subs({"s": Y * Y + Z * Z})
        scale = compose(self.q_tilde, {"x": psi}) / compose(self.d, {"x": psi})
        return (psi, scale * Y, scale * Z)


def tubularize(param: CurveParam) -> TubularData:
    """Tubular surface birational to the surface of revolution whose P2 curve ``param`` covers."""
    phi = param.inverse if param.proper and param.inverse is not None else param_inverse(param)
    if phi is None:
        raise ImproperParametrization("parametrization of P2 is not proper")
    tx = {"t": "x"}
    p, r, q = (c.rename(tx) for c in (param.p, param.r, param.q))
    g = gcd_uni(r, q) if not r.is_zero() else q.monic()
    r_t = r.exact_div(g)
    q_t = q.exact_div(g)
    lc = q_t.leading_term()[1]
    r_t, q_t = r_t * (1 / lc), q_t * (1 / lc)
    m, d = squarefree_square_split(r_t * q_t) if not r_t.is_zero() else (Poly.zero(), Poly.const(1))
    td = TubularData(param, RatFunc(p, q), r_t, q_t, m, d, phi)
    if not m.is_zero():
        td.real_roots = sturm_real_roots(m)
        td.positive_intervals = positive_intervals(m)
    return td


def count_components(td: TubularData) -> int:
    """Number of real components of the tube: intervals where ``m > 0``."""
    if td.m.is_zero():
        return 0
    return positive_intervals(td.m)


def reduce_mod_tube(num: Poly, m: Poly) -> Poly:
    """Remainder of ``num`` modulo ``y^2 + z^2 - m(x)``: replace ``y^2`` by ``m - z^2``."""
    sub = m - Z * Z
    out = Poly.zero()
    for k, c in num.coeffs_in("y").items():
        out = out + c * sub ** (k // 2) * Y ** (k % 2)
    return out


def vanishes_on_tube(expr: RatFunc, m: Poly) -> bool:
    return reduce_mod_tube(expr.num, m).is_zero()


def round_trip_ok(td: TubularData) -> bool:
    """``tau^-1 . tau`` is the identity on ``T`` componentwise."""
    images = dict(zip(("x", "y", "z"), td.tau))
    for comp, ident in zip(td.tau_inverse, (X, Y, Z)):
        back = compose(comp.num, images) / compose(comp.den, images)
        if not vanishes_on_tube(back - ident, td.m):
            return False
    return True


def tau_maps_into(td: TubularData, fhat: Poly) -> bool:
    """Substituting ``tau`` into ``fhat`` gives a multiple of the tube equation."""
    comp = compose(fhat, dict(zip(("x", "y", "z"), td.tau)))
    return reduce_mod_tube(comp.num, td.m).is_zero()


# -- surface parametrizations --------------------------------------------------------

@dataclass
class SurfaceParam:
    components: tuple[RatFunc, RatFunc, RatFunc]
    construction: str
    verified: bool = False

    def verify(self, f: Poly) -> bool:
        self.verified = compose(f, dict(zip(("x", "y", "z"), self.components))).num.is_zero()
        return self.verified


def _rotation():
    den = 1 + S * S
    return RatFunc(2 * S, den), RatFunc(1 - S * S, den)


def _as_ratfunc(c) -> RatFunc:
    return c if isinstance(c, RatFunc) else RatFunc(c)


def rotate_profile_param(phi, psi) -> SurfaceParam:
    """Sweep ``t -> (phi(t), psi(t))`` on the meridian around the x-axis.

    Not necessarily proper.
    """
    sn, cs = _rotation()
    phi, psi = _as_ratfunc(phi), _as_ratfunc(psi)
    return SurfaceParam((phi, sn * psi, cs * psi), "profile-rotation")


def rotate_section(section: Sequence, surface: Poly | None = None) -> SurfaceParam:
    """Rotate a section ``(phi, psi, mu)`` about the x-axis."""
    phi, psi, mu = (_as_ratfunc(c) for c in section)
    if surface is not None:
        if not compose(surface, {"x": phi, "y": psi, "z": mu}).num.is_zero():
            raise SectionNotOnSurface("section does not lie on the surface")
    sn, cs = _rotation()
    return SurfaceParam((phi, sn * psi - cs * mu, sn * mu + cs * psi), "section-rotation")


def complex_section(phi, psi) -> tuple[RatFunc, RatFunc, RatFunc]:
    """``(phi, (psi + 1)/2, (psi - 1)/(2i))``: squares of the last two sum to ``psi``."""
    i = gaussian_unit()
    phi, psi = _as_ratfunc(phi), _as_ratfunc(psi)
    return (phi, (psi + 1) * Fraction(1, 2), (psi - 1) * (i.inverse() / 2))


def parametrize_surface(fhat: Poly, td: TubularData, sos: Sequence | None = None,
                        isometry: Isometry | None = None, f: Poly | None = None):
    """Parametrize ``fhat`` (axis = x-axis) through the tubular surface.

    ``sos = (a, b)`` with ``a^2 + b^2 = m`` gives a real section of the tube;
    without it the Gaussian section is used.  Returns the parametrization of
    ``fhat`` and, when ``isometry`` is given, of the original surface too.
    """
    m_t = td.m.rename({"x": "t"})
    if sos is not None:
        a, b = (Poly._lift(c).rename({"x": "t"}) for c in sos)
        if a * a + b * b != m_t:
            raise SOSMismatch("a^2 + b^2 != m")
        section = (RatFunc(T), RatFunc(a), RatFunc(b))
    else:
        section = complex_section(T, m_t)
    tube = rotate_section(section)
    images = {"x": tube.components[0], "y": tube.components[1], "z": tube.components[2]}
    comps = tuple(compose(c.num, images) / compose(c.den, images) for c in td.tau)
    local = SurfaceParam(comps, "tubular-pullback")
    if not local.verify(fhat):
        raise VerificationFailed("parametrization does not satisfy the surface equation")
    if isometry is None:
        return local, None
    world = SurfaceParam(tuple(_as_ratfunc(c) for c in isometry.to_world(*comps)), "tubular-pullback")
    if f is not None and not world.verify(f):
        raise VerificationFailed("mapped parametrization does not satisfy f")
    return local, world


# -- classification ----------------------------------------------------------------

RATIONAL = "Rational"
UNIRATIONAL = "UnirationalNotRational"
NON_RATIONAL = "NonRational"
NEEDS_EVIDENCE = "NeedsEvidence"


@dataclass
class Evidence:
    profile_reducible: bool | None = None
    p2_param: bool = False
    components: int | None = None
    genus_p2: int | None = None
    genus_profile: int | None = None
    genus_source: str = ""


@dataclass
class Classification:
    verdict: str
    complex_rational: bool | None
    evidence: Evidence
    missing: list[str] = field(default_factory=list)
    note: str = ""


def classify(ev: Evidence) -> Classification:
    """Rationality verdict from the available evidence."""
    if ev.p2_param and ev.genus_p2 is not None and ev.genus_p2 > 0:
        raise ContradictionError("P2 is parametrized but a positive genus was supplied")
    p2_rational = ev.p2_param or ev.genus_p2 == 0
    if ev.profile_reducible:
        if p2_rational:
            return Classification(RATIONAL, True, ev, note="reducible profile, rational P2")
        if ev.genus_p2 is not None and ev.genus_p2 > 0:
            return Classification(NON_RATIONAL, False, ev, note="reducible profile, P2 of positive genus")
    if ev.genus_p2 is not None and ev.genus_p2 > 0:
        return Classification(NON_RATIONAL, False, ev, note="P2 of positive genus")
    if ev.p2_param:
        if ev.components is None:
            return Classification(NEEDS_EVIDENCE, True, ev, ["component count"])
        if ev.components == 1:
            return Classification(RATIONAL, True, ev, note="unirational and connected")
        if ev.components >= 2:
            return Classification(UNIRATIONAL, True, ev, note=f"{ev.components} real components")
        return Classification(NEEDS_EVIDENCE, True, ev, ["real points of the tube"],
                              note="tube has no real points")
    if ev.genus_p2 == 0:
        return Classification(NEEDS_EVIDENCE, True, ev, ["P2 parametrization"])
    return Classification(NEEDS_EVIDENCE, None, ev, ["P2 parametrization or genus(P2)"])
