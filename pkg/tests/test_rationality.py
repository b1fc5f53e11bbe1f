"""P2 curves, tubular surfaces, parametrizations and the rationality verdict."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from revolution.algebra import Poly, RatFunc, compose
from revolution.algebra.resultants import principal_subresultant
from revolution.algebra.univariate import gcd_uni
from revolution.rationality import (
    NEEDS_EVIDENCE,
    NON_RATIONAL,
    RATIONAL,
    UNIRATIONAL,
    ContradictionError,
    CurveParam,
    DegenerateParametrization,
    Evidence,
    ImproperParametrization,
    P2Curve,
    SectionNotOnSurface,
    SOSMismatch,
    builtin_p2_param,
    classify,
    complex_section,
    count_components,
    param_inverse,
    parametrize_surface,
    profile_split,
    profile_to_p2,
    reduce_mod_tube,
    rotate_profile_param,
    rotate_section,
    round_trip_ok,
    tau_maps_into,
    tubularize,
    validate_param,
)
from revolution.recognition import ProfileCurve
from support import (
    EX2_FINAL,
    EX2_FINAL_DEN,
    EX2_PARAM,
    EX2_SOS,
    FHAT_EX1,
    P2_EX2,
    P2_EX2_PRINTED,
    S,
    T,
    X,
    Y,
    Z,
    poly,
    tpoly,
)
from test_algebra import sampling_oracle

heavy = settings(max_examples=200, deadline=None, suppress_health_check=list(HealthCheck))


def ex2_param() -> CurveParam:
    return CurveParam(*(tpoly(c) for c in EX2_PARAM))


def xs(text: str) -> Poly:
    return poly(text, ("x", "s"))


# -- P2 and its parametrizations ------------------------------------------------------

def test_profile_to_p2_examples():
    prof = ProfileCurve(15625 * xs(P2_EX2))
    assert profile_to_p2(prof).q == xs(P2_EX2)
    assert profile_to_p2(xs("s - x^2")).q == xs("s - x^2")
    assert profile_to_p2(xs("s^2 - x")).q == xs("s^2 - x")


def test_validate_param_examples():
    assert validate_param(P2Curve(xs(P2_EX2)), ex2_param())
    # the printed constant +400 does not vanish on the printed parametrization
    assert not validate_param(P2Curve(xs(P2_EX2_PRINTED)), ex2_param())
    assert validate_param(xs("s - x^2"), CurveParam(T, T * T, 1))
    assert not validate_param(xs("s - x^2"), CurveParam(T, T ** 3, 1))


def test_builtin_param():
    param = builtin_p2_param(xs("x^3 + 3*x^2 - 2*x - s"))
    assert param.p == T and param.y == RatFunc(tpoly("t^3 + 3*t^2 - 2*t"))
    assert builtin_p2_param(xs("2*x*s - 1")).y == RatFunc(1, 2 * T)
    assert builtin_p2_param(xs(P2_EX2)) is None


def test_param_inverse_examples():
    p = CurveParam(T, T * T, 1)
    phi = param_inverse(p)
    assert p.proper and phi == RatFunc(X)
    improper = CurveParam(T * T, T ** 4, 1)
    assert param_inverse(improper) is None and improper.proper is False
    ex2 = ex2_param()
    phi = param_inverse(ex2)
    assert ex2.proper
    assert compose(phi.num, {"x": ex2.x, "s": ex2.y}) / compose(phi.den, {"x": ex2.x, "s": ex2.y}) == RatFunc(T)
    with pytest.raises(DegenerateParametrization):
        param_inverse(CurveParam(1, 2, 1))


def test_param_requires_t():
    with pytest.raises(ValueError):
        CurveParam(X, T, 1)
    with pytest.raises(ZeroDivisionError):
        CurveParam(T, T, 0)


# -- profile splitting ---------------------------------------------------------------

def test_profile_split_examples():
    sp = profile_split(xs("s - x^2"))
    assert sp.g * sp.g.subs({"y": -Y}) * sp.unit == Y * Y - X * X
    assert sp.g in (Y - X, X - Y, Y + X, -Y - X)
    assert profile_split(xs("s - x^3 - 3*x^2 + 2*x")) is None
    assert profile_split(xs(P2_EX2)) is None


def test_profile_split_biquadratic():
    g = Y * Y + X * Y - X * X + 3
    P = g * g.subs({"y": -Y})
    p = sum((c * S ** (k // 2) for k, c in P.coeffs_in("y").items()), Poly.zero())
    sp = profile_split(p)
    assert sp is not None and sp.g.degree("y") == 2
    assert sp.g * sp.g.subs({"y": -Y}) * sp.unit == P


@settings(max_examples=60, deadline=None, suppress_health_check=list(HealthCheck))
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(1, 2),
       st.integers(-3, 3).filter(bool))
def test_profile_split_constructed(hc, ydeg, lead):
    """Cor 3.3 consistency: a split profile ``g(x,y) g(x,-y)`` is found again, and for
    ``g = y - h(x)`` the branch ``(t, h(t))`` lies on ``g`` while ``(t, h(t)^2)`` lies on P2."""
    h = sum((c * X ** i for i, c in enumerate(hc)), Poly.zero()) + X ** 3
    g = lead * (Y ** ydeg - h) if ydeg == 1 else lead * (Y * Y + Y * h - 1)
    P = g * g.subs({"y": -Y})
    p = sum((c * S ** (k // 2) for k, c in P.coeffs_in("y").items()), Poly.zero())
    sp = profile_split(p)
    assert sp is not None
    assert sp.g * sp.g.subs({"y": -Y}) * sp.unit == P
    if ydeg == 1:
        ht = h.rename({"x": "t"})
        assert validate_param(p, CurveParam(T, ht * ht, 1))
        assert compose(g, {"x": T, "y": ht}).num.is_zero()


# -- tubularization ------------------------------------------------------------------

def test_tubularize_ex2():
    td = tubularize(ex2_param())
    assert td.m == poly("x^4+4*x^3+6*x^2+4*x+5") and td.d == Poly.const(1)
    assert td.equation == poly("y^2 + z^2 - x^4 - 4*x^3 - 6*x^2 - 4*x - 5")
    assert td.equation.rename({"x": "t"}) == poly("y^2+z^2-t^4-4*t^3-6*t^2-4*t-5")
    assert td.tau[0] == RatFunc(poly("-x^3 + x")) and td.tau[1:] == (RatFunc(Y), RatFunc(Z))
    assert td.real_roots == 0 and td.positive_intervals == 1
    assert round_trip_ok(td)
    assert tau_maps_into(td, poly(FHAT_EX1))


def test_tubularize_cone():
    td = tubularize(CurveParam(T, T * T, 1))
    assert td.r_tilde == X * X and td.m == Poly.const(1) and td.d == X
    assert td.tau == (RatFunc(X), RatFunc(X * Y), RatFunc(X * Z))
    assert tau_maps_into(td, poly("y^2 + z^2 - x^2"))
    assert round_trip_ok(td)


def test_tubularize_cubic():
    td = tubularize(CurveParam(T, tpoly("t^3+3*t^2-2*t"), 1))
    assert td.m == poly("x^3+3*x^2-2*x") and td.d == Poly.const(1)
    assert count_components(td) == 2 and td.real_roots == 3


def test_tubularize_improper():
    with pytest.raises(ImproperParametrization):
        tubularize(CurveParam(T * T, T ** 4, 1))


def test_count_components_examples():
    assert count_components(tubularize(ex2_param())) == 1
    assert count_components(tubularize(CurveParam(T, tpoly("t^3+3*t^2-2*t"), 1))) == 2
    assert count_components(tubularize(CurveParam(T, Poly.const(-1), 1))) == 0


def test_tubularize_with_denominator():
    """q = t^2 + 1 shares nothing with r; r~ q~ = (t^2+1) t^2 (t - 1) gives d = t."""
    param = CurveParam(T, T * T * (T - 1), T * T + 1)
    td = tubularize(param)
    assert td.m * td.d * td.d == td.r_tilde * td.q_tilde
    assert td.d == X
    assert round_trip_ok(td)


coef = st.integers(-3, 3)


@st.composite
def proper_params(draw):
    p = Poly.from_dense([Fraction(draw(coef)) for _ in range(3)] + [Fraction(draw(st.integers(0, 1)))], "t")
    q = Poly.from_dense([Fraction(draw(st.integers(1, 3)))] + [Fraction(draw(coef)) for _ in range(draw(st.integers(0, 2)))], "t")
    a = Poly.from_dense([Fraction(draw(coef)) for _ in range(3)], "t")
    b = Poly.from_dense([Fraction(draw(coef)), Fraction(draw(st.integers(1, 2)))], "t")
    r = a * b ** draw(st.integers(1, 2))
    param = CurveParam(p, r, q)
    assume(not r.is_zero())
    assume(param.x.num.degree() > 0 or param.y.num.degree() > 0)
    assume(param_inverse(param) is not None)
    return param


def implicit_p2(param: CurveParam) -> Poly:
    """Resultant in t of p - x q and r - s q (a power of the P2 equation)."""
    P1 = param.p - X * param.q
    P2 = param.r - S * param.q
    if P1.degree("t") == 0 or P2.degree("t") == 0:
        return P1 if P2.degree("t") > 0 else P2  # one coordinate is constant
    return principal_subresultant(P1, P2, "t", 0)


@heavy
@given(proper_params())
def test_round_trip_and_tau_into_surface(param):
    td = tubularize(param)
    assert td.m * td.d * td.d == td.r_tilde * td.q_tilde
    assert gcd_uni(td.r_tilde, td.q_tilde).degree() == 0
    assert round_trip_ok(td)
    curve = implicit_p2(param)
    assert validate_param(curve, param)
    fhat = curve.subs({"s": Y * Y + Z * Z})
    assert tau_maps_into(td, fhat)


square_free = st.lists(st.integers(-5, 5), min_size=2, max_size=7).map(
    lambda cs: Poly.from_dense([Fraction(c) for c in cs], "t"))


@heavy
@given(square_free)
def test_count_components_vs_sampling(m):
    assume(m.degree() >= 1 and gcd_uni(m, m.diff("t")).degree() == 0)
    td = tubularize(CurveParam(T, m, 1))
    roots, intervals = sampling_oracle(m)
    assert count_components(td) == intervals
    assert td.real_roots == roots


# -- sections and rotations -----------------------------------------------------------

def test_complex_section_examples():
    sec = complex_section(T, 1)
    assert sec[0] == RatFunc(T) and sec[1] == RatFunc(1) and sec[2] == RatFunc(0)
    sec = complex_section(T, T * T)
    assert sec[1] == RatFunc((T * T + 1) * Fraction(1, 2))
    assert sec[1] * sec[1] + sec[2] * sec[2] == RatFunc(T * T)
    psi = tpoly("t^4+4*t^3+6*t^2+4*t+5")
    sec = complex_section(T, psi)
    assert sec[1] * sec[1] + sec[2] * sec[2] == RatFunc(psi)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_complex_section_identity(cs):
    psi = Poly.from_dense([Fraction(c) for c in cs], "t")
    _, a, b = complex_section(T, psi)
    assert a * a + b * b == RatFunc(psi)


def _on(f: Poly, sp) -> bool:
    return compose(f, dict(zip(("x", "y", "z"), sp.components))).num.is_zero()


def test_rotate_profile_param_examples():
    cyl = rotate_profile_param(T, 1)
    assert cyl.components[1] == RatFunc(2 * S, 1 + S * S)
    assert cyl.components[2] == RatFunc(1 - S * S, 1 + S * S)
    assert _on(poly("y^2 + z^2 - 1"), cyl)
    cone = rotate_profile_param(T, T)
    assert cone.construction == "profile-rotation" and _on(poly("y^2 + z^2 - x^2"), cone)
    sphere = rotate_profile_param(RatFunc(2 * T, 1 + T * T), RatFunc(1 - T * T, 1 + T * T))
    assert _on(poly("x^2 + y^2 + z^2 - 1"), sphere)


def test_rotate_section_examples():
    tube = poly("y^2 + z^2 - t^4 - 4*t^3 - 6*t^2 - 4*t - 5").rename({"t": "x"})
    sec = (T, tpoly(EX2_SOS[0]), tpoly(EX2_SOS[1]))
    sp = rotate_section(sec, tube)
    den = poly(EX2_FINAL_DEN)
    assert sp.components[0] == RatFunc(T)
    assert sp.components[1] == RatFunc(poly(EX2_FINAL[1]), den)
    assert sp.components[2] == RatFunc(poly(EX2_FINAL[2]), den)
    cyl = rotate_section((T, 1, 0), poly("y^2 + z^2 - 1"))
    assert _on(poly("y^2 + z^2 - 1"), cyl)
    with pytest.raises(SectionNotOnSurface):
        rotate_section((T, 0, 0), poly("y^2 + z^2 - 1"))
    on_axis = rotate_section((T, 0, 0), poly("y^2 + z^2"))
    assert on_axis.components[1] == RatFunc(0)


# -- full parametrization ------------------------------------------------------------

def test_parametrize_ex2_real():
    td = tubularize(ex2_param())
    local, world = parametrize_surface(poly(FHAT_EX1), td, sos=tuple(tpoly(c) for c in EX2_SOS))
    assert world is None and local.verified
    den = poly(EX2_FINAL_DEN)
    want = (RatFunc(tpoly(EX2_FINAL[0])), RatFunc(poly(EX2_FINAL[1]), den), RatFunc(poly(EX2_FINAL[2]), den))
    assert local.components == want
    assert _on(poly(FHAT_EX1), local)


def test_parametrize_ex2_gaussian():
    td = tubularize(ex2_param())
    local, _ = parametrize_surface(poly(FHAT_EX1), td)
    assert local.verified and _on(poly(FHAT_EX1), local)
    assert any(not c.num.is_rational() for c in local.components)


def test_parametrize_cone():
    td = tubularize(CurveParam(T, T * T, 1))
    local, _ = parametrize_surface(poly("y^2 + z^2 - x^2"), td, sos=(Poly.const(1), Poly.zero()))
    assert local.verified
    assert local.components[0] == RatFunc(T)


def test_parametrize_sos_mismatch():
    td = tubularize(ex2_param())
    with pytest.raises(SOSMismatch):
        parametrize_surface(poly(FHAT_EX1), td, sos=(Poly.const(1), Poly.const(1)))


def test_parametrize_world_ex1():
    from revolution.recognition import Axis, axis_isometry, transform_to_axis
    from support import F_EX1

    axis = Axis((Fraction(3, 5), Fraction(-4, 5), Fraction(0)), (Fraction(4), Fraction(3), Fraction(0)))
    f = poly(F_EX1)
    fhat = transform_to_axis(f, axis)
    td = tubularize(ex2_param())
    local, world = parametrize_surface(fhat, td, sos=tuple(tpoly(c) for c in EX2_SOS),
                                       isometry=axis_isometry(axis), f=f)
    assert local.verified and world.verified


@settings(max_examples=40, deadline=None, suppress_health_check=list(HealthCheck))
@given(proper_params())
def test_verified_params_satisfy_surface(param):
    td = tubularize(param)
    fhat = implicit_p2(param).subs({"s": Y * Y + Z * Z})
    local, _ = parametrize_surface(fhat, td)
    assert local.verified
    assert compose(fhat, dict(zip("xyz", local.components))).num.is_zero()


# -- classification ------------------------------------------------------------------

def test_classify_examples():
    assert classify(Evidence(p2_param=True, components=1)).verdict == RATIONAL
    assert classify(Evidence(p2_param=True, components=2)).verdict == UNIRATIONAL
    assert classify(Evidence(genus_p2=1)).verdict == NON_RATIONAL
    assert classify(Evidence(profile_reducible=True, p2_param=True)).verdict == RATIONAL
    assert classify(Evidence(profile_reducible=True, genus_p2=2)).verdict == NON_RATIONAL
    with pytest.raises(ContradictionError):
        classify(Evidence(p2_param=True, genus_p2=1))


def test_classify_needs_evidence():
    c = classify(Evidence())
    assert c.verdict == NEEDS_EVIDENCE and c.missing
    c = classify(Evidence(p2_param=True))
    assert c.verdict == NEEDS_EVIDENCE and c.complex_rational
    c = classify(Evidence(p2_param=True, components=0))
    assert c.verdict == NEEDS_EVIDENCE
    c = classify(Evidence(genus_p2=0))
    assert c.verdict == NEEDS_EVIDENCE and "P2 parametrization" in c.missing


def test_reduce_mod_tube():
    m = poly("x^2 + 1")
    assert reduce_mod_tube((Y * Y + Z * Z - m) * (X + Y), m).is_zero()
    assert not reduce_mod_tube(Y, m).is_zero()
