"""Recognition of surfaces of revolution from an implicit equation.

Normals are sampled at lattice points anywhere in space: each point lies on
exactly one level set ``f = alpha``, and every level set of a surface of
revolution shares its axis, so no root finding is needed.  The axis is the
affine line meeting all sampled normals; it is then confirmed exactly,
without radicals, by rewriting ``f`` in a rational orthogonal frame
attached to the axis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.poly import Poly, affine_substitute, gradient
from .algebra.scalar import Tower, rational_sqrt_split
from .lines import (
    AxisCandidates,
    PluckerLine,
    candidate_axes,
    cross,
    dot,
    nullspace,
    pairing_row,
    primitive_vector,
)

X, Y, Z = Poly.var("x"), Poly.var("y"), Poly.var("z")


class RecognitionError(Exception):
    pass


class FewerThanFiveIndependent(RecognitionError):
    """The sampled normals never reached five independent pairing rows."""


class NotRevolutionAboutAxis(RecognitionError):
    """The surface is not rotationally symmetric about the tested axis."""


class ReconstructionMismatch(NotRevolutionAboutAxis):
    """``f`` differs from the profile swept around the axis."""


class OddRadialPowers(ReconstructionMismatch):
    """The meridian section is not even in the radial coordinate."""


@dataclass(frozen=True)
class ImplicitSurface:
    f: Poly

    def __post_init__(self):
        f = self.f
        extra = [v for v in f.used_vars() if v not in ("x", "y", "z")]
        if extra:
            raise ValueError(f"surface equation uses variables outside x, y, z: {extra}")
        if f.is_constant():
            raise ValueError("surface equation is constant")
        object.__setattr__(self, "f", f.with_vars(("x", "y", "z")))

    @property
    def degree(self) -> int:
        return self.f.degree()

    @property
    def support(self) -> tuple[str, ...]:
        return self.f.used_vars()


def _surface(f) -> ImplicitSurface:
    return f if isinstance(f, ImplicitSurface) else ImplicitSurface(f)


@dataclass(frozen=True)
class Axis:
    point: tuple[Fraction, Fraction, Fraction]
    direction: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        p = tuple(Fraction(c) for c in self.point)
        v = tuple(Fraction(c) for c in self.direction)
        if all(c == 0 for c in v):
            raise ValueError("axis direction is zero")
        object.__setattr__(self, "point", p)
        object.__setattr__(self, "direction", v)

    @classmethod
    def from_plucker(cls, line: PluckerLine) -> "Axis":
        return cls(line.point(), primitive_vector(line.direction))

    @property
    def plucker(self) -> PluckerLine:
        return PluckerLine.from_point_dir(self.point, self.direction)


@dataclass(frozen=True)
class Frame:
    """Rational orthogonal frame ``(v, w, u = v x w)`` based on the axis."""

    base: tuple
    axial: tuple
    radial: tuple
    binormal: tuple

    @property
    def axial_sq(self) -> Fraction:
        return dot(self.axial, self.axial)

    @property
    def radial_sq(self) -> Fraction:
        return dot(self.radial, self.radial)

    def point(self, a, b, c):
        """``base + a*v + b*w + c*u`` componentwise (works for polynomials too)."""
        return tuple(
            self.base[i] + a * self.axial[i] + b * self.radial[i] + c * self.binormal[i]
            for i in range(3)
        )


@dataclass(frozen=True)
class ProfileCurve:
    """Profile ``p(x, s)`` where ``s`` stands for the squared radial coordinate.

    In frame coordinates the surface is ``p(a, b**2 + |v|**2 * c**2)`` with
    ``x = a`` measured in units of ``|v|`` along the axis from the base point
    and ``s`` in units of ``|w|**2``.  ``frame`` is None when the profile was
    read off directly about the x-axis (unit scales).
    """

    p: Poly
    frame: Frame | None = None

    @property
    def axial_scale_sq(self) -> Fraction:
        return self.frame.axial_sq if self.frame else Fraction(1)

    @property
    def radial_scale_sq(self) -> Fraction:
        return self.frame.radial_sq if self.frame else Fraction(1)


@dataclass
class AxisReport:
    verdict: str  # "SOR", "MultiAxis" or "NotSOR"
    axis: Axis | None = None
    profile: ProfileCurve | None = None
    reason: str = ""
    stage: str = ""
    dimension: int | None = None
    basis: tuple = ()
    normals: list = field(default_factory=list)
    samples: int = 0
    seed: int = 0
    candidates: tuple = ()


# -- sampling ----------------------------------------------------------------

def lattice_walk(seed: int, radius: int = 6) -> Iterable[tuple[int, int, int]]:
    """Reproducible stream of distinct small-integer points for ``seed``."""
    rng = random.Random(seed)
    seen = set()
    while True:
        p = tuple(rng.randint(-radius, radius) for _ in range(3))
        if p in seen:
            if len(seen) >= (2 * radius + 1) ** 3:
                radius += 1
            continue
        seen.add(p)
        yield p


def normal_at(grad, point) -> PluckerLine | None:
    env = dict(zip(("x", "y", "z"), (Fraction(c) for c in point)))
    n = tuple(Fraction(g.evaluate(env)) for g in grad)
    if all(c == 0 for c in n):
        return None
    return PluckerLine(n + cross(tuple(Fraction(c) for c in point), n))


class _RankTracker:
    """Incremental row echelon form over Q."""

    def __init__(self):
        self.rows: list[tuple[int, list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, row) -> bool:
        r = [Fraction(c) for c in row]
        for piv, prow in self.rows:
            if r[piv] != 0:
                f = r[piv] / prow[piv]
                r = [a - f * b for a, b in zip(r, prow)]
        piv = next((i for i, c in enumerate(r) if c != 0), None)
        if piv is None:
            return False
        self.rows.append((piv, r))
        return True


def sample_normals(f, seed: int = 0, max_samples: int = 64, points: Sequence | None = None,
                   patience: int = 5) -> list[PluckerLine]:
    """Collect surface normals whose pairing rows reach a stable rank.

    With ``points`` given, exactly those points are used (gradient-zero
    points are skipped).  Otherwise lattice points are drawn from a seeded
    walk; only normals that raise the rank are kept, and sampling stops when
    the rank reaches 6 or has not changed over ``patience`` consecutive
    nonsingular samples.
    """
    if max_samples < 5:
        raise ValueError("max_samples must be at least 5")
    surf = _surface(f)
    grad = gradient(surf.f)
    if points is not None:
        return [n for n in (normal_at(grad, p) for p in points) if n is not None]
    tracker = _RankTracker()
    kept: list[PluckerLine] = []
    stale = 0
    tried = 0
    for p in lattice_walk(seed):
        if tried >= max_samples:
            break
        tried += 1
        n = normal_at(grad, p)
        if n is None:
            continue
        if tracker.add(pairing_row(n)):
            kept.append(n)
            stale = 0
            if tracker.rank == 6:
                return kept
        else:
            stale += 1
            if stale >= patience:
                return kept
    if tracker.rank < 5:
        raise FewerThanFiveIndependent(
            f"only {tracker.rank} independent normals among {tried} samples"
        )
    return kept


def solve_axis(normals: Sequence[PluckerLine]) -> AxisCandidates:
    """Lines meeting every normal, via the exact nullspace of the pairing rows."""
    space = nullspace([pairing_row(n) for n in normals])
    return candidate_axes(space)


# -- verification --------------------------------------------------------------

def lie_test(f, axis: Axis) -> bool:
    """Infinitesimal rotation test: ``grad f . (v x (X - b)) == 0`` identically."""
    surf = _surface(f)
    grad = gradient(surf.f)
    v = axis.direction
    rel = (X - axis.point[0], Y - axis.point[1], Z - axis.point[2])
    field_ = cross(v, rel)
    total = Poly.zero()
    for g, c in zip(grad, field_):
        total = total + g * c
    return total.is_zero()


def make_frame(axis: Axis) -> Frame:
    v = axis.direction
    for k in range(3):
        e = tuple(Fraction(int(i == k)) for i in range(3))
        w = cross(v, e)
        if any(c != 0 for c in w):
            return Frame(axis.point, v, w, cross(v, w))
    raise ValueError("zero axis direction")  # unreachable for a valid Axis


def verify_sor_frame(f, frame: Frame) -> ProfileCurve:
    """Confirm rotational symmetry about the frame's axis and return the profile.

    With ``g(a, b, c) = f(base + a*v + b*w + c*u)`` the squared distance to
    the axis is ``|w|^2 * (b^2 + |v|^2 c^2)``, so ``f`` is a surface of
    revolution about the axis iff ``g = q(a, b^2 + |v|^2 c^2)`` where
    ``q(a, s)`` is read off from ``g(a, b, 0)``.

    Raises :class:`OddRadialPowers` or :class:`ReconstructionMismatch`.
    """
    surf = _surface(f)
    A, B, C = Poly.var("α"), Poly.var("β"), Poly.var("γ")
    g = affine_substitute(surf.f, frame.point(A, B, C))
    q = _even_part_to_square(g.subs({"γ": 0}), "β", "σ")
    sigma = B * B + C * C * frame.axial_sq
    if q.subs({"σ": sigma}) != g:
        raise ReconstructionMismatch("f is not a function of the axial coordinate and radius")
    return ProfileCurve(q.rename({"α": "x", "σ": "s"}), frame)


def _even_part_to_square(p: Poly, var: str, new: str) -> Poly:
    """Replace ``var**2`` by ``new``; raise if ``var`` occurs to an odd power."""
    coeffs = p.coeffs_in(var)
    if any(k % 2 for k in coeffs):
        raise OddRadialPowers(f"{var} occurs to an odd power in the meridian section")
    S = Poly.var(new)
    out = Poly.zero()
    for k, c in coeffs.items():
        out = out + c * S ** (k // 2)
    return out


def is_sor_xaxis(f) -> Poly:
    """Profile ``p(x, s)`` with ``f = p(x, y^2 + z^2)``, or raise."""
    surf = _surface(f)
    p = _even_part_to_square(surf.f.subs({"z": 0}), "y", "s")
    if p.subs({"s": Y * Y + Z * Z}) != surf.f:
        raise ReconstructionMismatch("f(x, y, z) != p(x, y^2 + z^2)")
    return p


@dataclass(frozen=True)
class Isometry:
    """Orthonormal frame ``(e1, e2, e3)`` at ``base``; entries may lie in a quadratic tower.

    ``to_world(X, Y, Z) = base + X*e1 + Y*e2 + Z*e3`` maps axis coordinates
    (axis = x-axis) back to the original space.
    """

    base: tuple
    e1: tuple
    e2: tuple
    e3: tuple
    tower: Tower | None = None

    def to_world(self, a, b, c):
        return tuple(
            self.base[i] + a * self.e1[i] + b * self.e2[i] + c * self.e3[i] for i in range(3)
        )

    def to_axis(self, point):
        rel = tuple(point[i] - self.base[i] for i in range(3))
        return tuple(sum((r * e for r, e in zip(rel, ei)), Fraction(0)) for ei in (self.e1, self.e2, self.e3))


def axis_isometry(axis: Axis) -> Isometry:
    """Orthonormalise the rational frame of ``axis``, adjoining square roots when needed."""
    frame = make_frame(axis)
    nv, kv = rational_sqrt_split(frame.axial_sq)
    nw, kw = rational_sqrt_split(frame.radial_sq)
    radicands = []
    for k in (kv, kw):
        if k != 1 and k not in radicands:
            radicands.append(k)
    tower = Tower(radicands) if radicands else None

    def root(a):
        return tower.sqrt(a) if tower else rational_sqrt_split(a)[0]

    lv = root(frame.axial_sq)
    lw = root(frame.radial_sq)
    e1 = tuple(_inv_scale(c, lv) for c in frame.axial)
    e2 = tuple(_inv_scale(c, lw) for c in frame.radial)
    e3 = tuple(_inv_scale(c, lv * lw) for c in frame.binormal)
    return Isometry(frame.base, e1, e2, e3, tower)


def _inv_scale(c, length):
    if isinstance(length, Fraction):
        return c / length
    return length.inverse() * c


def transform_to_axis(f, axis: Axis) -> Poly:
    """``f`` rewritten in orthonormal coordinates whose x-axis is ``axis``.

    Coefficients stay in Q when the frame lengths are rational; otherwise
    they live in the quadratic tower and collapse back to Q exactly when
    every irrational part cancels.
    """
    surf = _surface(f)
    iso = axis_isometry(axis)
    return affine_substitute(surf.f, iso.to_world(X, Y, Z)).with_vars(("x", "y", "z"))


# -- orchestration -------------------------------------------------------------

def check_axis(f, axis: Axis) -> ProfileCurve:
    """Lie test followed by the frame reconstruction; raises on failure."""
    if not lie_test(f, axis):
        raise ReconstructionMismatch("infinitesimal rotation does not preserve f")
    return verify_sor_frame(f, make_frame(axis))


def detect(f, seed: int = 0, max_samples: int = 64, points: Sequence | None = None) -> AxisReport:
    """Decide whether ``f = 0`` is a surface of revolution and find its axis."""
    surf = _surface(f)
    report = AxisReport("NotSOR", seed=seed)
    try:
        normals = sample_normals(surf, seed=seed, max_samples=max_samples, points=points)
    except FewerThanFiveIndependent as exc:
        report.reason, report.stage = str(exc), "sampling"
        return report
    report.normals = normals
    report.samples = len(normals)
    cands = solve_axis(normals)
    report.dimension = cands.dimension
    report.basis = cands.basis
    report.candidates = cands.lines
    if not cands.lines:
        report.reason = cands.note or "no axis candidate"
        report.stage = "axis"
        return report
    failures = []
    for line in cands.lines:
        axis = Axis.from_plucker(line)
        try:
            profile = check_axis(surf, axis)
        except NotRevolutionAboutAxis as exc:
            failures.append(str(exc))
            continue
        report.verdict = "MultiAxis" if cands.family else "SOR"
        report.axis = axis
        report.profile = profile
        return report
    report.reason = "; ".join(dict.fromkeys(failures))
    report.stage = "verification"
    return report
