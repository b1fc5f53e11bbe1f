"""JSON result records (schema v1).

Every exact number is written as a ``"num/den"`` string, polynomials and
rational functions as strings in the parser grammar, and Plücker lines as
six such strings.  Elements of a quadratic tower become
``{"radicands": [...], "coords": ["num/den", ...]}``.  Only integers
(counts, seeds, dimensions) appear as bare JSON numbers.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..algebra.poly import RatFunc
from ..algebra.scalar import TowerElem, format_scalar
from ..lines import PluckerLine
from ..recognition import Axis, AxisReport, Isometry, ProfileCurve
from .text import format_poly, format_ratfunc

SCHEMA = "revolution.report/v1"
SCALAR_RE = re.compile(r"^-?\d+/[1-9]\d*$")


def scalar(value) -> Any:
    if isinstance(value, TowerElem):
        if value.is_rational():
            return format_scalar(value.rational_part())
        return {"radicands": [format_scalar(Fraction(d)) for d in value.tower.radicands],
                "coords": [format_scalar(c) for c in value.coords]}
    return format_scalar(Fraction(value))


def vector(values) -> list:
    return [scalar(v) for v in values]


def poly_text(p) -> str:
    if isinstance(p, RatFunc):
        return format_ratfunc(p)
    return format_poly(p)


def line_record(line: PluckerLine) -> list[str]:
    return vector(line.canonical())


def axis_record(axis: Axis | None) -> dict | None:
    if axis is None:
        return None
    return {
        "point": vector(axis.point),
        "direction": vector(axis.direction),
        "plucker": line_record(axis.plucker),
    }


def profile_record(profile: ProfileCurve | None) -> dict | None:
    if profile is None:
        return None
    rec = {"p": format_poly(profile.p), "variables": ["x", "s"], "s": "y^2 + z^2"}
    if profile.frame is not None:
        fr = profile.frame
        rec["frame"] = {
            "base": vector(fr.base),
            "axial": vector(fr.axial),
            "radial": vector(fr.radial),
            "binormal": vector(fr.binormal),
            "axial_sq": scalar(fr.axial_sq),
            "radial_sq": scalar(fr.radial_sq),
        }
        rec["s"] = "(squared distance to the axis) / radial_sq"
    return rec


def isometry_record(iso: Isometry | None) -> dict | None:
    if iso is None:
        return None
    return {
        "base": vector(iso.base),
        "e1": vector(iso.e1),
        "e2": vector(iso.e2),
        "e3": vector(iso.e3),
        "radicands": [format_scalar(Fraction(d)) for d in iso.tower.radicands] if iso.tower else [],
    }


def tubular_record(td) -> dict | None:
    if td is None:
        return None
    return {
        "m": format_poly(td.m),
        "d": format_poly(td.d),
        "r_tilde": format_poly(td.r_tilde),
        "q_tilde": format_poly(td.q_tilde),
        "equation": format_poly(td.equation),
        "tau": [poly_text(c) for c in td.tau],
        "tau_inverse": [poly_text(c) for c in td.tau_inverse],
        "inverse": poly_text(td.inverse),
        "real_roots": td.real_roots,
        "positive_intervals": td.positive_intervals,
    }


def param_record(sp) -> dict | None:
    if sp is None:
        return None
    return {
        "components": [poly_text(c) for c in sp.components],
        "variables": ["s", "t"],
        "construction": sp.construction,
        "verified": sp.verified,
    }


def classification_record(c) -> dict | None:
    if c is None:
        return None
    ev = c.evidence
    return {
        "verdict": c.verdict,
        "complex_rational": c.complex_rational,
        "missing": list(c.missing),
        "note": c.note,
        "evidence": {
            "profile_reducible": ev.profile_reducible,
            "p2_param": ev.p2_param,
            "components": ev.components,
            "genus_p2": ev.genus_p2,
            "genus_source": ev.genus_source,
        },
    }


@dataclass
class Report:
    command: str
    verdict: str | None = None
    axis: dict | None = None
    profile: dict | None = None
    p2: dict | None = None
    tubular: dict | None = None
    parametrization: dict | None = None
    classification: dict | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "verdict": self.verdict,
            "axis": self.axis,
            "profile": self.profile,
            "p2": self.p2,
            "tubular": self.tubular,
            "parametrization": self.parametrization,
            "classification": self.classification,
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False)


def detection_diagnostics(rep: AxisReport) -> dict:
    return {
        "dimension": rep.dimension,
        "samples": rep.samples,
        "seed": rep.seed,
        "stage": rep.stage,
        "reason": rep.reason,
        "normals": [line_record(n) for n in rep.normals],
        "basis": [vector(b) for b in rep.basis],
        "candidates": [line_record(c) for c in rep.candidates],
    }


def iter_scalars(obj):
    """Every string leaf stored under a numeric key (used by the schema checks)."""
    numeric = {"point", "direction", "plucker", "base", "axial", "radial", "binormal",
               "axial_sq", "radial_sq", "e1", "e2", "e3", "coords", "normals", "basis",
               "candidates", "radicands"}

    def walk(o, numeric_ctx):
        if isinstance(o, dict):
            for k, v in o.items():
                yield from walk(v, numeric_ctx or k in numeric)
        elif isinstance(o, list):
            for v in o:
                yield from walk(v, numeric_ctx)
        elif numeric_ctx and isinstance(o, str):
            yield o

    yield from walk(obj, False)
