"""Command-line interface.

Exit codes: 0 on success, 2 for a valid run with a negative answer
(``detect`` finds no axis, ``verify`` rejects the axis), 1 for usage,
parse and validation errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..algebra.poly import Poly
from ..algebra.scalar import parse_scalar
from ..rationality import (
    CurveParam,
    Evidence,
    RationalityError,
    builtin_p2_param,
    classify,
    count_components,
    parametrize_surface,
    profile_split,
    profile_to_p2,
    tubularize,
    validate_param,
)
from ..recognition import (
    Axis,
    NotRevolutionAboutAxis,
    ProfileCurve,
    RecognitionError,
    axis_isometry,
    check_axis,
    detect,
    is_sor_xaxis,
    transform_to_axis,
)
from . import report as R
from .text import ParseError, format_poly, parse_poly, parse_poly_list


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--poly", help="surface polynomial f(x, y, z)")
    src.add_argument("--file", help="UTF-8 file holding the polynomial")
    common.add_argument("--seed", type=int, default=0, help="lattice-walk seed (default 0)")
    common.add_argument("--max-samples", type=int, default=64, help="normal budget (default 64)")
    common.add_argument("--json", action="store_true", help="print the JSON report")

    parser = argparse.ArgumentParser(prog="revolution", description="Surfaces of revolution: axis detection and rational parametrization.")
    sub = parser.add_subparsers(dest="command", required=True)
    d = sub.add_parser("detect", parents=[common], help="find the axis of rotation")
    d.add_argument("--points", help='forced sample points "x,y,z;x,y,z;..."')
    sub.add_parser("profile", parents=[common], help="profile curve and P2 curve about the axis")
    for name, helptext in (("tubularize", "tubular surface birational to the SOR"),
                           ("parametrize", "rational parametrization through the tubular surface"),
                           ("classify", "rationality verdict")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--param", help='P2 parametrization "p(t),r(t),q(t)"')
        if name == "parametrize":
            p.add_argument("--sos", help='real section "a(t),b(t)" with a^2 + b^2 = m')
        if name == "classify":
            p.add_argument("--genus-p2", type=int, help="genus of P2, supplied by the caller")
    v = sub.add_parser("verify", parents=[common], help="check a given axis")
    v.add_argument("--axis", required=True, help='"px,py,pz,vx,vy,vz"')
    return parser


def _read_poly(args) -> Poly:
    if args.poly is not None:
        text = args.poly
    elif args.file is not None:
        text = Path(args.file).read_text(encoding="utf-8")
    else:
        raise UsageError("one of --poly or --file is required")
    return parse_poly(text.strip(), ("x", "y", "z"))


def _scalars(text: str, count: int, sep: str = ",") -> list:
    parts = [p.strip() for p in text.split(sep)]
    if len(parts) != count:
        raise UsageError(f"expected {count} values, got {len(parts)}")
    return [parse_scalar(p) for p in parts]


def _param(text: str) -> CurveParam:
    p, r, q = parse_poly_list(text, 3, ("t",))
    return CurveParam(p, r, q)


# -- pipeline helpers -------------------------------------------------------------

class _Located:
    """The surface brought to the x-axis: ``fhat`` and the isometry back, if any."""

    def __init__(self, f: Poly, rep: R.Report, args):
        self.f = f
        self.iso = None
        try:
            self.p = is_sor_xaxis(f)
            self.fhat = f
            self.axis = Axis((0, 0, 0), (1, 0, 0))
            rep.diagnostics["axis_source"] = "x-axis"
        except RecognitionError:
            ar = detect(f, seed=args.seed, max_samples=args.max_samples)
            rep.diagnostics.update(R.detection_diagnostics(ar))
            if ar.axis is None:
                raise NotRevolutionAboutAxis(ar.reason or "no axis")
            self.axis = ar.axis
            self.iso = axis_isometry(ar.axis)
            fhat = transform_to_axis(f, ar.axis)
            if not fhat.is_rational():
                raise UsageError("the orthonormal frame of this axis is irrational; "
                                 "supply the surface already rotated to the x-axis")
            self.fhat = fhat
            self.p = is_sor_xaxis(fhat)
            rep.diagnostics["axis_source"] = "detect"
        rep.axis = R.axis_record(self.axis)
        rep.profile = R.profile_record(ProfileCurve(self.p))
        rep.p2 = {"q": format_poly(profile_to_p2(self.p).q), "variables": ["x", "s"]}
        if self.iso is not None:
            rep.diagnostics["fhat"] = format_poly(self.fhat)
            rep.diagnostics["isometry"] = R.isometry_record(self.iso)


def _curve_param(args, loc: _Located, rep: R.Report, required: bool = True) -> CurveParam | None:
    curve = profile_to_p2(loc.p)
    if getattr(args, "param", None):
        param = _param(args.param)
        rep.diagnostics["param_source"] = "user"
    else:
        param = builtin_p2_param(curve)
        rep.diagnostics["param_source"] = "builtin s-linear" if param else None
        if param is None:
            if required:
                raise UsageError("P2 is not linear in s; supply --param")
            return None
    if not validate_param(curve, param):
        raise UsageError("the parametrization does not lie on P2")
    return param


# -- subcommands -----------------------------------------------------------------

def cmd_detect(args, rep: R.Report) -> int:
    f = _read_poly(args)
    points = None
    if args.points:
        points = [tuple(_scalars(chunk, 3)) for chunk in args.points.split(";") if chunk.strip()]
    ar = detect(f, seed=args.seed, max_samples=args.max_samples, points=points)
    rep.verdict = ar.verdict
    rep.axis = R.axis_record(ar.axis)
    rep.profile = R.profile_record(ar.profile)
    rep.diagnostics.update(R.detection_diagnostics(ar))
    return 0 if ar.verdict != "NotSOR" else 2


def cmd_profile(args, rep: R.Report) -> int:
    loc = _Located(_read_poly(args), rep, args)
    rep.verdict = "SOR"
    split = profile_split(loc.p)
    rep.diagnostics["profile_split"] = None if split is None else {
        "g": format_poly(split.g), "unit": R.scalar(split.unit)}
    return 0


def cmd_tubularize(args, rep: R.Report) -> int:
    if args.poly is None and args.file is None:
        if not args.param:
            raise UsageError("tubularize needs --param or a surface")
        param = _param(args.param)
    else:
        loc = _Located(_read_poly(args), rep, args)
        param = _curve_param(args, loc, rep)
    td = tubularize(param)
    rep.verdict = "Tubularized"
    rep.tubular = R.tubular_record(td)
    rep.diagnostics["components"] = count_components(td)
    return 0


def cmd_parametrize(args, rep: R.Report) -> int:
    loc = _Located(_read_poly(args), rep, args)
    param = _curve_param(args, loc, rep)
    td = tubularize(param)
    rep.tubular = R.tubular_record(td)
    sos = parse_poly_list(args.sos, 2, ("t",)) if args.sos else None
    local, world = parametrize_surface(loc.fhat, td, sos=sos, isometry=loc.iso,
                                       f=loc.f if loc.iso is not None else None)
    rep.verdict = "Parametrized"
    rep.parametrization = R.param_record(world or local)
    if world is not None:
        rep.diagnostics["axis_parametrization"] = R.param_record(local)
    rep.diagnostics["section"] = "real" if sos else "gaussian"
    return 0


def cmd_classify(args, rep: R.Report) -> int:
    loc = _Located(_read_poly(args), rep, args)
    ev = Evidence(profile_reducible=profile_split(loc.p) is not None)
    if args.genus_p2 is not None:
        ev.genus_p2 = args.genus_p2
        ev.genus_source = "caller"
    param = _curve_param(args, loc, rep, required=False)
    if param is not None:
        ev.p2_param = True
        try:
            td = tubularize(param)
        except RationalityError as exc:
            rep.diagnostics["tubularize"] = str(exc)
        else:
            ev.components = count_components(td)
            rep.tubular = R.tubular_record(td)
    result = classify(ev)
    rep.verdict = result.verdict
    rep.classification = R.classification_record(result)
    return 0


def cmd_verify(args, rep: R.Report) -> int:
    f = _read_poly(args)
    vals = _scalars(args.axis, 6)
    axis = Axis(tuple(vals[:3]), tuple(vals[3:]))
    rep.axis = R.axis_record(axis)
    try:
        profile = check_axis(f, axis)
    except NotRevolutionAboutAxis as exc:
        rep.verdict = "NotSOR"
        rep.diagnostics["reason"] = str(exc)
        return 2
    rep.verdict = "SOR"
    rep.profile = R.profile_record(profile)
    return 0


COMMANDS = {
    "detect": cmd_detect,
    "profile": cmd_profile,
    "tubularize": cmd_tubularize,
    "parametrize": cmd_parametrize,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def _summary(rep: R.Report) -> str:
    lines = [f"verdict: {rep.verdict}"]
    if rep.axis:
        lines.append(f"axis: point ({_plain(rep.axis['point'])}), direction ({_plain(rep.axis['direction'])})")
        lines.append(f"plucker: ({_plain(rep.axis['plucker']).replace(', ', ' : ')})")
    if rep.profile:
        lines.append(f"profile: {rep.profile['p']} = 0")
    if rep.tubular:
        lines.append(f"tubular: {rep.tubular['equation']} = 0")
        lines.append("tau: (" + ", ".join(rep.tubular["tau"]) + ")")
    if rep.parametrization:
        lines.append("parametrization:")
        lines.extend(f"  {c}" for c in rep.parametrization["components"])
    if rep.classification:
        lines.append(f"classification: {rep.classification['verdict']}")
    if rep.diagnostics.get("error"):
        lines.append(f"error: {rep.diagnostics['error']}")
    elif rep.diagnostics.get("reason"):
        lines.append(f"reason: {rep.diagnostics['reason']}")
    return "\n".join(lines)


_VALUE_OPTIONS = {"--poly", "--file", "--param", "--sos", "--axis", "--points"}


def _attach_values(argv: list[str]) -> list[str]:
    """Glue ``--param -t^3+t,...`` into ``--param=-t^3+t,...`` so argparse keeps leading minus signs."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def _plain(values) -> str:
    return ", ".join(v[:-2] if v.endswith("/1") else v for v in values)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    argv = _attach_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    rep = R.Report(args.command)
    try:
        code = COMMANDS[args.command](args, rep)
    except (UsageError, ParseError, ValueError, ZeroDivisionError,
            RecognitionError, RationalityError, OSError) as exc:
        rep.verdict = rep.verdict or "Error"
        rep.diagnostics["error"] = f"{type(exc).__name__}: {exc}"
        code = 1
    print(rep.to_json() if args.json else _summary(rep), file=out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
