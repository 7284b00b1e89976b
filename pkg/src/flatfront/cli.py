"""Command line tool for flat-front analysis.

Subcommands: classify, flux, mesh, slice, caustic, cycloid, verify.
Exit codes: 0 success, 1 configuration error, 2 numeric failure,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import bundled
from .acceptance import run_all
from .caustic import CausticError, caustic_end_pitch, caustic_forms
from .cycloid import (closed_form, cycloid_curve, cycloid_descriptor,
                      fit_similarity, solve_arc)
from .ends import EndError, classify_end
from .exprs import Expression, ExprError, INFINITY
from .flux import (FluxError, balancing_defect, flux_contour, flux_spectral,
                   integrand_numeric)
from .front import LiftError, canonical_data, sample_surface
from .output import (curve_csv, curve_svg, dump_json, mesh_obj,
                     report_document, slice_csv, to_jsonable)
from .series import SeriesError
from .slices import SliceError, estimate_pitch, slice_ladder

CONFIG_ERRORS = (ExprError, KeyError, ValueError, json.JSONDecodeError)
NUMERIC_ERRORS = (SeriesError, LiftError, EndError, FluxError, SliceError,
                  CausticError, ArithmeticError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_point(text: str):
    if text in ("inf", "oo"):
        return INFINITY
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise ExprError(f"cannot parse point {text!r}")


def _load_spec(args) -> bundled.FrontSpec:
    if args.example:
        return bundled.get(args.example)
    if not args.spec:
        raise ExprError("need --example or --spec")
    with open(args.spec, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    has_omega = "omega" in doc
    has_gstar = "Gstar" in doc
    if has_omega == has_gstar:
        raise ExprError("spec needs exactly one of 'omega' or 'Gstar'")
    ends = tuple(_parse_point(str(p)) for p in doc.get("ends", [0]))
    if len(set(map(str, ends))) != len(ends):
        raise ExprError("end points must be distinct")
    delta = complex(str(doc.get("delta", "1")).replace("i", "j"))
    return bundled.FrontSpec(
        name=doc.get("name", "custom"),
        kind="g_omega" if has_omega else "gauss_pair",
        g=doc["G"], partner=doc["omega"] if has_omega else doc["Gstar"],
        delta=delta, ends=ends,
        description=doc.get("description", ""))


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _end_report_dict(point, rep) -> dict:
    return {
        "point": "inf" if point == INFINITY else to_jsonable(complex(point)),
        "m": rep.multiplicity,
        "mu": to_jsonable(rep.mu),
        "mu_star": to_jsonable(rep.mu_star),
        "alpha": to_jsonable(rep.alpha),
        "type": rep.end_type.value,
        "complete": rep.complete,
        "p": to_jsonable(rep.pitch),
        "n": rep.ramification,
        "cuspidal_components": rep.cuspidal_components,
    }


# -- subcommands ----------------------------------------------------------

def cmd_classify(args) -> int:
    spec = _load_spec(args)
    points = [_parse_point(args.point)] if args.point else list(spec.ends)
    data = [_end_report_dict(pt, classify_end(
        spec.lift_at(pt, args.truncation))) for pt in points]
    _emit(dump_json(report_document("classify", data,
                                    {"front": spec.name})), args.out)
    return 0


def cmd_flux(args) -> int:
    spec = _load_spec(args)
    G = Expression(spec.g)
    Gs = Expression(spec.partner)
    if spec.kind != "gauss_pair":
        raise EndError("flux needs a Gauss-map pair description")
    M = integrand_numeric(G, G.derivative(), Gs, Gs.derivative())
    entries = []
    fluxes = []
    for pt in spec.ends:
        if pt == INFINITY:
            continue
        Phi = flux_contour(M, complex(pt), args.radius)
        fluxes.append(Phi)
        rep = flux_spectral(Phi)
        entries.append({
            "point": to_jsonable(complex(pt)),
            "matrix": to_jsonable(Phi),
            "eigenvalues": to_jsonable(list(rep.eigenvalues)),
            "axis": [("inf" if a == INFINITY or a == "inf"
                      else to_jsonable(a)) for a in rep.axis],
        })
    data = {"ends": entries,
            "balancing_defect": balancing_defect(fluxes) if fluxes else 0.0}
    _emit(dump_json(report_document("flux", data, {"front": spec.name})),
          args.out)
    return 0


def cmd_mesh(args) -> int:
    spec = _load_spec(args)
    lift = spec.lift_at(_parse_point(args.point), args.truncation)
    sample = sample_surface(lift, args.rmin, args.rmax,
                            nr=args.nr, nt=args.nt)
    _emit(mesh_obj(sample, model=args.model), args.out)
    return 0


def cmd_slice(args) -> int:
    spec = _load_spec(args)
    lift = spec.lift_at(_parse_point(args.point), args.truncation)
    heights = [float(h) for h in args.heights.split(",")]
    slices = slice_ladder(lift, heights,
                          r_bracket=(args.rmin, args.rmax), n_t=args.nt)
    _emit(slice_csv(slices), args.out)
    est = estimate_pitch(slices)
    report = dump_json(report_document("slice", {
        "heights": list(est.heights),
        "scales": list(est.scales),
        "pitch_estimate": est.slope,
        "stderr": est.stderr,
    }, {"front": spec.name}))
    _emit(report, args.report)
    return 0


def cmd_caustic(args) -> int:
    spec = _load_spec(args)
    pt = _parse_point(args.point)
    lift = spec.lift_at(pt, args.truncation)
    data = canonical_data(lift)
    forms = caustic_forms(data)
    out = {
        "omega_order": to_jsonable(forms.omega.order()),
        "theta_order": to_jsonable(forms.theta.order()),
        "hopf_order": to_jsonable(forms.hopf.order()),
        "double_cover": forms.double_cover,
    }
    G = Expression(spec.g).series_at(pt, args.truncation)
    Gs = Expression(spec.partner).series_at(pt, args.truncation) \
        if spec.kind == "gauss_pair" else lift.gauss_maps()[1]
    kind = args.kind
    rep = None
    if kind == "end":
        rep = classify_end(lift, data)
    ce = caustic_end_pitch(G, Gs, kind,
                           rep.multiplicity if rep else None, rep)
    out["end"] = {"kind": ce.kind, "n": to_jsonable(ce.n),
                  "m": to_jsonable(ce.m), "p": to_jsonable(ce.pitch),
                  "double_cover": ce.double_cover}
    _emit(dump_json(report_document("caustic", out,
                                    {"front": spec.name})), args.out)
    return 0


def cmd_cycloid(args) -> int:
    m, n = args.m, args.n
    desc = cycloid_descriptor(m, n)
    t = np.linspace(0.0, 2.0 * np.pi, args.samples, endpoint=False)
    pts = cycloid_curve(m, n)(t)
    doc = {"descriptor": to_jsonable(desc)}
    status = 0
    if args.ode:
        import math
        p = n / m
        u_of, th_of, r_of = closed_form(p)
        s0, s1 = -0.4 * math.pi / p, 0.4 * math.pi / p
        th, u, r = solve_arc(p, (float(th_of(s0)), float(th_of(s1))),
                             float(u_of(s0)), float(np.log(r_of(s0))))
        s_rec = th + np.arctan(-u)
        curve = r * np.exp(1j * th)
        model = cycloid_curve(m, n)(s_rec / m)
        c, _ = fit_similarity(curve, model)
        resid = float(np.max(np.abs(curve - c * model)))
        doc["ode"] = {"residual": resid, "passed": resid < 1e-6}
        print(("PASS" if resid < 1e-6 else "FAIL")
              + f"  ode residual {resid:.2e}", file=sys.stderr)
        if resid >= 1e-6:
            status = 3
    if args.csv:
        _emit(curve_csv(t, pts), args.csv)
    if args.svg:
        _emit(curve_svg(pts), args.svg)
    _emit(dump_json(report_document("cycloid", doc)), args.out)
    return status


def cmd_verify(args) -> int:
    results = run_all()
    for r in results:
        print(r.line())
    total = sum(r.seconds for r in results)
    npass = sum(r.passed for r in results)
    print(f"{npass}/{len(results)} passed in {total:.1f}s")
    return 0 if npass == len(results) else 3


# -- entry point ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="flatfront",
                 description="flat fronts in hyperbolic 3-space: "
                             "classification, flux, caustics, slices")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, point_default="0"):
        p.add_argument("--example", help="bundled front name "
                       f"({', '.join(bundled.names())})")
        p.add_argument("--spec", help="JSON front description file")
        p.add_argument("--truncation", type=int, default=24)
        p.add_argument("--out", "-o", help="output path (default stdout)")
        p.add_argument("--point", default=point_default,
                       help="marked point ('inf' allowed)")

    p = sub.add_parser("classify", help="end classification reports")
    common(p)
    p.set_defaults(point=None, func=cmd_classify)

    p = sub.add_parser("flux", help="flux matrices and balancing")
    common(p)
    p.add_argument("--radius", type=float, default=0.4)
    p.set_defaults(func=cmd_flux)

    p = sub.add_parser("mesh", help="surface mesh export (OBJ)")
    common(p)
    p.add_argument("--model", choices=("ball", "uhs"), default="ball")
    p.add_argument("--rmin", type=float, default=0.05)
    p.add_argument("--rmax", type=float, default=0.5)
    p.add_argument("--nr", type=int, default=96)
    p.add_argument("--nt", type=int, default=64)
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("slice", help="horosphere slices (CSV + report)")
    common(p)
    p.add_argument("--heights", default="0.1,0.0316227766,0.01")
    p.add_argument("--nt", type=int, default=256)
    p.add_argument("--rmin", type=float, default=1e-8)
    p.add_argument("--rmax", type=float, default=0.6)
    p.add_argument("--report", help="pitch report path (default stdout)")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("caustic", help="caustic data and end pitch")
    common(p)
    p.add_argument("--kind", choices=("end", "umbilic"), default="end")
    p.set_defaults(func=cmd_caustic)

    p = sub.add_parser("cycloid", help="cusped model curves")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--ode", action="store_true",
                   help="verify the polar ODE against the curve")
    p.add_argument("--csv")
    p.add_argument("--svg")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_cycloid)

    p = sub.add_parser("verify", help="run the bundled acceptance suite")
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except ExprError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 1
    except NUMERIC_ERRORS as e:
        print(f"numeric failure: {e}", file=sys.stderr)
        return 2
    except CONFIG_ERRORS as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
