"""End-to-end verification suite over the bundled examples.

Each check returns a CheckResult; `run_all` executes the full battery
and is what the command line `verify` subcommand prints as a PASS/FAIL
table.  Exact statements (pitch tables, caustic pitches) are compared as
rationals; numeric probes carry explicit tolerances.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

import numpy as np

from . import bundled
from .caustic import caustic_end_pitch
from .cycloid import (closed_form, count_cusps, cycloid_curve,
                      fit_similarity, solve_arc)
from .ends import classify_end, indentation
from .exprs import Expression, INFINITY
from .flux import (balancing_defect, expected_eigenvalue, flux_contour,
                   flux_residue, flux_spectral, integrand_numeric)
from .front import (canonical_data, continue_lift_path,
                    schwarzian_identity_residual)
from .geometry import (E1, E2, E3, INF, boundary_class, boundary_distance,
                       exterior, moebius, projective_point)
from .series import FractionalLaurentSeries
from .slices import estimate_pitch, hausdorff, slice_ladder


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name:28s} {self.detail}"


def _timed(fn: Callable[[], CheckResult]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        out = fn()
    except Exception as e:  # a crash is a failure, not an abort
        return CheckResult(fn.__name__.replace("check_", ""), False,
                           f"error: {e}", time.perf_counter() - t0)
    return CheckResult(out.name, out.passed, out.detail,
                       time.perf_counter() - t0)


def _gauss_series(spec, pt, truncation=24):
    return (Expression(spec.g).series_at(pt, truncation),
            Expression(spec.partner).series_at(pt, truncation))


# -- 1: exact pitch table -------------------------------------------------

def check_pitch_table() -> CheckResult:
    rows = []
    for k in (3, 4, 5):
        spec = bundled.get(f"knoid{k}")
        want = Fraction(-(k - 2), 2 * k - 2)
        for pt in spec.ends:
            rows.append((classify_end(spec.lift_at(pt)).pitch, want))
    for (k, d) in ((1, 3), (2, 2)):
        spec = bundled.get(f"dihedral_k{k}_d{d}")
        for pt in spec.ends:
            if pt in (0.0, INFINITY):
                want = Fraction(-1, 2)
            else:
                want = Fraction(-(2 * k + d), 2 * k + 2 * d)
            rows.append((classify_end(spec.lift_at(pt)).pitch, want))
    rows.append((classify_end(bundled.get("node_spiral").lift_at(0.0)).pitch,
                 Fraction(-4, 5)))
    bad = [(got, want) for got, want in rows if got != want]
    return CheckResult("pitch-table", not bad,
                       f"{len(rows)} ends exact" if not bad else
                       f"mismatches: {bad}")


# -- 2: caustic pitches ---------------------------------------------------

def check_caustic_pitch() -> CheckResult:
    rows = []
    for k in (3, 4):
        spec = bundled.get(f"knoid{k}")
        for pt in (0.0, INFINITY):
            got = caustic_end_pitch(*_gauss_series(spec, pt),
                                    "umbilic").pitch
            rows.append((got, Fraction(k, k - 2)))
        for pt in spec.ends:
            rep = classify_end(spec.lift_at(pt))
            got = caustic_end_pitch(*_gauss_series(spec, pt), "end",
                                    rep.multiplicity, rep).pitch
            rows.append((got, Fraction(2)))
    for (k, d) in ((1, 3), (2, 2)):
        spec = bundled.get(f"dihedral_k{k}_d{d}")
        rep0 = classify_end(spec.lift_at(0.0))
        got = caustic_end_pitch(*_gauss_series(spec, 0.0), "end",
                                rep0.multiplicity, rep0).pitch
        rows.append((got, Fraction(d, 2 * k + d)))
        pt = spec.ends[1]
        rep1 = classify_end(spec.lift_at(pt))
        got = caustic_end_pitch(*_gauss_series(spec, pt), "end",
                                rep1.multiplicity, rep1).pitch
        rows.append((got, Fraction(0)))
    bad = [(g, w) for g, w in rows if g != w]
    return CheckResult("caustic-pitch", not bad,
                       f"{len(rows)} caustic ends exact" if not bad else
                       f"mismatches: {bad}")


# -- 3: flux eigenvalues --------------------------------------------------

def check_flux_eigenvalues() -> CheckResult:
    cases = [("snowman", 1, Fraction(1, 2), 0.7),
             ("snowman_m2", 2, Fraction(-1, 2), 0.7),
             ("cylinder", 1, Fraction(-1), 0.7)]
    worst = 0.0
    for name, m, a, radius in cases:
        spec = bundled.get(name)
        G = Expression(spec.g)
        Gs = Expression(spec.partner)
        M = integrand_numeric(G, G.derivative(), Gs, Gs.derivative())
        rep = flux_spectral(flux_contour(M, 0.0, radius))
        lam = abs(expected_eigenvalue(m, a))
        worst = max(worst,
                    abs(abs(rep.eigenvalues[0]) - lam),
                    abs(abs(rep.eigenvalues[1]) - lam))
    spec = bundled.get("dihedral_k1_d3")
    G = Expression(spec.g)
    Gs = Expression(spec.partner)
    M = integrand_numeric(G, G.derivative(), Gs, Gs.derivative())
    horo = np.max(np.abs(np.linalg.eigvals(flux_contour(M, 0.0, 0.3))))
    ok = worst < 1e-8 and horo < 1e-9
    return CheckResult("flux-eigenvalues", ok,
                       f"max defect {worst:.2e}, horospherical {horo:.2e}")


# -- 4: balancing ---------------------------------------------------------

def check_balancing() -> CheckResult:
    worst = 0.0
    for k in (3, 4):
        spec = bundled.get(f"knoid{k}")
        G = Expression(spec.g)
        Gs = Expression(spec.partner)
        M = integrand_numeric(G, G.derivative(), Gs, Gs.derivative())
        fluxes = [flux_contour(M, z, 0.4) for z in spec.ends]
        worst = max(worst, balancing_defect(fluxes))
    return CheckResult("flux-balancing", worst < 1e-7,
                       f"max defect {worst:.2e}")


# -- 5: principal axis = flux axis ----------------------------------------

def check_axis_agreement() -> CheckResult:
    lift = bundled.get("node_spiral").lift_at(0.0)
    G, Gs = lift.gauss_maps()
    ind = indentation(G, Gs, [0.8 + 0.4j, -1.2 + 0.3j, 0.5 - 1.1j])
    if ind.kind != "centered":
        return CheckResult("axis-agreement", False,
                           f"expected a centered end, got {ind.kind}")
    axis_pts = {ind.principal_endpoint, complex(G.coefficient(0))}
    rep = flux_spectral(flux_residue(G, Gs))
    d = 0.0
    for fp in rep.axis:
        d = max(d, min(boundary_distance(fp, ap) for ap in axis_pts))
    return CheckResult("axis-agreement", d < 1e-6,
                       f"endpoint distance {d:.2e}")


# -- 6: Schwarzian identity -----------------------------------------------

def check_schwarzian_identity() -> CheckResult:
    worst = 0.0
    count = 0
    for name in bundled.names():
        spec = bundled.get(name)
        for pt in spec.ends:
            lift = spec.lift_at(pt)
            data = canonical_data(lift)
            if data.theta.is_zero:
                continue
            Gmap, _ = lift.gauss_maps()
            worst = max(worst, schwarzian_identity_residual(
                Gmap, data.omega, data.hopf))
            count += 1
    return CheckResult("schwarzian-identity", worst < 1e-10,
                       f"{count} ends, worst residual {worst:.2e}")


# -- 7: cycloid convergence -----------------------------------------------

def check_cycloid_convergence() -> CheckResult:
    lift = bundled.get("cusped_cylinder").lift_at(0.0)
    heights = [10 ** -1, 10 ** -1.5, 10 ** -2, 10 ** -2.5]
    slices = slice_ladder(lift, heights, r_bracket=(1e-8, 0.4), n_t=512)
    gamma = cycloid_curve(1, 2)
    dists = []
    cusps = []
    model = gamma(slices[0].t)
    diam = float(np.abs(model[:, None] - model[None, :]).max())
    for s in slices:
        norm = s.points / s.height ** 2
        dists.append(hausdorff(norm, gamma(s.t)))
        cusps.append(count_cusps(norm))
    decreasing = all(a > b for a, b in zip(dists, dists[1:]))
    ok = (decreasing and dists[-1] < 0.05 * diam
          and all(c == 4 for c in cusps))
    return CheckResult(
        "cycloid-convergence", ok,
        f"distances {['%.2e' % d for d in dists]}, cusps {cusps}, "
        f"diameter {diam:.3f}")


# -- 8: pitch estimation --------------------------------------------------

def check_pitch_estimation() -> CheckResult:
    heights = [10 ** (-1.5 - 0.5 * j) for j in range(5)]
    cases = [("snowman", (1e-8, 0.75), -0.75),
             ("horosphere", (1e-8, 0.9), -0.5),
             ("node_spiral", (1e-6, 0.8), -0.8)]
    errs = []
    for name, bracket, want in cases:
        lift = bundled.get(name).lift_at(0.0)
        sl = slice_ladder(lift, heights, r_bracket=bracket, n_t=128)
        errs.append(abs(estimate_pitch(sl).slope - want))
    ok = all(e < 0.02 for e in errs)
    return CheckResult("pitch-estimation", ok,
                       "errors " + ", ".join(f"{e:.4f}" for e in errs))


# -- 9: plane-curve ODE ---------------------------------------------------

def check_cycloid_ode() -> CheckResult:
    worst_fit = 0.0
    worst_closed = 0.0
    for (m, n) in ((2, 1), (1, 2), (2, 3)):
        p = n / m
        u_of, th_of, r_of = closed_form(p)
        s0, s1 = -0.4 * math.pi / p, 0.4 * math.pi / p
        th, u, r = solve_arc(p, (float(th_of(s0)), float(th_of(s1))),
                             float(u_of(s0)), float(np.log(r_of(s0))),
                             n_out=400)
        s_rec = th + np.arctan(-u)
        worst_closed = max(worst_closed,
                           float(np.max(np.abs(u - u_of(s_rec)))),
                           float(np.max(np.abs(r ** 2 - r_of(s_rec) ** 2))))
        curve = r * np.exp(1j * th)
        c, _ = fit_similarity(curve, cycloid_curve(m, n)(s_rec / m))
        worst_fit = max(worst_fit, float(np.max(np.abs(
            curve - c * cycloid_curve(m, n)(s_rec / m)))))
    ok = worst_fit < 1e-6 and worst_closed < 1e-8
    return CheckResult("cycloid-ode", ok,
                       f"fit {worst_fit:.2e}, closed-form {worst_closed:.2e}")


# -- 10: boundary class ---------------------------------------------------

def check_boundary_class() -> CheckResult:
    if not np.array_equal(exterior(E1, E2), E3):
        return CheckResult("boundary-class", False, "e1 x e2 != e3")
    rng = np.random.default_rng(11)
    worst = 0.0
    for name in ("snowman", "node_spiral"):
        lift = bundled.get(name).lift_at(0.0)
        for _ in range(50):
            r = rng.uniform(0.1, 0.35)
            t = rng.uniform(0.0, 2.0 * math.pi)
            E = lift.evaluate_polar(r, t)
            f = E @ E.conj().T
            nu = E @ E3 @ E.conj().T
            bc = boundary_class(f, nu)
            want = E[0, 0] / E[1, 0]
            worst = max(worst, abs(bc - want))
    return CheckResult("boundary-class", worst < 1e-8,
                       f"100 samples, worst {worst:.2e}, "
                       "cross product exact")


# -- 11: structural invariants --------------------------------------------

def check_structural() -> CheckResult:
    msgs = []
    ok = True

    # determinant drift along continuation
    spec = bundled.get("node_spiral")
    lift = spec.lift_at(0.0)
    data = canonical_data(lift)
    om = Expression(spec.partner)
    th_series = data.theta
    E0 = lift.evaluate(np.array(0.2 + 0j))
    _, drift = continue_lift_path(
        E0, [0.2, 0.25 + 0.15j, 0.1 + 0.3j, 0.3 + 0.05j],
        lambda z: om(z), lambda z: th_series.evaluate(np.asarray(z)))
    ok &= drift < 1e-10
    msgs.append(f"det drift {drift:.2e}")

    # parallel family: rho_t = e^{-2t} rho as series; pitch invariant
    t_par = 0.37
    par = lift.parallel(t_par)
    rho_t = canonical_data(par).rho
    diff = rho_t - data.rho * math.exp(-2.0 * t_par)
    resid = (diff.scale_magnitude() / data.rho.scale_magnitude()
             if not diff.is_zero else 0.0)
    ok &= resid < 1e-10
    msgs.append(f"parallel rho residual {resid:.2e}")
    same = (classify_end(par).pitch == classify_end(lift).pitch)
    ok &= same
    msgs.append(f"pitch invariant {same}")

    # Mobius equivariance of the projective boundary point
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(25):
        u = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        u = u / np.sqrt(u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0])
        w = rng.normal(size=2) + 1j * rng.normal(size=2)
        lhs = projective_point(u @ w)
        rhs = moebius(u, projective_point(w))
        worst = max(worst, boundary_distance(lhs, rhs))
    ok &= worst < 1e-10
    msgs.append(f"projective equivariance {worst:.2e}")

    return CheckResult("structural-invariants", bool(ok), "; ".join(msgs))


ALL_CHECKS = [
    check_pitch_table,
    check_caustic_pitch,
    check_flux_eigenvalues,
    check_balancing,
    check_axis_agreement,
    check_schwarzian_identity,
    check_cycloid_convergence,
    check_pitch_estimation,
    check_cycloid_ode,
    check_boundary_class,
    check_structural,
]


def run_all() -> List[CheckResult]:
    return [_timed(fn) for fn in ALL_CHECKS]
