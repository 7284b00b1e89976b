"""Holomorphic null lifts of flat surfaces in hyperbolic 3-space.

A lift is a holomorphic SL(2,C)-valued map E whose Maurer-Cartan form is
off-diagonal,

    E^-1 dE = [[0, theta], [omega, 0]],

and the surface is f = E E^*, with unit normal nu = E e3 E^*.  Lifts are
held as 2x2 matrices of truncated fractional Laurent series around a
marked point, with numeric evaluation by direct summation inside the
series' validity radius and by ODE continuation of the structure equation
beyond it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp

from .geometry import E3, project_lift_to_uhs, sl2_check, to_poincare_ball
from .series import (DEFAULT_TRUNCATION, FractionalLaurentSeries,
                     LogarithmicMonodromyError, SeriesError, exp_integral,
                     schwarzian)


class LiftError(ValueError):
    pass


Series = FractionalLaurentSeries


@dataclass(frozen=True)
class CanonicalData:
    """Coefficient series of the canonical forms at the marked point:
    omega = omega_hat dz, theta = theta_hat dz, plus the derived ratio
    rho = theta_hat/omega_hat and Hopf coefficient q = omega_hat*theta_hat
    (so the Hopf differential is q dz^2)."""

    omega: Series
    theta: Series
    rho: Series
    hopf: Series
    diagonal_residual: float = 0.0

    def secondary_gauss_maps(self):
        """Primitives g = int omega, g_* = int theta; raises on residues."""
        return self.omega.integrate(), self.theta.integrate()


@dataclass(frozen=True)
class Lift:
    """Series matrix E = [[e11, e12], [e21, e22]] around the marked point,
    with optional closed-form callables for the canonical form coefficients
    (used by the ODE continuation)."""

    e11: Series
    e12: Series
    e21: Series
    e22: Series
    omega_fn: Optional[Callable] = None
    theta_fn: Optional[Callable] = None

    @property
    def entries(self):
        return (self.e11, self.e12, self.e21, self.e22)

    def covering_sheets(self) -> int:
        """Number of sheets of the z-plane cover on which the lift is
        single-valued (lcm of exponent denominators)."""
        q = 1
        for s in self.entries:
            if not s.is_zero:
                q = _lcm(q, s.exponent.denominator)
        return q

    def determinant_series(self) -> Series:
        return self.e11 * self.e22 - self.e12 * self.e21

    def determinant_defect(self) -> float:
        d = self.determinant_series() - 1.0
        return d.scale_magnitude() if not d.is_zero else 0.0

    # -- numeric evaluation ----------------------------------------------

    def evaluate_polar(self, r, t) -> np.ndarray:
        """E at z = r e^{it} (arrays broadcast); result has shape
        broadcast(r,t) + (2, 2).  t may run over several sheets."""
        vals = [s.evaluate_polar(r, t) for s in self.entries]
        out = np.stack([np.stack([vals[0], vals[1]], axis=-1),
                        np.stack([vals[2], vals[3]], axis=-1)], axis=-2)
        return out

    def evaluate(self, z) -> np.ndarray:
        vals = [s.evaluate(z) for s in self.entries]
        return np.stack([np.stack([vals[0], vals[1]], axis=-1),
                         np.stack([vals[2], vals[3]], axis=-1)], axis=-2)

    def surface_point(self, r, t):
        """f = E E^* at z = r e^{it}."""
        E = self.evaluate_polar(r, t)
        return E @ np.conj(np.swapaxes(E, -1, -2))

    def normal(self, r, t):
        """nu = E e3 E^*."""
        E = self.evaluate_polar(r, t)
        return E @ E3 @ np.conj(np.swapaxes(E, -1, -2))

    def validity_radius(self) -> float:
        return min(s.validity_radius() for s in self.entries)

    # -- derived lifts ----------------------------------------------------

    def parallel(self, t: float) -> "Lift":
        """Parallel-family lift E_t = E diag(e^{t/2}, e^{-t/2}); the
        canonical forms scale as omega -> e^t omega, theta -> e^-t theta."""
        a = math.exp(t / 2.0)
        om = self.omega_fn
        th = self.theta_fn
        return Lift(self.e11 * a, self.e12 / a, self.e21 * a, self.e22 / a,
                    omega_fn=(lambda z, om=om, t=t: np.exp(t) * om(z))
                    if om else None,
                    theta_fn=(lambda z, th=th, t=t: np.exp(-t) * th(z))
                    if th else None)

    def dual(self) -> "Lift":
        """E -> E [[0, i], [i, 0]]; swaps the roles of the two canonical
        forms (and of the two hyperbolic Gauss maps)."""
        return Lift(self.e12 * 1j, self.e11 * 1j, self.e22 * 1j, self.e21 * 1j,
                    omega_fn=self.theta_fn, theta_fn=self.omega_fn)

    def left_translate(self, u) -> "Lift":
        u = np.asarray(u, dtype=complex)
        a, b, c, d = u[0, 0], u[0, 1], u[1, 0], u[1, 1]
        return Lift(self.e11 * a + self.e21 * b,
                    self.e12 * a + self.e22 * b,
                    self.e11 * c + self.e21 * d,
                    self.e12 * c + self.e22 * d,
                    omega_fn=self.omega_fn, theta_fn=self.theta_fn)

    def gauss_maps(self):
        """Hyperbolic Gauss maps G = e11/e21 and G_* = e12/e22 as series."""
        return self.e11 / self.e21, self.e12 / self.e22


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# -- constructors ---------------------------------------------------------

def lift_from_g_omega(G: Series, omega: Series,
                      omega_fn: Optional[Callable] = None,
                      theta_fn: Optional[Callable] = None) -> Lift:
    """Lift with prescribed first Gauss map G and canonical form
    omega = omega_hat dz:

        E = [[G c, (G c)' / omega_hat], [c, c' / omega_hat]],
        c = i sqrt(omega_hat / G').
    """
    dG = G.differentiate()
    if dG.is_zero:
        raise LiftError("constant Gauss map")
    c = (omega / dG).sqrt() * 1j
    e21 = c
    e11 = G * c
    e12 = e11.differentiate() / omega
    e22 = c.differentiate() / omega
    return Lift(e11, e12, e21, e22, omega_fn=omega_fn, theta_fn=theta_fn)


def lift_from_gauss_pair(G: Series, Gstar: Series,
                         delta: complex = 1.0) -> Lift:
    """Lift with prescribed pair of hyperbolic Gauss maps:

        E = [[G/xi, xi G_*/(G - G_*)], [1/xi, xi/(G - G_*)]],
        xi = delta * exp(int dG/(G - G_*)).

    The exponential of the integral is taken with primitive vanishing at
    the marked point; a z^-1 residue becomes an exact monomial factor z^c
    (c must be rational)."""
    diff = G - Gstar
    if diff.is_zero:
        raise LiftError("Gauss maps coincide")
    form = G.differentiate() / diff
    c, unit = exp_integral(form)
    xi = (unit * delta).shift(c)
    inv_diff = diff.inverse()
    return Lift(G / xi, xi * Gstar * inv_diff, xi.inverse(), xi * inv_diff)


def canonical_data(lift: Lift) -> CanonicalData:
    """Canonical forms from E^-1 dE; the diagonal of the Maurer-Cartan
    matrix must vanish to truncation accuracy."""
    e11, e12, e21, e22 = lift.entries
    d11, d12 = e11.differentiate(), e12.differentiate()
    d21, d22 = e21.differentiate(), e22.differentiate()
    # E^-1 = [[e22, -e12], [-e21, e11]] for det 1
    omega = e11 * d21 - e21 * d11
    theta = e22 * d12 - e12 * d22
    diag1 = e22 * d11 - e12 * d21
    diag2 = e11 * d22 - e21 * d12
    resid = 0.0
    scale = max(omega.scale_magnitude(), theta.scale_magnitude(), 1.0)
    for d in (diag1, diag2):
        if not d.is_zero:
            resid = max(resid, d.scale_magnitude() / scale)
    if omega.is_zero:
        raise LiftError("degenerate lift: omega vanishes identically")
    rho = theta / omega if not theta.is_zero else Series.zero()
    hopf = omega * theta
    return CanonicalData(omega, theta, rho, hopf, resid)


def hopf_from_schwarzians(G: Series, Gstar: Series) -> Series:
    """Hopf coefficient via  q = (S(g) - S(G))/2 applied to the Gauss-map
    pair:  q = -G' G_*' / (G - G_*)^2."""
    diff = G - Gstar
    return -(G.differentiate() * Gstar.differentiate()) * \
        diff.inverse().pow_int(2)


def schwarzian_identity_residual(G: Series, omega: Series,
                                 hopf: Series) -> float:
    """Relative magnitude of S(g) - S(G) - 2q for g = int omega; the
    structural invariant relating a Gauss map, its secondary map, and the
    Hopf coefficient.  Computed from omega directly, so a logarithmic
    primitive is fine."""
    from .series import schwarzian_of_primitive
    lhs = schwarzian_of_primitive(omega) - schwarzian(G)
    resid = lhs - hopf * 2.0
    scale = max(hopf.scale_magnitude(), lhs.scale_magnitude(), 1e-30)
    return (resid.scale_magnitude() / scale) if not resid.is_zero else 0.0


# -- ODE continuation -----------------------------------------------------

def continue_lift(E0: np.ndarray, z0: complex, z1: complex,
                  omega_fn: Callable, theta_fn: Callable,
                  rtol: float = 1e-12, atol: float = 1e-12):
    """Integrate dE = E [[0, theta_hat], [omega_hat, 0]] dz along the
    straight segment from z0 to z1.

    Returns (E1, det_drift): the continued matrix re-projected to
    determinant 1 and the unimodularity defect before re-projection.
    """
    dz = z1 - z0

    def rhs(s, y):
        z = z0 + s * dz
        E = y.reshape(2, 2, 2)
        Ec = E[0] + 1j * E[1]
        M = np.array([[0.0, theta_fn(z)], [omega_fn(z), 0.0]], dtype=complex)
        dE = (Ec @ M) * dz
        return np.stack([dE.real, dE.imag]).ravel()

    y0 = np.stack([np.asarray(E0).real, np.asarray(E0).imag]).ravel()
    sol = solve_ivp(rhs, (0.0, 1.0), y0, method="DOP853",
                    rtol=rtol, atol=atol, dense_output=False)
    if not sol.success:
        raise LiftError(f"continuation failed: {sol.message}")
    yf = sol.y[:, -1].reshape(2, 2, 2)
    E1 = yf[0] + 1j * yf[1]
    drift = sl2_check(E1)
    det = E1[0, 0] * E1[1, 1] - E1[0, 1] * E1[1, 0]
    return E1 / np.sqrt(det), drift


def continue_lift_path(E0, points, omega_fn, theta_fn, **kw):
    """Continuation along a polygonal path; returns (E_end, max drift)."""
    E = np.asarray(E0, dtype=complex)
    drift = 0.0
    for a, b in zip(points[:-1], points[1:]):
        E, d = continue_lift(E, a, b, omega_fn, theta_fn, **kw)
        drift = max(drift, d)
    return E, drift


# -- sampling -------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceSample:
    """Polar grid sample of a front: upper-half-space and ball coordinates,
    plus a singular-set flag where |rho| is within tol of 1."""

    r: np.ndarray            # (nr,)
    t: np.ndarray            # (nt,)
    zeta: np.ndarray         # (nr, nt) complex, boundary coordinate
    height: np.ndarray       # (nr, nt) heights in the half-space chart
    ball: np.ndarray         # (nr, nt, 3) Poincare ball positions
    singular: np.ndarray     # (nr, nt) bool


def sample_surface(lift: Lift, r_min: float, r_max: float,
                   nr: int = 96, nt: int = 64,
                   singular_tol: float = 1e-6) -> SurfaceSample:
    """Sample f = E E^* on a log-radial polar grid around the marked
    point."""
    data = canonical_data(lift)
    r = np.exp(np.linspace(math.log(r_min), math.log(r_max), nr))
    t = np.linspace(0.0, 2.0 * math.pi, nt, endpoint=False)
    R, T = np.meshgrid(r, t, indexing="ij")
    E = lift.evaluate_polar(R, T)
    zeta, h = project_lift_to_uhs(E)
    f = E @ np.conj(np.swapaxes(E, -1, -2))
    ball = to_poincare_ball(f)
    rho = data.rho.evaluate_polar(R, T) if not data.rho.is_zero else \
        np.zeros_like(R, dtype=complex)
    singular = np.abs(np.abs(rho) - 1.0) < singular_tol
    return SurfaceSample(r, t, zeta, h, ball, singular)


def caustic_point(lift: Lift, r, t):
    """Point of the caustic over z = r e^{it}: the member of the parallel
    family at distance s(z) = (1/2) log|rho(z)| from the front."""
    data = canonical_data(lift)
    rho = data.rho.evaluate_polar(np.asarray(r), np.asarray(t))
    s = 0.5 * np.log(np.abs(rho))
    E = lift.evaluate_polar(r, t)
    a = np.exp(s / 2.0)
    scale = np.zeros(E.shape, dtype=complex)
    scale[..., 0, 0] = a
    scale[..., 1, 1] = 1.0 / a
    Et = E @ scale
    return Et @ np.conj(np.swapaxes(Et, -1, -2))
