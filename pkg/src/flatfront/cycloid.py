"""Epicycloid/hypocycloid boundary curves of incomplete-end slices, and
the plane-curve ODE they satisfy.

The model curve with integer parameters (m, n) is

    Gamma(t) = ((m+n) e^{i(m-n)t} + (m-n) e^{i(m+n)t}) / m,

a closed cusped curve with 2n cusps whose similarity class depends only on
the ratio p = n/m.  In polar form r e^{i vartheta} it solves

    d(log r)/d(vartheta) = u,
    (p^2 - 1) du/d(vartheta) = p^2 + (p^2 + 1) u^2 + u^4,

with the closed-form solution (arc parameter s, one arc per cusp interval)

    u = -p tan(p s),   vartheta = s - arctan(p tan(p s)),
    r^2 = C ((1 + p^2) + (1 - p^2) cos(2 p s)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp


def cycloid_curve(m: int, n: int) -> Callable:
    """Gamma_{m,n} as a vectorized callable of the angle parameter."""
    if m <= 0 or n <= 0 or m == n:
        raise ValueError("need positive m != n")

    def gamma(t):
        t = np.asarray(t, dtype=float)
        return ((m + n) * np.exp(1j * (m - n) * t)
                + (m - n) * np.exp(1j * (m + n) * t)) / m

    return gamma


def cycloid_derivative(m: int, n: int) -> Callable:
    def dgamma(t):
        t = np.asarray(t, dtype=float)
        c = 1j * (m * m - n * n) / m
        return c * (np.exp(1j * (m - n) * t) + np.exp(1j * (m + n) * t))

    return dgamma


@dataclass(frozen=True)
class CycloidDescriptor:
    """Discrete invariants of the (m, n) cusped curve."""

    m: int
    n: int
    pitch: Fraction
    period_divisor: int        # d = gcd(m+n, m-n); the curve closes with
                               # period 2 pi / d
    winding: Fraction          # normal rotation number over one period
    radial_frequency: Fraction  # n/d (half-integer allowed)
    cusps: int                 # over t in [0, 2 pi)
    simple: bool               # embedded except for the cusps
    kind: str                  # 'epicycloid' (n < m) or 'hypocycloid'


def cycloid_descriptor(m: int, n: int) -> CycloidDescriptor:
    d = math.gcd(m + n, abs(m - n))
    m0 = Fraction(m, d)
    n0 = Fraction(n, d)
    simple = (d == 1 and abs(m0 - n0) == 1)
    return CycloidDescriptor(
        m=m, n=n, pitch=Fraction(n, m), period_divisor=d,
        winding=m0, radial_frequency=n0, cusps=2 * n, simple=simple,
        kind="epicycloid" if n < m else "hypocycloid")


# -- closed-form polar solution -------------------------------------------

def closed_form(p: float, scale: float = 1.0):
    """Callables (u, vartheta, r) of the arc parameter s for pitch ratio
    p; valid on one cusp interval |p s| < pi/2 and extended continuously
    elsewhere."""

    def u_of(s):
        return -p * np.tan(p * np.asarray(s))

    def theta_of(s):
        s = np.asarray(s)
        return s - np.arctan(p * np.tan(p * s))

    def r_of(s):
        s = np.asarray(s)
        rr = scale * ((1 + p * p) + (1 - p * p) * np.cos(2 * p * s))
        return np.sqrt(rr)

    return u_of, theta_of, r_of


def ode_residual(p: float, s_values) -> float:
    """Max defect of the closed forms in the governing ODE, checked by
    numerically differentiating u and log r along s."""
    u_of, theta_of, r_of = closed_form(p)
    s = np.asarray(s_values, dtype=float)
    eps = 1e-5
    u = u_of(s)
    du = (u_of(s + eps) - u_of(s - eps)) / (2 * eps)
    dth = (theta_of(s + eps) - theta_of(s - eps)) / (2 * eps)
    dlogr = (np.log(r_of(s + eps)) - np.log(r_of(s - eps))) / (2 * eps)
    res1 = np.abs(dlogr - u * dth)
    res2 = np.abs((p * p - 1.0) * du
                  - (p * p + (p * p + 1) * u * u + u ** 4) * dth)
    return float(max(res1.max(), res2.max()))


def solve_arc(p: float, theta_span: Tuple[float, float], u0: float,
              logr0: float = 0.0, rtol: float = 1e-11, atol: float = 1e-12,
              n_out: int = 200):
    """Integrate the polar ODE in vartheta over one smooth arc (no cusp
    inside the span).  Returns (vartheta, u, r)."""

    def rhs(th, y):
        _, u = y
        du = (p * p + (p * p + 1) * u * u + u ** 4) / (p * p - 1.0)
        return [u, du]

    th_eval = np.linspace(theta_span[0], theta_span[1], n_out)
    sol = solve_ivp(rhs, theta_span, [logr0, u0], t_eval=th_eval,
                    method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"arc integration failed: {sol.message}")
    return sol.t, sol.y[1], np.exp(sol.y[0])


def fit_similarity(curve: np.ndarray, model: np.ndarray) -> Tuple[complex, float]:
    """Best complex scale c minimizing |curve - c model|_2; returns
    (c, relative rms residual)."""
    num = np.vdot(model, curve)
    den = np.vdot(model, model).real
    c = num / den
    resid = np.linalg.norm(curve - c * model)
    return c, float(resid / max(np.linalg.norm(curve), 1e-300))


# -- discrete curve diagnostics -------------------------------------------

def normal_winding(points: np.ndarray, closed: bool = True) -> float:
    """Rotation number of the unit normal along a sampled curve.

    The tangent *line* field is continuous through cusps even though the
    tangent vector reverses, so the doubled tangent angle unwraps
    smoothly; half its total increment is the winding.
    """
    d = _tangent_steps(points, closed)
    ang2 = 2.0 * np.angle(d)
    steps = np.diff(ang2)
    if closed:
        steps = np.concatenate([steps, [ang2[0] - ang2[-1]]])
    steps = _wrap(steps)
    return float(steps.sum() / (4.0 * math.pi))


def _tangent_steps(points, closed):
    pts = np.asarray(points, dtype=complex)
    d = np.diff(pts)
    if closed:
        d = np.concatenate([d, [pts[0] - pts[-1]]])
    return d[np.abs(d) > 0]


def _wrap(a):
    return (np.asarray(a) + math.pi) % (2.0 * math.pi) - math.pi


def count_cusps(points: np.ndarray, closed: bool = True) -> int:
    """Number of tangent-direction reversals along a sampled curve; each
    cusp flips the tangent by (close to) pi."""
    d = _tangent_steps(points, closed)
    ang = np.angle(d)
    steps = np.diff(ang)
    if closed:
        steps = np.concatenate([steps, [ang[0] - ang[-1]]])
    steps = _wrap(steps)
    return int(np.sum(np.abs(steps) > math.pi / 2))


def rolling_circle_radii(m: int, n: int) -> Tuple[float, float]:
    """(fixed circle radius, rolling circle radius) of the classical
    rolling construction generating the (m, n) curve shape: a point on a
    circle of radius |1 - p| rolling on a circle of radius 2p, p = n/m."""
    p = n / m
    return 2.0 * p, abs(1.0 - p)
