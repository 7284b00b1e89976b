"""Flux of flat fronts: the matrix-valued period of the logarithmic
derivative of the surface around an end.

In terms of the two hyperbolic Gauss maps the integrand is the
closed-form matrix

    (df) f^-1 "=" dE E^-1
        = 1/(G - G_*)^2 * [[-G_* dG - G dG_*,  G_*^2 dG + G^2 dG_*],
                           [-dG - dG_*,        G_* dG + G dG_*]],

and the flux of a cycle is  (i / 2 pi) times its contour integral.  Both
an exact residue route (series) and a trapezoid contour route with
Richardson-style doubling are provided; the eigenvalue pair of the flux
matrix is +/- 2 m alpha / (1 - alpha)^2 and its eigenvector directions
span the axis of the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import BoundaryPoint, projective_point
from .series import FractionalLaurentSeries

Series = FractionalLaurentSeries


class FluxError(ValueError):
    pass


def expected_eigenvalue(m: int, alpha) -> float:
    """Magnitude 2 m alpha / (1 - alpha)^2 of the flux eigenvalue pair."""
    a = float(alpha)
    return 2.0 * m * a / (1.0 - a) ** 2


# -- integrand ------------------------------------------------------------

def integrand_series(G: Series, Gstar: Series) -> List[List[Series]]:
    """Coefficient series (of the dz-component) of dE E^-1."""
    dG = G.differentiate()
    dGs = Gstar.differentiate()
    w = (G - Gstar).inverse().pow_int(2)
    diag = Gstar * dG + G * dGs
    return [[-diag * w, (Gstar * Gstar * dG + G * G * dGs) * w],
            [-(dG + dGs) * w, diag * w]]


def integrand_numeric(G_fn: Callable, dG_fn: Callable,
                      Gstar_fn: Callable, dGstar_fn: Callable) -> Callable:
    """Vectorized z -> (..., 2, 2) values of the closed-form integrand."""

    def M(z):
        z = np.asarray(z, dtype=complex)
        g, gs = G_fn(z), Gstar_fn(z)
        dg, dgs = dG_fn(z), dGstar_fn(z)
        w = 1.0 / (g - gs) ** 2
        diag = gs * dg + g * dgs
        out = np.empty(z.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = -diag * w
        out[..., 0, 1] = (gs * gs * dg + g * g * dgs) * w
        out[..., 1, 0] = -(dg + dgs) * w
        out[..., 1, 1] = diag * w
        return out

    return M


# -- flux matrices --------------------------------------------------------

def flux_residue(G: Series, Gstar: Series) -> np.ndarray:
    """Exact route: flux = -residue of the integrand at the marked
    point."""
    M = integrand_series(G, Gstar)
    out = np.empty((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[i, j] = -M[i][j].coefficient(-1)
    return out


def flux_contour(M: Callable, center: complex, radius: float,
                 n_start: int = 4096, tol: float = 1e-10,
                 max_doublings: int = 6) -> np.ndarray:
    """Trapezoid contour route on |z - center| = radius, doubling the node
    count until two consecutive results agree within tol."""
    prev = _trapezoid_flux(M, center, radius, n_start)
    n = n_start
    for _ in range(max_doublings):
        n *= 2
        cur = _trapezoid_flux(M, center, radius, n)
        if np.max(np.abs(cur - prev)) < tol:
            return cur
        prev = cur
    raise FluxError(f"contour quadrature did not settle at {n} nodes")


def _trapezoid_flux(M: Callable, center: complex, radius: float,
                    n: int) -> np.ndarray:
    th = 2.0 * math.pi * np.arange(n) / n
    z = center + radius * np.exp(1j * th)
    vals = M(z)  # (n, 2, 2)
    weights = (1j * radius * np.exp(1j * th))[:, None, None]
    integral = (vals * weights).sum(axis=0) * (2.0 * math.pi / n)
    return (0.5j / math.pi) * integral


# -- spectral data --------------------------------------------------------

@dataclass(frozen=True)
class FluxReport:
    matrix: np.ndarray
    eigenvalues: Tuple[complex, complex]
    eigenvectors: Tuple[np.ndarray, np.ndarray]  # largest entry scaled to 1
    axis: Tuple[BoundaryPoint, BoundaryPoint]    # ideal endpoints


def flux_spectral(Phi: np.ndarray) -> FluxReport:
    """Eigen-decomposition of a flux matrix with the endpoint convention:
    each eigenvector is scaled so its largest-magnitude entry is 1, and
    its boundary point is first/second component ratio."""
    Phi = np.asarray(Phi, dtype=complex)
    w, v = np.linalg.eig(Phi)
    order = np.argsort(-w.real)  # positive eigenvalue first
    w = w[order]
    v = v[:, order]
    vecs = []
    pts = []
    for j in range(2):
        col = v[:, j]
        k = int(np.argmax(np.abs(col)))
        col = col / col[k]
        vecs.append(col)
        pts.append(projective_point(col))
    return FluxReport(Phi, (w[0], w[1]), (vecs[0], vecs[1]),
                      (pts[0], pts[1]))


def balancing_defect(fluxes: Sequence[np.ndarray]) -> float:
    """Max-entry magnitude of the sum of the end fluxes of a closed
    front (which must vanish)."""
    total = np.zeros((2, 2), dtype=complex)
    for Phi in fluxes:
        total = total + np.asarray(Phi, dtype=complex)
    return float(np.max(np.abs(total)))
