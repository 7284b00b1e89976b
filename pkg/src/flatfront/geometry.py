"""Models of hyperbolic 3-space and the 2x2 matrix calculus tying them
together.

Points of Minkowski 4-space correspond to 2x2 Hermitian matrices via

    (x0, x1, x2, x3)  <->  [[x0 + x3, x1 + i x2], [x1 - i x2, x0 - x3]],

hyperbolic 3-space is the Hermitian matrices of determinant 1 with positive
trace, and SL(2,C) acts by  X -> u X u^*.  The module also provides the
upper-half-space and Poincare-ball charts, ideal boundary points (complex
numbers plus a point at infinity), and the matrix cross product on tangent
vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

#: sentinel for the ideal point at infinity of the upper half-space chart
INF = "inf"

BoundaryPoint = Union[complex, str]

IDENTITY = np.eye(2, dtype=complex)

#: Pauli-style basis e0..e3 of Hermitian 2x2 matrices
E0 = np.eye(2, dtype=complex)
E1 = np.array([[0, 1], [1, 0]], dtype=complex)
E2 = np.array([[0, 1j], [-1j, 0]], dtype=complex)
E3 = np.array([[1, 0], [0, -1]], dtype=complex)


def hermitian_from_minkowski(x) -> np.ndarray:
    x0, x1, x2, x3 = [float(v) for v in x]
    return np.array([[x0 + x3, x1 + 1j * x2],
                     [x1 - 1j * x2, x0 - x3]], dtype=complex)


def minkowski_from_hermitian(X) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    x0 = (X[0, 0] + X[1, 1]).real / 2.0
    x3 = (X[0, 0] - X[1, 1]).real / 2.0
    x1 = X[0, 1].real
    x2 = X[0, 1].imag
    return np.array([x0, x1, x2, x3])


def cofactor(X) -> np.ndarray:
    """Adjugate of a 2x2 matrix: X * cof(X) = det(X) * I."""
    X = np.asarray(X, dtype=complex)
    return np.array([[X[1, 1], -X[0, 1]], [-X[1, 0], X[0, 0]]], dtype=complex)


def minkowski_inner(X, Y) -> float:
    """Lorentz inner product of Hermitian matrices: -(1/2) trace(X cof(Y)).

    Signature (-, +, +, +); <E0,E0> = -1 and <Ej,Ej> = +1 for j=1,2,3.
    """
    val = -0.5 * np.trace(np.asarray(X, dtype=complex) @ cofactor(Y))
    return float(val.real)


def exterior(X, Y, at=None) -> np.ndarray:
    """Cross product of tangent vectors at the point ``at`` (default the
    identity / base point):  (i/2)(X a^-1 Y - Y a^-1 X)."""
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    a_inv = IDENTITY if at is None else np.linalg.inv(np.asarray(at, complex))
    return 0.5j * (X @ a_inv @ Y - Y @ a_inv @ X)


# -- upper half space and ball --------------------------------------------

def project_to_uhs(X):
    """Upper-half-space coordinates (zeta, h) of a positive Hermitian
    matrix, by  zeta + j h  =  (x11 x21^* + x12 x22^*, 1) / |row2|^2 for
    X = u u^*; works directly on X = [[a, b], [b^*, d]]:
    h = 1/d (after det-1 normalization), zeta = b/d."""
    X = np.asarray(X, dtype=complex)
    d = X[..., 1, 1].real
    zeta = X[..., 0, 1] / d
    h = _det2(X).real / d
    return zeta, h


def project_lift_to_uhs(u):
    """(zeta, h) of the point u u^* for u in SL(2,C); vectorized over
    leading axes."""
    u = np.asarray(u, dtype=complex)
    denom = (np.abs(u[..., 1, 0]) ** 2 + np.abs(u[..., 1, 1]) ** 2)
    zeta = (u[..., 0, 0] * np.conj(u[..., 1, 0])
            + u[..., 0, 1] * np.conj(u[..., 1, 1])) / denom
    return zeta, 1.0 / denom


def uhs_to_hermitian(zeta: complex, h: float) -> np.ndarray:
    """Inverse chart: the determinant-1 positive Hermitian matrix with
    upper-half-space coordinates (zeta, h)."""
    d = 1.0 / h
    b = zeta * d
    a = h + abs(zeta) ** 2 * d
    return np.array([[a, b], [np.conj(b), d]], dtype=complex)


def to_poincare_ball(X):
    """Poincare ball coordinates (x1, x2, x3)/(1 + x0) of a hyperbolic
    point given as a Hermitian matrix (vectorized over leading axes)."""
    X = np.asarray(X, dtype=complex)
    x0 = (X[..., 0, 0] + X[..., 1, 1]).real / 2.0
    x3 = (X[..., 0, 0] - X[..., 1, 1]).real / 2.0
    x1 = X[..., 0, 1].real
    x2 = X[..., 0, 1].imag
    s = 1.0 + x0
    return np.stack([x1 / s, x2 / s, x3 / s], axis=-1)


def hyperbolic_distance(X, Y) -> float:
    """Geodesic distance between determinant-1 positive Hermitian points."""
    c = -minkowski_inner(X, Y)
    return math.acosh(max(c, 1.0))


def boundary_class(X, V) -> BoundaryPoint:
    """Ideal endpoint of the geodesic ray from point X with null direction
    V (both Hermitian, V future-pointing lightlike):

        ((x1+v1) + i (x2+v2)) / ((x0+v0) - (x3+v3))
    """
    x = minkowski_from_hermitian(X)
    v = minkowski_from_hermitian(V)
    num = (x[1] + v[1]) + 1j * (x[2] + v[2])
    den = (x[0] + v[0]) - (x[3] + v[3])
    if abs(den) <= 1e-14 * (abs(num) + 1.0):
        return INF
    return complex(num / den)


# -- boundary points and the Mobius action --------------------------------

def moebius(u, p: BoundaryPoint) -> BoundaryPoint:
    """Action of u in SL(2,C) on the ideal boundary C union {INF}."""
    u = np.asarray(u, dtype=complex)
    a, b, c, d = u[0, 0], u[0, 1], u[1, 0], u[1, 1]
    if p == INF:
        if abs(c) <= 1e-15 * max(abs(a), 1.0):
            return INF
        return complex(a / c)
    p = complex(p)
    den = c * p + d
    if abs(den) <= 1e-14 * (abs(a * p + b) + 1.0):
        return INF
    return complex((a * p + b) / den)


def projective_point(v) -> BoundaryPoint:
    """Boundary point x/y of a nonzero vector (x, y) in C^2."""
    x, y = complex(v[0]), complex(v[1])
    if abs(y) <= 1e-12 * abs(x):
        return INF
    return x / y


def boundary_distance(p: BoundaryPoint, q: BoundaryPoint) -> float:
    """Chordal distance on the boundary sphere (round metric chart)."""
    if p == INF and q == INF:
        return 0.0
    if p == INF or q == INF:
        w = complex(q if p == INF else p)
        return 2.0 / math.sqrt(1.0 + abs(w) ** 2)
    p, q = complex(p), complex(q)
    return 2.0 * abs(p - q) / math.sqrt((1 + abs(p) ** 2) * (1 + abs(q) ** 2))


# -- SL(2,C) helpers ------------------------------------------------------

def _det2(X):
    X = np.asarray(X, dtype=complex)
    return (X[..., 0, 0] * X[..., 1, 1] - X[..., 0, 1] * X[..., 1, 0])


def sl2_check(u, tol: float = 1e-10) -> float:
    """|det(u) - 1| unimodularity defect."""
    return float(np.max(np.abs(_det2(u) - 1.0)))


def sl2_project(u) -> np.ndarray:
    """Rescale to determinant exactly 1 (principal square root)."""
    u = np.asarray(u, dtype=complex)
    d = _det2(u)
    return u / np.sqrt(d)[..., None, None]


def translate_to_origin(X) -> np.ndarray:
    """u in SL(2,C) with u X u^* = identity, for positive Hermitian X of
    determinant 1 (inverse of the Hermitian square root)."""
    X = np.asarray(X, dtype=complex)
    w, v = np.linalg.eigh(X)
    root = (v * np.sqrt(w)) @ v.conj().T
    return np.linalg.inv(root)


@dataclass(frozen=True)
class Tolerances:
    """Central numeric thresholds used across the package."""

    structural: float = 1e-10   # identities that hold to rounding
    numeric: float = 1e-8       # quadrature / root-finding targets
    vanish: float = 1e-12       # relative coefficient vanishing


TOL = Tolerances()
