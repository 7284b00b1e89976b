"""Caustics (focal surfaces) of flat fronts.

The caustic of a flat front is again a flat front; its canonical forms
are built from the Hopf coefficient q and the singular-set potential
d(log rho):

    omega_c = i sqrt(q) + (log rho)'/4,
    theta_c = -i sqrt(q) + (log rho)'/4,
    q_c     = q + ((log rho)'/4)^2,

with sqrt(q) living on a double cover w^2 = z when the order of q is odd.
End data of the caustic (cusped-edge count and multiplicity, hence its
pitch) follows from the orders of q and of the difference of the
Schwarzian derivatives of the two Gauss maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .ends import EndReport, EndType
from .front import CanonicalData
from .series import FractionalLaurentSeries, schwarzian

Series = FractionalLaurentSeries


class CausticError(ValueError):
    pass


@dataclass(frozen=True)
class CausticForms:
    """Canonical data of the caustic as series at the marked point.

    When the Hopf coefficient has odd order its square root only exists
    on the two-sheeted cover w^2 = z; in that case (``double_cover``) all
    series here are one-form coefficients in the cover coordinate w,
    Jacobian dz = 2 w dw included.  Otherwise they live in the base
    coordinate.
    """

    omega: Series
    theta: Series
    hopf: Series
    rho: Series
    double_cover: bool   # True when sqrt(q) needs the two-sheeted cover


def _cover_pullback(s: Series, k: int = 2) -> Series:
    """Substitute z = w^k: exponents multiply by k, coefficient spacing
    becomes k (zeros interleaved)."""
    if s.is_zero:
        return s
    coeffs = []
    for c in s.coeffs:
        coeffs.append(c)
        coeffs.extend([0.0] * (k - 1))
    return Series.make(s.exponent * k, coeffs[:len(s.coeffs)],
                       branch=s.branch)


def caustic_forms(data: CanonicalData) -> CausticForms:
    q = data.hopf
    if q.is_zero:
        raise CausticError("umbilic data: the Hopf coefficient vanishes")
    rho = data.rho
    if rho.is_zero:
        raise CausticError("rho vanishes identically")
    dlog = rho.differentiate() / rho
    cover = Fraction(q.order()).denominator != 1 or q.order() % 2 != 0
    if cover:
        # move to w with z = w^2; one-forms pick up the Jacobian 2 w
        jac = Series.monomial(2.0, 1, q.truncation)
        q = _cover_pullback(q) * jac * jac
        dlog = _cover_pullback(dlog) * jac
    root = q.sqrt()
    quarter = dlog * 0.25
    omega_c = root * 1j + quarter
    theta_c = root * (-1j) + quarter
    hopf_c = q + quarter * quarter
    rho_c = theta_c / omega_c
    return CausticForms(omega_c, theta_c, hopf_c, rho_c, cover)


def caustic_rho_derivative(data: CanonicalData, G: Series,
                           Gstar: Series) -> Series:
    """d(log rho_c) of the caustic via the Schwarzian route:
    i sqrt(q) (S(G_*) - S(G)) / (2 q_c)."""
    forms = caustic_forms(data)
    sdiff = schwarzian(Gstar) - schwarzian(G)
    return data.hopf.sqrt() * 1j * sdiff / (forms.hopf * 2.0)


@dataclass(frozen=True)
class CausticEndReport:
    """Pitch data of a caustic end, sitting either over an end of the
    front ('end') or over an interior umbilic ('umbilic')."""

    kind: str
    n: Fraction            # cuspidal-edge count parameter (may be a
                           # half-integer before passing to the cover)
    m: Fraction            # multiplicity parameter
    pitch: Fraction
    double_cover: bool


def caustic_end_pitch(G: Series, Gstar: Series, kind: str,
                      multiplicity: Optional[int] = None,
                      end_report: Optional[EndReport] = None
                      ) -> CausticEndReport:
    """Caustic pitch over a marked point from local Gauss-map data.

    ``kind`` is 'end' (needs the front multiplicity there) or 'umbilic'.
    A snowman end contributes a closed caustic end: pitch 0.
    """
    dG = G.differentiate()
    dGs = Gstar.differentiate()
    diff = G - Gstar
    q = -(dG * dGs) * diff.inverse().pow_int(2)
    ordq = q.order()
    sdiff = schwarzian(Gstar) - schwarzian(G)
    if sdiff.is_zero:
        raise CausticError("Schwarzians agree to truncation: "
                           "cannot read the caustic cusp order")
    ords = sdiff.order()
    half = Fraction(ordq) / 2
    n_c = half + ords + 3
    if kind == "end":
        if multiplicity is None:
            raise CausticError("front multiplicity required at an end")
        m_c = half + multiplicity + 1
    elif kind == "umbilic":
        m_c = half
    else:
        raise CausticError(f"unknown kind {kind!r}")
    if m_c <= 0:
        raise CausticError(f"non-positive caustic multiplicity {m_c}")
    cover = (Fraction(ordq).denominator != 1
             or ordq % 2 != 0)
    if end_report is not None and end_report.end_type is EndType.SNOWMAN:
        pitch = Fraction(0)
    else:
        pitch = Fraction(n_c) / Fraction(m_c)
    return CausticEndReport(kind, Fraction(n_c), Fraction(m_c), pitch,
                            bool(cover))
