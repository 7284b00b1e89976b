"""Classification of regular ends of flat fronts.

All order bookkeeping is exact: orders of the canonical forms are rational
numbers carried by the series layer, the end ratio alpha is reconstructed
as an exact fraction from those orders, and the pitch of an end is an
exact rational.  Numeric coefficients only enter through vanishing tests
and cross-checks.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .front import CanonicalData, Lift, canonical_data
from .geometry import INF, BoundaryPoint
from .series import FractionalLaurentSeries, SeriesError, rationalize

Series = FractionalLaurentSeries


class EndError(ValueError):
    pass


class EndType(enum.Enum):
    HOROSPHERICAL = "horospherical"
    SNOWMAN = "snowman"
    HOURGLASS = "hourglass"
    CYLINDRICAL = "cylindrical"


@dataclass(frozen=True)
class EndReport:
    """Full classification of one regular end."""

    multiplicity: int                  # m: winding of the boundary curve
    mu: Fraction                       # order of omega at the end
    mu_star: Fraction                  # order of theta at the end
    hopf_order: Fraction               # order of the Hopf coefficient
    alpha: Fraction                    # dominant-normalized end ratio
    end_type: EndType
    complete: bool
    pitch: Fraction
    dominant_swapped: bool             # True if (G_*, theta) is dominant
    ramification: Optional[int] = None   # n, for cylindrical ends
    cuspidal_components: Optional[int] = None  # 2n on incomplete ends
    hopf_top: Optional[complex] = None   # coefficient of z^-2 in the Hopf term


def end_orders(data: CanonicalData) -> Tuple[Fraction, Fraction, Fraction]:
    """(mu, mu_star, ord Q) with the regularity constraint ord Q >= -2."""
    mu = data.omega.order()
    mu_star = data.theta.order()
    ordq = data.hopf.order()
    if ordq != mu + mu_star:
        raise EndError("inconsistent orders of canonical forms")
    if ordq < -2:
        raise EndError(f"irregular end: ord Q = {ordq} < -2")
    return mu, mu_star, ordq


def multiplicity_and_ratio(G: Series, Gstar: Series,
                           tol: float = 1e-8):
    """Multiplicity m and numeric end ratio of a Gauss-map pair at the
    marked point.

    Returns (m, ratio, swapped): ratio is the derivative quotient of the
    subordinate map by the dominant one, already inverted when the second
    map dominates.
    """
    if G.order() < 0 or Gstar.order() < 0:
        # the common value is infinity: invert both
        G, Gstar = G.inverse(), Gstar.inverse()
    a = G.coefficient(0)
    a2 = Gstar.coefficient(0)
    g = G - a
    gs = Gstar - a
    if abs(a - a2) > tol * max(1.0, abs(a)):
        raise EndError("Gauss maps do not meet at the end")
    m1, m2 = g.order(), gs.order()
    for mm in (m1, m2):
        if mm == math.inf or Fraction(mm).denominator != 1 or mm < 1:
            raise EndError("Gauss map is not a finite branched cover here")
    m1, m2 = int(m1), int(m2)
    if m1 < m2:
        return m1, 0.0, False
    if m2 < m1:
        return m2, 0.0, True
    ratio = gs.leading_coefficient() / g.leading_coefficient()
    if abs(ratio.imag) > tol * max(1.0, abs(ratio)):
        raise EndError(f"end ratio {ratio} is not real")
    r = ratio.real
    if abs(r) > 1.0:
        return m1, 1.0 / r, True
    if r == 1.0:
        raise EndError("degenerate end ratio 1")
    return m1, r, False


def _alpha_candidates(mu: Fraction, mu_star: Fraction, m: int):
    """Exact end ratio from  mu = -((1+alpha)/(1-alpha)) m - 1, using
    whichever of the two canonical orders yields a value in [-1, 1)."""
    out = []
    for order, swapped in ((Fraction(mu), False), (Fraction(mu_star), True)):
        den = 1 + order - m
        if den == 0:
            continue
        a = (1 + order + m) / den
        if -1 <= a < 1:
            out.append((a, swapped))
    return out


def classify_end(lift: Lift, data: Optional[CanonicalData] = None,
                 tol: float = 1e-8) -> EndReport:
    """Classify the end of a lift at its marked point."""
    if data is None:
        data = canonical_data(lift)
    if data.theta.is_zero:
        # totally umbilic: the front is a horosphere
        G, _ = lift.gauss_maps()
        g0 = G - G.coefficient(0)
        m = int(g0.order())
        return EndReport(multiplicity=m, mu=data.omega.order(),
                         mu_star=Fraction(0), hopf_order=Fraction(0),
                         alpha=Fraction(0),
                         end_type=EndType.HOROSPHERICAL, complete=True,
                         pitch=Fraction(-1, 2), dominant_swapped=False,
                         hopf_top=0.0)
    mu, mu_star, ordq = end_orders(data)
    G, Gstar = lift.gauss_maps()
    m, ratio, swapped_numeric = multiplicity_and_ratio(G, Gstar, tol)

    cands = _alpha_candidates(mu, mu_star, m)
    if not cands:
        raise EndError(f"no admissible end ratio for mu={mu}, mu*={mu_star}")
    alpha, swapped = cands[0]
    if abs(float(alpha) - ratio) > max(1e-6, tol * 10):
        # exact route disagrees with the derivative quotient: the data is
        # not a regular end in this normalization
        raise EndError(
            f"end ratio mismatch: exact {alpha}, numeric {ratio}")

    if alpha == 0:
        etype = EndType.HOROSPHERICAL
    elif alpha == -1:
        etype = EndType.CYLINDRICAL
    elif alpha > 0:
        etype = EndType.SNOWMAN
    else:
        etype = EndType.HOURGLASS

    rho0 = abs(data.rho.leading_coefficient()) \
        if (not data.rho.is_zero and data.rho.order() == 0) else 0.0
    incomplete = (etype is EndType.CYLINDRICAL
                  and abs(rho0 - 1.0) < 1e-6)

    ram = None
    cusps = None
    if etype is EndType.CYLINDRICAL:
        rho_constant = (data.rho.differentiate() / data.rho).is_zero
        if rho_constant and incomplete:
            raise EndError("degenerate cylindrical end: the front "
                           "collapses to a geodesic")
        if not rho_constant:
            ram = rho_ramification(data, (G, Gstar))
            cusps = 2 * ram if incomplete else None
    if incomplete:
        pitch = Fraction(ram, m)
    else:
        pitch = -(1 + alpha) / 2

    qtop = data.hopf.coefficient(-2) if ordq <= -2 else 0.0
    expected = -m * m * float(alpha) / float((1 - alpha) ** 2)
    if abs(qtop - expected) > 1e-6 * max(1.0, abs(expected)):
        raise EndError(
            f"top Hopf coefficient {qtop} != -m^2 a/(1-a)^2 = {expected}")

    return EndReport(multiplicity=m, mu=mu, mu_star=mu_star, hopf_order=ordq,
                     alpha=alpha, end_type=etype,
                     complete=not incomplete, pitch=pitch,
                     dominant_swapped=swapped,
                     ramification=ram, cuspidal_components=cusps,
                     hopf_top=qtop)


def rho_ramification(data: CanonicalData,
                     gauss_pair: Optional[Tuple[Series, Series]] = None,
                     tol: float = 1e-8) -> int:
    """Ramification index n of the singular-set data at a cylindrical end:
    1 + order of d(log rho).

    Computed from the canonical forms and, when the Gauss maps are
    supplied, cross-checked against the equivalent combination

        G_*''/G_*' - G''/G' + 2 (G' + G_*')/(G - G_*).
    """
    rho = data.rho
    if rho.is_zero:
        raise EndError("rho vanishes identically")
    dlog = rho.differentiate() / rho
    if dlog.is_zero:
        raise EndError("rho is constant: rotational end")
    n = dlog.order() + 1
    if Fraction(n).denominator != 1 or n < 1:
        raise EndError(f"non-integral ramification order {n}")
    n = int(n)
    if gauss_pair is not None:
        alt = _dlog_from_gauss(*gauss_pair)
        n_alt = alt.order() + 1
        if n_alt != n:
            raise EndError(
                f"ramification routes disagree: {n} vs {n_alt}")
        lead = dlog.leading_coefficient()
        lead_alt = alt.leading_coefficient()
        if abs(lead - lead_alt) > 1e-6 * max(1.0, abs(lead)):
            raise EndError("ramification leading terms disagree")
    return n


def _dlog_from_gauss(G: Series, Gs: Series) -> Series:
    dG, dGs = G.differentiate(), Gs.differentiate()
    return (dGs.differentiate() / dGs - dG.differentiate() / dG
            + (dG + dGs) * (G - Gs).inverse() * 2.0)


# -- indentation ----------------------------------------------------------

@dataclass(frozen=True)
class IndentationSample:
    endpoint: BoundaryPoint
    order: Fraction  # ramification order of the comparison function


@dataclass(frozen=True)
class IndentationReport:
    """How horosphere-tangency varies with the geodesic used to probe the
    end: constant (horospherical), bounded by the multiplicity with no
    special direction (centerless), or jumping along a single principal
    axis (centered)."""

    kind: str                       # 'horospherical' | 'centerless' |
                                    # 'centered' | 'rotational'
    n: Optional[int]                # max tangency jump (None if infinite)
    principal_endpoint: Optional[BoundaryPoint]
    samples: List[IndentationSample] = field(default_factory=list)


def _tangency_series(G: Series, Gs: Series,
                     endpoint: BoundaryPoint) -> Series:
    """Comparison function ((1 - G/a)/(1 - G_*/a))^2 dG_*/dG for the
    geodesic with second ideal endpoint a (a=INF gives the vertical)."""
    base = Gs.differentiate() / G.differentiate()
    if endpoint == INF:
        return base
    a = complex(endpoint)
    one = Series.constant(1.0, G.truncation)
    num = one - G / a
    den = one - Gs / a
    return (num / den).pow_int(2) * base


def _jump_order(A: Series) -> Fraction:
    """Order of A - A(0); inf for constant A."""
    if A.is_zero:
        return math.inf
    drop = A - A.coefficient(0)
    return drop.order() if not drop.is_zero else math.inf


def indentation(G: Series, Gstar: Series,
                probe_endpoints: Sequence[complex] = (),
                tol: float = 1e-8) -> IndentationReport:
    """Probe an end with geodesics through its limit point.

    Expects the pair normalized so both Gauss maps vanish at the marked
    point (the end sits over the boundary origin, axis vertical)."""
    m, ratio, swapped = multiplicity_and_ratio(G, Gstar, tol)
    if swapped:
        G, Gstar = Gstar, G
    a0 = G.coefficient(0)
    if abs(a0) > tol:
        G = G - a0
        Gstar = Gstar - a0

    samples = []

    def probe(a) -> Fraction:
        l = _jump_order(_tangency_series(G, Gstar, a))
        samples.append(IndentationSample(a, l))
        return l

    l_axis = probe(INF)
    for a in probe_endpoints:
        probe(a)

    if abs(ratio) < tol:
        return IndentationReport("horospherical", None, None, samples)
    if l_axis == math.inf:
        return IndentationReport("rotational", None, INF, samples)
    if l_axis < m:
        return IndentationReport("centerless", int(l_axis), None, samples)
    if l_axis > m:
        return IndentationReport("centered", int(l_axis), INF, samples)

    # l_axis == m: the coefficient of z^m in the comparison function is
    # affine in 1/a; its unique zero is the principal-axis endpoint
    A1 = _tangency_series(G, Gstar, 1.0)
    A2 = _tangency_series(G, Gstar, 2.0)
    c1 = (A1 - A1.coefficient(0)).coefficient(m)
    c2 = (A2 - A2.coefficient(0)).coefficient(m)
    # c(a) = k0 + k1/a, so c(1) = k0 + k1 and c(2) = k0 + k1/2
    k1 = 2.0 * (c1 - c2)
    k0 = c1 - k1
    if abs(k1) < tol * max(1.0, abs(k0)) or abs(k0) < tol * abs(k1):
        # no usable finite zero: every geodesic sees the same jump
        return IndentationReport("centerless", m, None, samples)
    a_star = -k1 / k0
    l_star = probe(a_star)
    if l_star == math.inf or l_star <= m:
        return IndentationReport("centerless", m, None, samples)
    return IndentationReport("centered", int(l_star), complex(a_star),
                             samples)


# -- canonical rescaling of omega -----------------------------------------

@dataclass(frozen=True)
class NormalizedOmega:
    """Result of bringing omega to its model form by z = k w:

    non-cylindrical:  -m z^mu (1 + b z^l + higher)^2 dz  with b > 0,
    cylindrical:      -lam z^-1 (1 + z^l + higher)^2 dz.
    """

    k: complex
    omega: Series
    l: int
    b: Optional[float] = None          # non-cylindrical amplitude
    lam: Optional[float] = None        # cylindrical leading magnitude
    incomplete: Optional[bool] = None  # cylindrical: lam == m/2
    rotational: bool = False


def normalize_omega(omega: Series, m: int,
                    tol: float = 1e-10) -> NormalizedOmega:
    """Rescale the coordinate so the dominant canonical form takes its
    model shape; the perturbation order l and amplitude feed the slice
    asymptotics."""
    mu = omega.order()
    c0 = omega.leading_coefficient()
    unit = omega / Series.monomial(c0, mu, omega.truncation)
    v = unit.sqrt()
    pert = v - 1.0
    if pert.is_zero:
        return NormalizedOmega(1.0, omega, 0, rotational=True)
    l_f = pert.order()
    if Fraction(l_f).denominator != 1 or l_f < 1:
        raise EndError(f"non-integral perturbation order {l_f}")
    l = int(l_f)
    b0 = pert.leading_coefficient()

    if mu == -1:
        k = (abs(b0) ** (-1.0 / l)
             * cmath.exp(-1j * cmath.phase(b0) / l))
        lam = abs(c0)
        scaled = omega.rescale(k) * k
        return NormalizedOmega(k, scaled, l, lam=lam,
                               incomplete=abs(lam - m / 2.0) < 1e-9)

    kappa = abs(m / c0) ** (1.0 / float(mu + 1))
    beta = -cmath.phase(b0) / l
    k = kappa * cmath.exp(1j * beta)
    scaled = omega.rescale(k) * k
    b = abs(b0) * kappa ** l
    return NormalizedOmega(k, scaled, l, b=b)


# -- asymptotic profiles --------------------------------------------------

def radial_correction(p: float, j: int, m: int):
    """Profile term 2(p+1) cos(j t) h^{j(1+p)/m} of a complete slice."""
    beta = j * (1.0 + p) / m

    def term(h, t):
        return 2.0 * (p + 1.0) * np.cos(j * np.asarray(t)) * h ** beta

    return term, beta


def vertical_correction(p: float):
    """Height correction -h^{-2p}/(4(p+1)) of a complete slice."""

    def term(h):
        return -(h ** (-2.0 * p)) / (4.0 * (p + 1.0))

    return term


def oval_profile(m: int, l: int, c: float):
    """Closed profile curve of a cylindrical-end slice correction:

        ((4c^2+m^2)/(4cm))^{l/m} [ 2(c + m^2/(4c)) cos(l t)
                                   - i (m l / c) sin(l t) ].
    """
    amp = ((4.0 * c * c + m * m) / (4.0 * c * m)) ** (l / m)

    def curve(t):
        t = np.asarray(t)
        return amp * (2.0 * (c + m * m / (4.0 * c)) * np.cos(l * t)
                      - 1j * (m * l / c) * np.sin(l * t))

    return curve


@dataclass(frozen=True)
class AsymptoticProfile:
    """Predicted shape of horosphere slices near an end, with the height
    exponent governing the slice scale."""

    kind: str            # 'complete' | 'cylindrical' | 'incomplete'
    m: int
    beta: float          # |zeta/h| ~ const * h^beta
    curve: object        # callable t -> complex profile (normalized)


def asymptotic_profile(report: EndReport) -> AsymptoticProfile:
    from .cycloid import cycloid_curve  # local import to avoid a cycle

    m = report.multiplicity
    p = float(report.pitch)
    if not report.complete:
        n = report.ramification
        gamma = cycloid_curve(m, n)
        return AsymptoticProfile("incomplete", m, n / m,
                                 lambda t: gamma(np.asarray(t) / m))
    if report.end_type is EndType.CYLINDRICAL:
        return AsymptoticProfile(
            "cylindrical", m, 0.0,
            lambda t: np.exp(1j * m * np.asarray(t)) / m)
    return AsymptoticProfile(
        "complete", m, p,
        lambda t: np.exp(1j * m * np.asarray(t)))
