"""Built-in front data used by the command line tool and the test suite.

Each entry holds closed-form holomorphic data: either a Gauss map with
the dominant canonical form (kind 'g_omega'), or the pair of hyperbolic
Gauss maps (kind 'gauss_pair').  Lifts are produced as local series
expansions around any marked point, including infinity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple, Union

from .exprs import INFINITY, Expression
from .front import Lift, lift_from_g_omega, lift_from_gauss_pair
from .series import DEFAULT_TRUNCATION, FractionalLaurentSeries

Point = Union[complex, str]


@dataclass(frozen=True)
class FrontSpec:
    """Closed-form recipe for a front with marked end points."""

    name: str
    kind: str                    # 'g_omega' | 'gauss_pair'
    g: str                       # Gauss map G(z)
    partner: str                 # omega coefficient or second Gauss map
    delta: complex = 1.0
    ends: Tuple[Point, ...] = (0.0,)
    description: str = ""

    def gauss_expression(self) -> Expression:
        return Expression(self.g)

    def partner_expression(self) -> Expression:
        return Expression(self.partner)

    def lift_at(self, point: Point = 0.0,
                truncation: int = DEFAULT_TRUNCATION) -> Lift:
        """Series lift around the marked point (local parameter w, with
        z = point + w, or z = 1/w at infinity)."""
        G = Expression(self.g).series_at(point, truncation)
        P = Expression(self.partner).series_at(point, truncation)
        if self.kind == "g_omega":
            if point == INFINITY:
                # pull the one-form back: omega_hat(z) dz
                #   -> -omega_hat(1/w) w^-2 dw
                P = -(P * FractionalLaurentSeries.monomial(1.0, -2,
                                                           truncation))
            om = Expression(self.partner)
            return lift_from_g_omega(G, P, omega_fn=(lambda z: om(z)))
        if self.kind == "gauss_pair":
            return lift_from_gauss_pair(G, P, self.delta)
        raise ValueError(f"unknown kind {self.kind!r}")

    def end_points(self) -> Tuple[Point, ...]:
        return self.ends


def _roots_of_unity(k: int) -> Tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * j / k) for j in range(k))


def _surface_of_revolution(name, m: int, alpha, desc) -> FrontSpec:
    g = "z" if m == 1 else f"z^{m}"
    return FrontSpec(name=name, kind="gauss_pair", g=g,
                     partner=f"({alpha})*{g}", ends=(0.0, INFINITY),
                     description=desc)


REGISTRY: Dict[str, FrontSpec] = {}


def _register(spec: FrontSpec) -> FrontSpec:
    REGISTRY[spec.name] = spec
    return spec


HOROSPHERE = _register(FrontSpec(
    name="horosphere", kind="g_omega", g="z", partner="-z^-2",
    ends=(0.0,),
    description="totally umbilic front: a horosphere"))

SNOWMAN = _register(_surface_of_revolution(
    "snowman", 1, "1/2",
    "rotational front with a bulge chain; end ratio 1/2, pitch -3/4"))

SNOWMAN_M2 = _register(FrontSpec(
    name="snowman_m2", kind="gauss_pair", g="z^2", partner="(-1/2)*z^2",
    ends=(0.0, INFINITY),
    description="rotational front, multiplicity 2, end ratio -1/2"))

HOURGLASS = _register(_surface_of_revolution(
    "hourglass", 1, "-1/2",
    "rotational front with a neck; end ratio -1/2, pitch -1/4"))

CYLINDER = _register(_surface_of_revolution(
    "cylinder", 1, "-1",
    "rotational cylindrical end, complete (pitch 0)"))

NODE_SPIRAL = _register(FrontSpec(
    name="node_spiral", kind="g_omega", g="z",
    partner="-z^-5*exp(2*z^3)", ends=(0.0,),
    description="complete end of pitch -4/5 whose slice nodes wind off "
                "a centered axis"))

CUSPED_CYLINDER = _register(FrontSpec(
    name="cusped_cylinder", kind="g_omega", g="z",
    partner="-1/2*z^-1*(1+z^2)^2", ends=(0.0,),
    description="incomplete cylindrical end, multiplicity 1 with 4 "
                "cuspidal edges; slices converge to the two-cusp "
                "hypocycloid shape"))


def knoid(k: int) -> FrontSpec:
    """Rotationally symmetric k-ended front: Gauss maps z and z^(1-k)."""
    return FrontSpec(
        name=f"knoid{k}", kind="gauss_pair", g="z",
        partner=f"z^({1 - k})", ends=_roots_of_unity(k),
        description=f"{k}-ended symmetric front with hourglass ends")


def dihedral(k: int, d: int) -> FrontSpec:
    """Front with two horospherical ends (0 and infinity) and d snowman
    ends at the d-th roots of unity: Gauss maps z^k and z^(k+d)."""
    return FrontSpec(
        name=f"dihedral_k{k}_d{d}", kind="gauss_pair",
        g="z" if k == 1 else f"z^{k}", partner=f"z^{k + d}",
        ends=(0.0,) + _roots_of_unity(d) + (INFINITY,),
        description=f"{d + 2}-ended front with horospherical and snowman "
                    "ends")


for _k in (3, 4, 5):
    _register(knoid(_k))
for _kd in ((1, 3), (2, 2)):
    _register(dihedral(*_kd))


def get(name: str) -> FrontSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"no bundled front named {name!r}; "
                       f"known: {', '.join(sorted(REGISTRY))}") from None


def names() -> Sequence[str]:
    return sorted(REGISTRY)
