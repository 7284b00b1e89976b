"""Exact end classification, indentation probes, coordinate normalization."""

from fractions import Fraction

import pytest

from flatfront import bundled
from flatfront.ends import (EndError, EndType, classify_end, indentation,
                            normalize_omega)
from flatfront.exprs import Expression
from flatfront.front import canonical_data
from flatfront.geometry import INF
from flatfront.series import FractionalLaurentSeries as S


# name, end point, expected (type, m, alpha, complete, pitch)
TABLE = [
    ("horosphere", 0.0, (EndType.HOROSPHERICAL, 1, Fraction(0),
                         True, Fraction(-1, 2))),
    ("snowman", 0.0, (EndType.SNOWMAN, 1, Fraction(1, 2),
                      True, Fraction(-3, 4))),
    ("snowman_m2", 0.0, (EndType.HOURGLASS, 2, Fraction(-1, 2),
                         True, Fraction(-1, 4))),
    ("hourglass", 0.0, (EndType.HOURGLASS, 1, Fraction(-1, 2),
                        True, Fraction(-1, 4))),
    ("cylinder", 0.0, (EndType.CYLINDRICAL, 1, Fraction(-1),
                       True, Fraction(0))),
    ("node_spiral", 0.0, (EndType.SNOWMAN, 1, Fraction(3, 5),
                          True, Fraction(-4, 5))),
    ("cusped_cylinder", 0.0, (EndType.CYLINDRICAL, 1, Fraction(-1),
                              False, Fraction(2))),
    ("knoid3", 1.0, (EndType.HOURGLASS, 1, Fraction(-1, 2),
                     True, Fraction(-1, 4))),
    ("knoid4", 1.0, (EndType.HOURGLASS, 1, Fraction(-1, 3),
                     True, Fraction(-1, 3))),
    ("knoid5", 1.0, (EndType.HOURGLASS, 1, Fraction(-1, 4),
                     True, Fraction(-3, 8))),
    ("dihedral_k1_d3", 0.0, (EndType.HOROSPHERICAL, 1, Fraction(0),
                             True, Fraction(-1, 2))),
    ("dihedral_k2_d2", 0.0, (EndType.HOROSPHERICAL, 2, Fraction(0),
                             True, Fraction(-1, 2))),
]


@pytest.mark.parametrize("k,d,pitch", [
    (1, 3, Fraction(-5, 8)), (2, 2, Fraction(-3, 4)),
])
def test_dihedral_unity_end_pitch(k, d, pitch):
    spec = bundled.get(f"dihedral_k{k}_d{d}")
    for pt in spec.ends:
        if pt in (0.0,) or pt == float("inf") or not isinstance(pt, complex):
            continue
        rep = classify_end(spec.lift_at(pt))
        assert rep.pitch == pitch


@pytest.mark.parametrize("name,pt,expect", TABLE,
                         ids=[f"{n}@{p}" for n, p, _ in TABLE])
def test_classification_table(name, pt, expect):
    etype, m, alpha, complete, pitch = expect
    rep = classify_end(bundled.get(name).lift_at(pt))
    assert rep.end_type is etype
    assert rep.multiplicity == m
    assert rep.alpha == alpha
    assert rep.complete is complete
    assert rep.pitch == pitch


def test_alpha_in_canonical_range():
    for name, pt, _ in TABLE:
        rep = classify_end(bundled.get(name).lift_at(pt))
        assert Fraction(-1) <= rep.alpha < Fraction(1)


def test_incomplete_end_reports_cuspidal_data():
    rep = classify_end(bundled.get("cusped_cylinder").lift_at(0.0))
    assert rep.ramification == 2
    assert rep.pitch == Fraction(2, 1)
    assert rep.cuspidal_components is not None


def test_pitch_is_parallel_invariant():
    lift = bundled.get("snowman").lift_at(0.0)
    base = classify_end(lift)
    for t in (-0.5, 0.3, 1.1):
        rep = classify_end(lift.parallel(t))
        assert rep.pitch == base.pitch
        assert rep.end_type is base.end_type


def test_dual_swaps_orders():
    lift = bundled.get("snowman").lift_at(0.0)
    rep = classify_end(lift)
    drep = classify_end(lift.dual())
    assert drep.mu == rep.mu_star
    assert drep.mu_star == rep.mu


# -- indentation ----------------------------------------------------------

def _series(expr, pt=0.0, n=24):
    return Expression(expr).series_at(pt, n)


def test_indentation_rotational_cylinder():
    rep = indentation(_series("z"), _series("-z"))
    assert rep.kind in ("rotational", "horospherical")


def test_indentation_centered_with_finite_axis_endpoint():
    # G = z, G_* = (3/5) z - (1/5) z^2: principal endpoint at a* = -1.2
    rep = indentation(_series("z"), _series("3/5*z - 1/5*z^2"))
    assert rep.kind == "centered"
    assert rep.principal_endpoint is not None
    assert rep.principal_endpoint != INF
    assert complex(rep.principal_endpoint) == pytest.approx(-1.2, abs=1e-8)


def test_indentation_centered_node_spiral_axis_is_vertical():
    spec = bundled.get("node_spiral")
    lift = spec.lift_at(0.0)
    G, Gs = lift.gauss_maps()
    rep = indentation(G, Gs)
    assert rep.kind == "centered"
    assert rep.principal_endpoint == INF or \
        abs(complex(rep.principal_endpoint)) > 1e6


# -- omega normalization --------------------------------------------------

def test_normalize_omega_rotational():
    om = S.monomial(-1.0, 1)  # -z dz, already model shape
    res = normalize_omega(om, 1)
    assert res.rotational


def test_normalize_omega_cylindrical_incomplete():
    # cusped cylinder: omega = -(1/2) z^-1 (1+z^2)^2 dz, lam = 1/2 = m/2
    om = _series("-(1+z^2)^2/(2*z)")
    res = normalize_omega(om, 1)
    assert res.lam == pytest.approx(0.5)
    assert res.incomplete
    assert res.l == 2


def test_classify_degenerate_pair_raises():
    lift = bundled.get("snowman").lift_at(0.0)
    # force omega == theta pathology via coinciding Gauss maps
    from flatfront.front import lift_from_gauss_pair, LiftError
    with pytest.raises((EndError, LiftError)):
        lift_from_gauss_pair(_series("z"), _series("z"))
    del lift
