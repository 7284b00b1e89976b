"""Caustic canonical forms and caustic end pitch."""

from fractions import Fraction

import pytest

from flatfront import bundled
from flatfront.caustic import CausticError, caustic_end_pitch, caustic_forms
from flatfront.ends import classify_end
from flatfront.exprs import Expression, INFINITY
from flatfront.front import canonical_data

from conftest import assert_series_close


def _setup(name, pt):
    spec = bundled.get(name)
    lift = spec.lift_at(pt)
    data = canonical_data(lift)
    G = Expression(spec.g).series_at(pt, 24)
    if spec.kind == "gauss_pair":
        Gs = Expression(spec.partner).series_at(pt, 24)
    else:
        Gs = lift.gauss_maps()[1]
    return spec, lift, data, G, Gs


def test_caustic_forms_product_recovers_shifted_hopf():
    _, _, data, _, _ = _setup("snowman", 0.0)
    forms = caustic_forms(data)
    # omega_c * theta_c = q + (dlog rho / 4)^2  (the caustic Hopf coeff.)
    assert_series_close(forms.omega * forms.theta, forms.hopf, tol=1e-9)


def test_double_cover_flag_tracks_hopf_order_parity():
    # even order (every end has a double pole of q): base chart is fine;
    # odd-order umbilic zero of q: forms move to the w^2 = z cover
    for name, pt, expect in [("snowman", 0.0, False),
                             ("knoid3", 0.0, True)]:
        _, _, data, _, _ = _setup(name, pt)
        forms = caustic_forms(data)
        odd = data.hopf.order() % 2 != 0
        assert forms.double_cover == odd == expect
        # the product identity holds in either chart
        assert_series_close(forms.omega * forms.theta, forms.hopf,
                            tol=1e-9)


# name, pt, expected caustic pitch at the surface end
END_TABLE = [
    ("node_spiral", 0.0, Fraction(0)),      # snowman ends cap off
    ("knoid3", 1.0, Fraction(2)),
    ("knoid4", 1.0, Fraction(2)),
    ("cusped_cylinder", 0.0, Fraction(2)),
    ("dihedral_k1_d3", 0.0, Fraction(3, 5)),
    ("dihedral_k2_d2", 0.0, Fraction(2, 6)),
]


@pytest.mark.parametrize("name,pt,expect", END_TABLE,
                         ids=[f"{n}@{p}" for n, p, _ in END_TABLE])
def test_caustic_end_pitch(name, pt, expect):
    spec, lift, data, G, Gs = _setup(name, pt)
    rep = classify_end(lift, data)
    ce = caustic_end_pitch(G, Gs, "end", rep.multiplicity, rep)
    assert ce.pitch == expect


@pytest.mark.parametrize("k", [3, 4])
def test_umbilic_caustic_pitch(k):
    # away from the surface ends the knoid caustic has cone-like points
    # with exact pitch k/(k-2)
    spec = bundled.get(f"knoid{k}")
    for pt in (0.0, INFINITY):
        G = Expression(spec.g).series_at(pt, 24)
        Gs = Expression(spec.partner).series_at(pt, 24)
        ce = caustic_end_pitch(G, Gs, "umbilic")
        assert ce.pitch == Fraction(k, k - 2)


def test_rotational_symmetry_degenerates_the_caustic():
    # both Gauss maps Moebius -> identical Schwarzians -> caustic
    # collapses to the axis; the pitch is undefined and must say so
    spec, lift, data, G, Gs = _setup("cylinder", 0.0)
    rep = classify_end(lift, data)
    with pytest.raises(CausticError):
        caustic_end_pitch(G, Gs, "end", rep.multiplicity, rep)


def test_end_kind_requires_multiplicity():
    spec, lift, data, G, Gs = _setup("knoid3", 1.0)
    with pytest.raises(CausticError):
        caustic_end_pitch(G, Gs, "end")
