"""Lift construction, canonical forms, parallel family, duality."""

import numpy as np
import pytest

from flatfront import bundled
from flatfront.front import (canonical_data, continue_lift,
                             hopf_from_schwarzians,
                             schwarzian_identity_residual)
from flatfront.series import FractionalLaurentSeries as S

from conftest import assert_series_close


ALL_FRONTS = bundled.names()


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_lift_has_unit_determinant(name):
    spec = bundled.get(name)
    for pt in spec.ends:
        lift = spec.lift_at(pt)
        assert lift.determinant_defect() < 1e-9


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_canonical_forms_have_no_diagonal_residual(name):
    spec = bundled.get(name)
    lift = spec.lift_at(spec.ends[0])
    data = canonical_data(lift)
    assert data.diagonal_residual < 1e-9


def test_g_omega_lift_reproduces_omega():
    # For the (G, omega) construction the first canonical form must be
    # the prescribed coefficient.
    spec = bundled.get("node_spiral")
    lift = spec.lift_at(0.0)
    data = canonical_data(lift)
    om = spec.partner_expression().series_at(0.0, 24)
    assert_series_close(data.omega, om, tol=1e-9)


def test_gauss_pair_lift_reproduces_both_maps():
    spec = bundled.get("knoid3")
    lift = spec.lift_at(1.0)
    G, Gs = lift.gauss_maps()
    Ge = spec.gauss_expression().series_at(1.0, 24)
    Gse = spec.partner_expression().series_at(1.0, 24)
    assert_series_close(G, Ge, tol=1e-8)
    assert_series_close(Gs, Gse, tol=1e-8)


def test_parallel_family_scales_canonical_forms():
    lift = bundled.get("snowman").lift_at(0.0)
    d0 = canonical_data(lift)
    t = 0.37
    dt = canonical_data(lift.parallel(t))
    assert_series_close(dt.omega, d0.omega * float(np.exp(t)), tol=1e-9)
    assert_series_close(dt.theta, d0.theta * float(np.exp(-t)), tol=1e-9)
    assert_series_close(dt.hopf, d0.hopf, tol=1e-9)


def test_dual_swaps_canonical_forms():
    lift = bundled.get("snowman").lift_at(0.0)
    d0 = canonical_data(lift)
    dd = canonical_data(lift.dual())
    assert_series_close(dd.omega, d0.theta, tol=1e-9)
    assert_series_close(dd.theta, d0.omega, tol=1e-9)


def test_left_translation_preserves_canonical_forms():
    lift = bundled.get("node_spiral").lift_at(0.0)
    u = np.array([[1.0, 0.3 - 0.2j], [0.0, 1.0]])
    d0 = canonical_data(lift)
    d1 = canonical_data(lift.left_translate(u))
    assert_series_close(d1.omega, d0.omega, tol=1e-8)
    assert_series_close(d1.theta, d0.theta, tol=1e-8)


def test_surface_point_is_positive_hermitian():
    lift = bundled.get("hourglass").lift_at(0.0)
    f = lift.surface_point(0.2, 0.9)
    assert np.allclose(f, f.conj().T)
    assert np.linalg.det(f).real == pytest.approx(1.0, abs=1e-9)
    assert np.trace(f).real > 0


def test_normal_is_unit_spacelike():
    from flatfront.geometry import minkowski_inner
    lift = bundled.get("hourglass").lift_at(0.0)
    f = lift.surface_point(0.2, 0.9)
    nu = lift.normal(0.2, 0.9)
    assert minkowski_inner(nu, nu) == pytest.approx(1.0, abs=1e-9)
    assert minkowski_inner(f, nu) == pytest.approx(0.0, abs=1e-9)


def test_hopf_from_schwarzians_matches_product():
    spec = bundled.get("knoid3")
    G = spec.gauss_expression().series_at(1.0, 24)
    Gs = spec.partner_expression().series_at(1.0, 24)
    lift = spec.lift_at(1.0)
    data = canonical_data(lift)
    assert_series_close(hopf_from_schwarzians(G, Gs), data.hopf, tol=1e-8)


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_schwarzian_identity(name):
    spec = bundled.get(name)
    for pt in spec.ends:
        lift = spec.lift_at(pt)
        data = canonical_data(lift)
        G, _ = lift.gauss_maps()
        res = schwarzian_identity_residual(G, data.omega, data.hopf)
        assert res < 1e-9, f"{name} at {pt}: residual {res:.2e}"


def test_ode_continuation_matches_series():
    # continue the lift from a series seed and compare with direct series
    # evaluation at the target point
    spec = bundled.get("node_spiral")
    lift = spec.lift_at(0.0)
    om = spec.partner_expression()
    theta = canonical_data(lift).theta
    z0, z1 = 0.15 + 0j, 0.15 + 0.2j
    E0 = lift.evaluate(z0)
    E1, drift = continue_lift(E0, z0, z1, omega_fn=lambda z: om(z),
                              theta_fn=lambda z: theta.evaluate(z))
    assert drift < 1e-9
    assert np.allclose(E1, lift.evaluate(z1), atol=1e-8)


def test_covering_sheets():
    # knoid3 at a root of unity carries exponent denominators 3
    lift = bundled.get("knoid3").lift_at(1.0)
    assert lift.covering_sheets() == 3
    lift_int = bundled.get("snowman").lift_at(0.0)
    assert lift_int.covering_sheets() == 1
