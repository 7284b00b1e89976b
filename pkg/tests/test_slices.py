"""Horosphere slices: extraction, pitch estimation, curve comparison."""

import math

import numpy as np
import pytest

from flatfront import bundled
from flatfront.cycloid import cycloid_curve
from flatfront.ends import classify_end
from flatfront.slices import (SliceError, estimate_pitch, hausdorff,
                              horosphere_slice, max_threads, slice_ladder)


def test_slice_points_lie_on_the_horosphere():
    lift = bundled.get("snowman").lift_at(0.0)
    h = 0.05
    s = horosphere_slice(lift, h, n_t=64, r_bracket=(1e-8, 0.6))
    assert s.height == h
    # radii solve |height(r e^{it})| = h to the bisection tolerance
    from flatfront.geometry import project_lift_to_uhs
    E = lift.evaluate_polar(s.radii, s.t)
    _, got_h = project_lift_to_uhs(E)
    assert np.allclose(got_h, h, rtol=1e-6)


@pytest.mark.parametrize("name", ["snowman", "horosphere", "node_spiral"])
def test_pitch_estimate_matches_exact_pitch(name):
    lift = bundled.get(name).lift_at(0.0)
    exact = float(classify_end(lift).pitch)
    heights = [10 ** (-1.5 - 0.5 * j) for j in range(5)]
    slices = slice_ladder(lift, heights, r_bracket=(1e-8, 0.8), n_t=96)
    est = estimate_pitch(slices)
    assert est.slope == pytest.approx(exact, abs=0.02)
    assert est.stderr < 0.05


def test_incomplete_slices_converge_to_cusped_curve():
    # normalized boundary curves of the cusped cylinder approach the
    # 4-cusped model curve as the horosphere shrinks
    lift = bundled.get("cusped_cylinder").lift_at(0.0)
    gamma = cycloid_curve(1, 2)
    model = gamma(np.linspace(0, 2 * math.pi, 720, endpoint=False))
    dists = []
    for h in (1e-1, 1e-2):
        s = horosphere_slice(lift, h, n_t=512, r_bracket=(1e-8, 0.4))
        norm = np.asarray(s.points) / h ** 2   # pitch 2 scaling
        # best similarity alignment via the curve's own magnitude
        scale = np.mean(np.abs(norm)) / np.mean(np.abs(model))
        dists.append(hausdorff(norm / scale, model))
    assert dists[1] < dists[0]
    assert dists[1] < 0.05 * 4.0  # within 5% of the model diameter


def test_estimate_pitch_needs_two_heights():
    lift = bundled.get("snowman").lift_at(0.0)
    s = horosphere_slice(lift, 0.05, n_t=32, r_bracket=(1e-8, 0.6))
    with pytest.raises(SliceError):
        estimate_pitch([s])


def test_hausdorff_oracle():
    a = np.array([0.0, 1.0, 1j])
    b = np.array([0.0, 1.0, 2j])
    assert hausdorff(a, b) == pytest.approx(1.0)
    assert hausdorff(a, a) == 0.0


def test_max_threads_env(monkeypatch):
    monkeypatch.setenv("FLATFRONT_THREADS", "3")
    assert max_threads() == 3
    monkeypatch.setenv("FLATFRONT_THREADS", "not-a-number")
    assert max_threads() >= 1
