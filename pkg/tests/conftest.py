"""Shared fixtures: series shorthand and bundled front access."""

import numpy as np
import pytest

from flatfront.series import FractionalLaurentSeries as S

N = 24


@pytest.fixture
def z():
    return S.monomial(1.0, 1, N)


def series(exponent, *coeffs):
    return S.make(exponent, list(coeffs) + [0.0] * N)


def assert_series_close(a, b, tol=1e-10, msg=""):
    d = a - b
    if d.is_zero:
        return
    scale = max(a.scale_magnitude(), b.scale_magnitude(), 1.0)
    assert d.scale_magnitude() <= tol * scale, \
        f"{msg} series differ by {d.scale_magnitude():.3e}"


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)
