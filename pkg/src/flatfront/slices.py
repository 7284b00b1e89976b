"""Horosphere slices of a front near an end, and numeric estimation of
the end's pitch and asymptotic shape from them.

A slice at height h is the curve  t -> zeta/h  cut out of the surface by
the horosphere of Euclidean height h in the upper-half-space chart; the
scaled boundary coordinate zeta/h is invariant under the horosphere's
intrinsic scaling.  Near a regular end the slice scale behaves like
h^beta where beta is the pitch (complete case) or the cusp ratio n/m
(incomplete case), so a log-log regression over a ladder of heights
recovers the pitch.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .front import Lift


class SliceError(ValueError):
    pass


@dataclass(frozen=True)
class SliceCurve:
    height: float
    t: np.ndarray        # angles in [0, 2 pi)
    radii: np.ndarray    # solved radial coordinates
    points: np.ndarray   # zeta/h along the curve


def max_threads() -> int:
    """Worker cap from FLATFRONT_THREADS (default 1; sampling is
    vectorized, so this only matters for batches of heights)."""
    try:
        return max(1, int(os.environ.get("FLATFRONT_THREADS", "1")))
    except ValueError:
        return 1


def _height_and_zeta(lift: Lift, r, t):
    """(height, zeta/height): the second output is the horosphere-scaled
    boundary coordinate, h^-1 times the boundary projection."""
    E = lift.evaluate_polar(r, t)
    e11, e12 = E[..., 0, 0], E[..., 0, 1]
    e21, e22 = E[..., 1, 0], E[..., 1, 1]
    denom = np.abs(e21) ** 2 + np.abs(e22) ** 2
    return 1.0 / denom, e11 * np.conj(e21) + e12 * np.conj(e22)


def horosphere_slice(lift: Lift, h: float, n_t: int = 512,
                     r_bracket: Tuple[float, float] = (1e-8, 0.5),
                     n_scan: int = 220, n_bisect: int = 80) -> SliceCurve:
    """Solve height(r, t) = h along each ray and return the scaled slice.

    The height must cross h exactly once on the radial bracket (monotone
    enough data); violations raise SliceError.
    """
    t = np.linspace(0.0, 2.0 * math.pi, n_t, endpoint=False)
    r_lo, r_hi = r_bracket
    rs = np.exp(np.linspace(math.log(r_lo), math.log(r_hi), n_scan))
    H, _ = _height_and_zeta(lift, rs[:, None], t[None, :])
    below = H < h
    if not below[0].all():
        raise SliceError("height bracket too large at the inner radius")
    if below[-1].all():
        raise SliceError("height bracket never reaches the target")
    # last scan index still below the target, per ray
    idx = below.shape[0] - 1 - np.argmax(below[::-1], axis=0)
    idx = np.clip(idx, 0, n_scan - 2)
    lo = rs[idx]
    hi = rs[idx + 1]
    for _ in range(n_bisect):
        mid = np.sqrt(lo * hi)
        Hm, _ = _height_and_zeta(lift, mid, t)
        take_lo = Hm < h
        lo = np.where(take_lo, mid, lo)
        hi = np.where(take_lo, hi, mid)
    r = np.sqrt(lo * hi)
    Hf, scaled = _height_and_zeta(lift, r, t)
    if np.max(np.abs(Hf - h)) > 1e-8 * h:
        raise SliceError("radial solve did not converge")
    return SliceCurve(h, t, r, scaled)


def slice_ladder(lift: Lift, heights: Sequence[float],
                 **kw) -> List[SliceCurve]:
    return [horosphere_slice(lift, h, **kw) for h in heights]


# -- pitch estimation -----------------------------------------------------

@dataclass(frozen=True)
class PitchEstimate:
    slope: float        # estimated pitch (or cusp ratio)
    intercept: float
    stderr: float
    heights: Tuple[float, ...]
    scales: Tuple[float, ...]


def estimate_pitch(slices: Sequence[SliceCurve]) -> PitchEstimate:
    """Least-squares slope of log(mean slice scale) against log h."""
    if len(slices) < 2:
        raise SliceError("need at least two heights")
    hs = np.array([s.height for s in slices])
    scales = np.array([np.mean(np.abs(s.points)) for s in slices])
    x = np.log(hs)
    y = np.log(scales)
    A = np.stack([x, np.ones_like(x)], axis=1)
    coef, res, _, _ = np.linalg.lstsq(A, y, rcond=None)
    dof = max(len(hs) - 2, 1)
    rss = float(res[0]) if res.size else 0.0
    sxx = float(np.sum((x - x.mean()) ** 2))
    stderr = math.sqrt(rss / dof / sxx) if sxx > 0 else math.inf
    return PitchEstimate(float(coef[0]), float(coef[1]), stderr,
                         tuple(hs), tuple(scales))


# -- shape comparison -----------------------------------------------------

def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two sampled plane curves."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def fit_curve(t: np.ndarray, points: np.ndarray, model: Callable,
              n_scan: int = 256, refine: int = 48):
    """Align a sampled curve with a model curve by one parameter shift and
    one complex scale.

    The scale is closed-form least squares for each trial shift; the
    shift is located by a coarse scan plus golden-section refinement.
    Returns (shift, scale, relative rms residual).
    """
    t = np.asarray(t, dtype=float)
    pts = np.asarray(points, dtype=complex)
    norm = np.linalg.norm(pts)
    if norm == 0:
        raise SliceError("empty curve")

    def residual(tau):
        mv = np.asarray(model(t + tau), dtype=complex)
        den = np.vdot(mv, mv).real
        if den == 0:
            return math.inf, 0.0
        c = np.vdot(mv, pts) / den
        return float(np.linalg.norm(pts - c * mv) / norm), c

    taus = np.linspace(0.0, 2.0 * math.pi, n_scan, endpoint=False)
    vals = [residual(tau)[0] for tau in taus]
    k = int(np.argmin(vals))
    lo = taus[k] - 2.0 * math.pi / n_scan
    hi = taus[k] + 2.0 * math.pi / n_scan
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - phi * (hi - lo)
    x2 = lo + phi * (hi - lo)
    f1, f2 = residual(x1)[0], residual(x2)[0]
    for _ in range(refine):
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - phi * (hi - lo)
            f1 = residual(x1)[0]
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + phi * (hi - lo)
            f2 = residual(x2)[0]
    tau = (lo + hi) / 2.0
    r, c = residual(tau)
    return tau, c, r
