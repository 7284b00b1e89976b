"""Deterministic report and geometry serialization.

JSON reports use UTF-8 with sorted keys, exact rationals as "p/q"
strings and complex values as two-element [re, im] arrays; meshes are
ASCII OBJ (Poincare ball coordinates by default), curves are RFC-4180
CSV or SVG 1.1 polylines.  All floats go through a fixed formatter so a
fixed configuration always produces byte-identical artifacts.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from fractions import Fraction
from importlib import resources
from typing import Any, Optional, Sequence

import numpy as np

from .front import SurfaceSample
from .geometry import INF


def _fmt(x: float) -> str:
    if x == 0:
        return "0"
    return format(float(x), ".9g")


def to_jsonable(obj: Any) -> Any:
    """Recursively convert reports to JSON-ready data."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)  # "p/q", or plain "p" for integers
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, enum.Enum):
        return to_jsonable(obj.value)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: to_jsonable(v)
                for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def report_document(kind: str, data: Any,
                    meta: Optional[dict] = None) -> dict:
    from . import __version__
    doc = {"tool": "flatfront", "version": __version__,
           "kind": kind, "data": to_jsonable(data)}
    if meta:
        doc["meta"] = to_jsonable(meta)
    return doc


def dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def load_schema() -> dict:
    text = resources.files("flatfront").joinpath(
        "schemas/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


# -- OBJ ------------------------------------------------------------------

def mesh_obj(sample: SurfaceSample, model: str = "ball") -> str:
    """ASCII OBJ of a polar surface sample; quads closed in the angular
    direction."""
    nr, nt = sample.ball.shape[0], sample.ball.shape[1]
    lines = ["# flat front mesh", f"# model {model}"]
    if model == "ball":
        coords = sample.ball
        for i in range(nr):
            for j in range(nt):
                x, y, z = coords[i, j]
                lines.append(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}")
    elif model == "uhs":
        for i in range(nr):
            for j in range(nt):
                z = sample.zeta[i, j]
                lines.append(
                    f"v {_fmt(z.real)} {_fmt(z.imag)} "
                    f"{_fmt(sample.height[i, j])}")
    else:
        raise ValueError(f"unknown model {model!r}")
    for i in range(nr - 1):
        for j in range(nt):
            j2 = (j + 1) % nt
            a = i * nt + j + 1
            b = i * nt + j2 + 1
            c = (i + 1) * nt + j2 + 1
            d = (i + 1) * nt + j + 1
            lines.append(f"f {a} {b} {c} {d}")
    return "\n".join(lines) + "\n"


# -- CSV ------------------------------------------------------------------

def slice_csv(slices) -> str:
    """RFC-4180 rows h, t, Re, Im of horosphere-scaled slice curves."""
    rows = ["h,t,re,im"]
    for s in slices:
        for t, p in zip(s.t, s.points):
            rows.append(",".join([_fmt(s.height), _fmt(t),
                                  _fmt(p.real), _fmt(p.imag)]))
    return "\r\n".join(rows) + "\r\n"


def curve_csv(t: Sequence[float], points: Sequence[complex]) -> str:
    rows = ["t,re,im"]
    for tv, p in zip(t, points):
        p = complex(p)
        rows.append(",".join([_fmt(tv), _fmt(p.real), _fmt(p.imag)]))
    return "\r\n".join(rows) + "\r\n"


# -- SVG ------------------------------------------------------------------

def curve_svg(points: Sequence[complex], size: int = 640,
              margin: float = 0.05) -> str:
    pts = np.asarray(points, dtype=complex)
    lo = min(pts.real.min(), pts.imag.min())
    hi = max(pts.real.max(), pts.imag.max())
    span = (hi - lo) or 1.0
    pad = span * margin
    scale = size / (span + 2 * pad)

    def sx(x):
        return _fmt((x - lo + pad) * scale)

    def sy(y):
        return _fmt(size - (y - lo + pad) * scale)

    coords = " ".join(f"{sx(p.real)},{sy(p.imag)}" for p in pts)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">\n'
        f'  <polyline fill="none" stroke="black" stroke-width="1" '
        f'points="{coords} {sx(pts[0].real)},{sy(pts[0].imag)}"/>\n'
        "</svg>\n")
