"""Serialization: JSON conventions, OBJ/CSV/SVG formats, determinism."""

import json
from fractions import Fraction

import numpy as np
import pytest

from flatfront import bundled
from flatfront.front import sample_surface
from flatfront.output import (curve_csv, curve_svg, dump_json, load_schema,
                              mesh_obj, report_document, slice_csv,
                              to_jsonable)
from flatfront.slices import horosphere_slice


def test_fractions_serialize_as_exact_strings():
    assert to_jsonable(Fraction(-1, 3)) == "-1/3"
    assert to_jsonable(Fraction(2, 1)) == "2"
    assert to_jsonable(Fraction(0)) == "0"


def test_complex_serializes_as_pair():
    assert to_jsonable(1.5 - 2.0j) == [1.5, -2.0]
    assert to_jsonable(np.complex128(1j)) == [0.0, 1.0]


def test_rational_strings_match_schema_pattern():
    import re
    pat = re.compile(load_schema()["$defs"]["rational"]["pattern"])
    for f in (Fraction(-1, 3), Fraction(2), Fraction(0), Fraction(7, 11)):
        assert pat.fullmatch(to_jsonable(f))


def test_dump_json_is_sorted_and_deterministic():
    doc = report_document("classify", {"b": 1, "a": Fraction(1, 2)})
    s1 = dump_json(doc)
    s2 = dump_json(report_document("classify",
                                   {"a": Fraction(1, 2), "b": 1}))
    assert s1 == s2
    parsed = json.loads(s1)
    assert parsed["tool"] == "flatfront"
    assert list(parsed) == sorted(parsed)


def test_report_validates_against_schema():
    jsonschema = pytest.importorskip("jsonschema")
    doc = report_document("flux", {"x": [1.0, 2.0]}, {"front": "snowman"})
    jsonschema.validate(doc, load_schema())


def test_mesh_obj_counts():
    lift = bundled.get("snowman").lift_at(0.0)
    sample = sample_surface(lift, 0.1, 0.3, nr=4, nt=6)
    obj = mesh_obj(sample)
    lines = obj.splitlines()
    assert sum(1 for l in lines if l.startswith("v ")) == 4 * 6
    assert sum(1 for l in lines if l.startswith("f ")) == 3 * 6
    # both models emit the same topology
    obj2 = mesh_obj(sample, model="uhs")
    assert sum(1 for l in obj2.splitlines() if l.startswith("f ")) == 3 * 6
    with pytest.raises(ValueError):
        mesh_obj(sample, model="klein")


def test_slice_csv_is_rfc4180():
    lift = bundled.get("snowman").lift_at(0.0)
    s = horosphere_slice(lift, 0.05, n_t=8, r_bracket=(1e-8, 0.6))
    text = slice_csv([s])
    assert text.endswith("\r\n")
    rows = text.split("\r\n")
    assert rows[0] == "h,t,re,im"
    assert len(rows) == 1 + 8 + 1  # header + points + trailing empty


def test_curve_csv_and_svg():
    t = np.linspace(0, 1, 5)
    pts = np.exp(2j * np.pi * t)
    csv = curve_csv(t, pts)
    assert csv.startswith("t,re,im\r\n")
    svg = curve_svg(pts)
    assert svg.startswith('<?xml version="1.0"')
    assert 'version="1.1"' in svg and "<polyline" in svg


def test_float_formatting_is_locale_free():
    t = [0.1]
    pts = [complex(1 / 3, -2 / 3)]
    row = curve_csv(t, pts).split("\r\n")[1]
    assert row == "0.1,0.333333333,-0.666666667"
