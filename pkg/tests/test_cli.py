"""End-to-end CLI behavior: outputs, determinism, exit codes."""

import json

import pytest

from flatfront.cli import main
from flatfront.output import load_schema


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_example(capsys):
    code, out, _ = run(capsys, "classify", "--example", "knoid4")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "classify"
    for end in doc["data"]:
        assert end["type"] == "hourglass"
        assert end["p"] == "-1/3"


def test_classify_validates_schema(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    code, out, _ = run(capsys, "classify", "--example", "snowman")
    assert code == 0
    jsonschema.validate(json.loads(out), load_schema())


def test_output_is_byte_identical_across_runs(capsys):
    _, out1, _ = run(capsys, "classify", "--example", "knoid3")
    _, out2, _ = run(capsys, "classify", "--example", "knoid3")
    assert out1 == out2


def test_flux_balancing(capsys):
    code, out, _ = run(capsys, "flux", "--example", "knoid3",
                       "--radius", "0.35")
    assert code == 0
    doc = json.loads(out)
    assert doc["data"]["balancing_defect"] < 1e-7
    assert len(doc["data"]["ends"]) == 3


def test_mesh_obj_output(tmp_path, capsys):
    out = tmp_path / "m.obj"
    code, _, _ = run(capsys, "mesh", "--example", "snowman",
                     "--nr", "4", "--nt", "6", "-o", str(out))
    assert code == 0
    text = out.read_text()
    assert text.splitlines()[0].startswith("#")
    assert " ".join(text.split()).count(" v ") or "v " in text


def test_slice_csv_and_report(tmp_path, capsys):
    csv = tmp_path / "s.csv"
    rep = tmp_path / "s.json"
    code, _, _ = run(capsys, "slice", "--example", "cusped_cylinder",
                     "--rmax", "0.4", "--nt", "64",
                     "-o", str(csv), "--report", str(rep))
    assert code == 0
    assert csv.read_text().startswith("h,t,re,im")
    doc = json.loads(rep.read_text())
    assert doc["data"]["pitch_estimate"] == pytest.approx(2.0, abs=0.05)


def test_caustic_report(capsys):
    code, out, _ = run(capsys, "caustic", "--example", "knoid4",
                       "--point", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["data"]["end"]["p"] == "2"


def test_cycloid_with_ode_check(tmp_path, capsys):
    svg = tmp_path / "c.svg"
    csv = tmp_path / "c.csv"
    code, out, err = run(capsys, "cycloid", "--m", "1", "--n", "2",
                         "--ode", "--csv", str(csv), "--svg", str(svg))
    assert code == 0
    assert "PASS" in err
    doc = json.loads(out)
    assert doc["data"]["descriptor"]["cusps"] == 4
    assert doc["data"]["ode"]["passed"] is True
    assert svg.read_text().startswith("<?xml")
    assert csv.read_text().startswith("t,re,im")


def test_custom_spec_file(tmp_path, capsys):
    spec = tmp_path / "front.json"
    spec.write_text(json.dumps({
        "name": "revolution",
        "G": "z",
        "Gstar": "-z",
        "ends": ["0"],
    }))
    code, out, _ = run(capsys, "classify", "--spec", str(spec))
    assert code == 0
    doc = json.loads(out)
    assert doc["data"][0]["type"] == "cylindrical"
    assert doc["data"][0]["p"] == "0"


# -- exit codes -----------------------------------------------------------

def test_unknown_example_is_config_error(capsys):
    code, _, err = run(capsys, "classify", "--example", "nosuch")
    assert code == 1
    assert err.strip() != ""


def test_bad_expression_is_config_error(tmp_path, capsys):
    spec = tmp_path / "bad.json"
    spec.write_text(json.dumps({"G": "z +", "omega": "z"}))
    code, _, err = run(capsys, "classify", "--spec", str(spec))
    assert code == 1


def test_ambiguous_spec_is_config_error(tmp_path, capsys):
    spec = tmp_path / "amb.json"
    spec.write_text(json.dumps({"G": "z", "omega": "z", "Gstar": "-z"}))
    code, _, _ = run(capsys, "classify", "--spec", str(spec))
    assert code == 1


def test_degenerate_geometry_is_numeric_failure(tmp_path, capsys):
    spec = tmp_path / "deg.json"
    spec.write_text(json.dumps({"G": "z", "Gstar": "z"}))
    code, _, err = run(capsys, "classify", "--spec", str(spec))
    assert code == 2


def test_usage_error_exits_one(capsys):
    code, _, _ = run(capsys, "cycloid", "--m", "1")  # missing --n
    assert code == 1


def test_unreachable_slice_is_numeric_failure(capsys):
    code, _, err = run(capsys, "slice", "--example", "snowman",
                       "--heights", "0.1", "--rmax", "0.11")
    # a single height is a config problem or the bracket fails numerically;
    # either way stderr explains and the code is nonzero
    assert code in (1, 2)
    assert err.strip() != ""
