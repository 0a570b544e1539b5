"""Test the command-line front end."""

import json
import os
import tempfile
from io import StringIO

import pytest

from minkgeo.cli.main import UsageError, main, parse_grid, parse_profile
from minkgeo.curves import SAMPLE_COLUMNS


def run(*argv):
    out = StringIO()
    code = main(list(argv), stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None)


def test_classify_vector():
    """Test the causal character report on stdout."""
    code, report = run("classify", "vector", "--coords", "1,0,1", "--sig", "3,1")
    assert code == 0
    assert report["causal_class"] == "lightlike"
    assert report["signature"] == "3,1"


def test_classify_transform_inline_matrix():
    """Test the transformation classifier with an inline matrix."""
    code, report = run("classify", "transform", "--matrix", "[[1,0,0],[0,1,0],[0,0,-1]]")
    assert code == 0
    assert report["component"] == "MinusDown"


def test_exit_codes():
    """Test usage errors and domain preconditions."""
    assert run("classify", "vector")[0] == 2
    assert run("bogus")[0] == 2
    assert run("classify", "vector", "--coords", "1,x")[0] == 2
    assert run("classify", "vector", "--coords", "0,0,0")[0] == 3
    assert run("curve", "named", "spiral")[0] == 3


def test_exit_codes_for_malformed_input():
    """Test that bad JSON, ragged matrices and bad flag values are usage errors."""
    assert run("classify", "transform", "--matrix", "[[1,0],")[0] == 2
    assert run("classify", "transform", "--matrix", "[[1,0],[0]]")[0] == 2
    assert run("classify", "vector", "--coords", "1,0,1", "--sig", "abc")[0] == 2
    assert run("classify", "vector", "--coords", "1,0,1", "--tol", "0")[0] == 2
    assert run("curve", "named", "gamma2", "--step", "0")[0] == 2
    assert run("curve", "named", "gamma2", "--format", "png")[0] == 2
    assert run("curve", "named", "gamma2", "--format", "obj", "-o", "x.obj")[0] == 2
    fd, path = tempfile.mkstemp(suffix=".json")
    with os.fdopen(fd, "w") as f:
        f.write("42")
    try:
        assert run("classify", "vector", "--file", path)[0] == 2
    finally:
        os.unlink(path)
    fd, path = tempfile.mkstemp(suffix=".json")
    with os.fdopen(fd, "w") as f:
        json.dump({"kind": "type-II", "ambient": "R3", "F": "one", "poles": [{"order": 2}]}, f)
    try:
        assert run("surface", "weierstrass", "--data", path, "--grid", "3x3")[0] == 2
    finally:
        os.unlink(path)


def test_curve_named_with_csv():
    """Test invariants of gamma2 and the sample table."""
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "gamma2.csv")
        code, report = run("curve", "named", "gamma2", "--range", "0,1", "--step", "0.25", "-o", path)
        assert code == 0
        assert report["kind"] == "lightlike"
        assert report["samples"] == 5
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    assert lines[0] == ",".join(SAMPLE_COLUMNS)
    assert len(lines) == 6
    cells = dict(zip(SAMPLE_COLUMNS, lines[2].split(",")))
    assert float(cells["param"]) == 0.25
    assert abs(float(cells["kappa_or_ctorsion"]) + 0.5) < 1e-4
    assert cells["tau"] == ""
    assert all(cells[c] != "" for c in ("Tx", "Ny", "Bz"))


def test_curve_reconstruct_circle():
    """Test that kappa = 1, tau = 0 in R^3 closes up after 2 pi."""
    code, report = run(
        "curve", "reconstruct", "--kind", "admissible", "--ambient", "3,0",
        "--range", "0,6.283185307179586", "--step", "0.001",
    )
    assert code == 0
    assert report["drift"] < 1e-8
    assert max(abs(x) for x in report["final_point"]) < 1e-2


def test_curve_reconstruct_samples():
    """Test that the reconstruction table carries the frames and the prescribed curvature."""
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "circle.csv")
        code, _ = run(
            "curve", "reconstruct", "--kind", "admissible", "--ambient", "3,0",
            "--range", "0,1", "--step", "0.25", "-o", path,
        )
        assert code == 0
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    assert lines[0] == ",".join(SAMPLE_COLUMNS)
    assert len(lines) == 6
    first = dict(zip(SAMPLE_COLUMNS, lines[1].split(",")))
    assert float(first["kappa_or_ctorsion"]) == 1.0
    assert float(first["tau"]) == 0.0
    assert float(first["Tx"]) == 1.0


def test_curve_reconstruct_compare():
    """Test reconstruction seeded from a catalog curve."""
    code, report = run(
        "curve", "reconstruct", "--compare", "gamma2", "--ctorsion", "const:-0.5",
        "--range", "0,2", "--step", "0.001",
    )
    assert code == 0
    assert report["kind"] == "lightlike"
    assert report["deviation"] < 1e-6


def test_surface_named_mesh_and_report():
    """Test the curvature report, OBJ mesh and report file of the sphere."""
    with tempfile.TemporaryDirectory() as tmp:
        mesh = os.path.join(tmp, "sphere.obj")
        saved = os.path.join(tmp, "report.json")
        code, report = run("surface", "named", "sphere", "--grid", "4x4", "-o", mesh, "--report", saved)
        assert code == 0
        assert report["mesh"] == {"vertices": 16, "faces": 18, "masked": 0}
        assert report["K_error"] < 1e-8
        with open(saved, encoding="utf-8") as f:
            assert json.load(f) == report
        with open(mesh, encoding="utf-8") as f:
            assert f.readline().strip() == "o sphere"


def test_json_format_writes_the_report():
    """Test that --format json sends the report to -o instead of a table."""
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "gamma2.json")
        code, report = run(
            "curve", "named", "gamma2", "--range", "0,1", "--step", "0.5", "--format", "json", "-o", path
        )
        assert code == 0
        with open(path, encoding="utf-8") as f:
            assert json.load(f) == report


def test_surface_named_umbilic_verdict():
    """Test that the sphere report carries its umbilic classification."""
    code, report = run("surface", "named", "sphere", "--grid", "4x4")
    assert code == 0
    assert report["umbilic"]["label"] == "sphere"


def test_surface_weierstrass_manifest():
    """Test the gallery manifest command."""
    code, report = run("surface", "weierstrass", "--manifest")
    assert code == 0
    assert len(report["gallery"]) == 7


def test_split_command():
    """Test the derivative and loop integral of the cubic and the pole of 1/w^2."""
    code, report = run("split", "cubic", "--at", "0.5,0.25", "--loop", "0.5")
    assert code == 0
    assert report["derivative"]["split_holomorphic"]
    assert report["derivative"]["derivative"] == pytest.approx([2.9375, 0.75], abs=1e-4)
    assert report["loop_integral"] == pytest.approx([0.0, 0.0], abs=1e-8)
    code, report = run("split", "inverse-square", "--at", "0,0", "--pole")
    assert code == 0
    assert report["pole_order"] == 2
    assert not report["zero_divisor"]
    assert run("split", "sine")[0] == 3
    assert run("split", "cubic", "--loop", "-1")[0] == 3


def test_parse_helpers():
    """Test grid and profile parsing."""
    assert parse_grid("64x32") == (64, 32)
    assert parse_profile("const:2.5") == 2.5
    assert parse_profile("linear:1,2")(3.0) == 7.0
    with pytest.raises(UsageError):
        parse_profile("cubic:1")
