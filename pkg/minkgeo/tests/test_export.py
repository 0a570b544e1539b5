"""Test the mesh, table and report writers."""

import os
import tempfile
from enum import Enum
from io import StringIO

import numpy as np
import pytest

from minkgeo.adapters.export import (
    dumps_json,
    format_float,
    mesh_faces,
    to_jsonable,
    write_csv,
    write_obj,
)


class Color(str, Enum):
    RED = "red"


def test_dumps_json_is_deterministic():
    """Test sorted keys, 17 digits and NaN as null."""
    text = dumps_json({"b": float("nan"), "a": 0.1, "c": [1, True, None, Color.RED]})
    assert text == '{"a": 0.10000000000000001, "b": null, "c": [1, true, null, "red"]}'
    assert dumps_json({"x": np.float64(1.0) / 3}) == dumps_json({"x": 1.0 / 3})


def test_to_jsonable_finite():
    """Test conversion of arrays and non-finite values."""
    data = {"v": np.array([1.0, np.inf]), "n": np.int64(3), "flag": np.bool_(True)}
    assert to_jsonable(data, finite=True) == {"v": [1.0, None], "n": 3, "flag": True}
    assert to_jsonable(data)["v"][1] == float("inf")


def test_write_csv():
    """Test column order and float formatting."""
    out = StringIO()
    count = write_csv([{"u": 0.5, "K": 1.0, "label": Color.RED}, {"u": 1.0}], ("u", "K", "label"), out)
    assert count == 2
    assert out.getvalue() == "u,K,label\n0.5,1,red\n1,,\n"


def test_mesh_faces_drop_masked_vertices():
    """Test triangle counts with and without a masked vertex."""
    mask = np.ones((3, 3), dtype=bool)
    assert len(mesh_faces(mask)) == 8
    mask[1, 1] = False
    assert len(mesh_faces(mask)) == 2


def test_write_obj():
    """Test vertex numbering around masked grid points."""
    points = np.zeros((2, 3, 3))
    points[..., 0] = np.arange(2)[:, None]
    points[..., 1] = np.arange(3)[None, :]
    points[0, 2] = np.nan

    with tempfile.NamedTemporaryFile(mode="w", suffix=".obj", delete=False) as f:
        temp_path = f.name

    try:
        stats = write_obj(points, temp_path, "grid")
        with open(temp_path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    finally:
        os.unlink(temp_path)

    assert stats == {"vertices": 5, "faces": 3, "masked": 1}
    assert lines[0] == "o grid"
    assert sum(line.startswith("v ") for line in lines) == 5
    assert lines[1] == "v 0 0 0"
    faces = [line for line in lines if line.startswith("f ")]
    assert len(faces) == 3
    assert max(int(i) for line in faces for i in line.split()[1:]) == 5


def test_write_obj_rejects_bad_shapes():
    """Test the grid shape check."""
    with pytest.raises(ValueError):
        write_obj(np.zeros((4, 3)), StringIO())


def test_format_float():
    """Test round-trip precision."""
    assert float(format_float(0.1)) == 0.1
    assert format_float(2.0) == "2"
