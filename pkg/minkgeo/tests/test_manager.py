"""Test the geometry manager."""

import pytest

from minkgeo.config.settings import Settings
from minkgeo.core.errors import PreconditionError
from minkgeo.core.manager import SPLIT_FUNCTIONS, GeometryManager
from minkgeo.weierstrass import NamedSurface


@pytest.fixture
def geo():
    manager = GeometryManager(Settings())
    manager.initialize()
    return manager


def test_manager_initialization():
    """Test manager initialization."""
    settings = Settings()
    manager = GeometryManager(settings)

    assert manager.settings == settings
    assert len(manager.curves) == 0
    assert len(manager.surfaces) == 0
    assert len(manager.weierstrass) == 0


def test_catalogs_are_built(geo):
    """Test that every catalog is populated on initialize."""
    status = geo.catalog_status()
    assert "gamma2" in status["curves"]
    assert "sphere" in status["surfaces"]
    assert "realization" not in status["surfaces"]
    assert any(name.startswith("realization:") for name in status["surfaces"])
    assert status["weierstrass"] == sorted(k.value for k in NamedSurface)
    assert status["split_functions"] == sorted(SPLIT_FUNCTIONS)
    assert status["jobs"] == 1


def test_failed_factory_is_skipped(mocker):
    """Test that a failing curve factory is logged and skipped."""
    mocker.patch("minkgeo.core.manager.standard_curve", side_effect=PreconditionError("boom"))
    manager = GeometryManager(Settings())
    manager.initialize()

    assert manager.curves == {}
    assert "sphere" in manager.surfaces


def test_unknown_names_raise(geo):
    """Test lookups of names outside the catalogs."""
    with pytest.raises(PreconditionError, match="Unknown curve"):
        geo.curve("spiral")
    with pytest.raises(PreconditionError, match="Unknown surface"):
        geo.surface("realization")
    with pytest.raises(PreconditionError):
        geo.weierstrass_surface("Costa")
    with pytest.raises(PreconditionError):
        geo.split_function("sine")


def test_parameters_rebuild_catalog_entries(geo):
    """Test that parameters give a fresh curve instead of the cached one."""
    assert geo.curve("gamma2") is geo.curves["gamma2"]
    assert geo.curve("gamma2", r=2.0) is not geo.curves["gamma2"]


def test_run_grid_keeps_order(geo):
    """Test the worker pool result order."""
    items = list(range(20))
    assert geo.run_grid(lambda x: x * x, items, jobs=4) == [x * x for x in items]
    assert geo.run_grid(lambda x: -x, [3]) == [-3]


def test_curve_invariants_of_lightlike_helix(geo):
    """Test the invariant report of gamma2."""
    report = geo.curve_invariants(geo.curve("gamma2"), at=0.3)
    assert report.kind == "lightlike"
    assert report.tangent_class == "lightlike"
    assert report.ctorsion == pytest.approx(-0.5, abs=1e-9)
    assert report.kappa is None
    assert report.helix
    assert report.helix_label == "elliptic"
    assert report.standard == "gamma2"


def test_curve_invariants_of_circle(geo):
    """Test the Frenet invariants of the unit circle in R^3."""
    report = geo.curve_invariants(geo.curve("circle"))
    assert report.kind == "admissible"
    assert report.kappa == pytest.approx(1.0)
    assert report.ctorsion is None


def test_sample_curve(geo):
    """Test sampling records and range checks."""
    rows = geo.sample_curve(geo.curve("circle"), 0.0, 1.0, 0.25)
    assert [r["param"] for r in rows] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert rows[0]["x"] == pytest.approx(1.0)
    assert rows[0]["Ty"] == pytest.approx(1.0)
    assert rows[2]["kappa_or_ctorsion"] == pytest.approx(1.0, abs=1e-6)
    assert rows[2]["tau"] == pytest.approx(0.0, abs=1e-6)
    lightlike = geo.sample_curve(geo.curve("gamma2"), 0.0, 1.0, 0.5)
    assert all(r["kappa_or_ctorsion"] == pytest.approx(-0.5, abs=1e-6) for r in lightlike)
    assert all("tau" not in r for r in lightlike)
    with pytest.raises(PreconditionError):
        geo.sample_curve(geo.curve("circle"), 1.0, 0.0, 0.1)


def test_split_analysis(geo):
    """Test the derivative, loop integral and pole reports of catalog functions."""
    report = geo.split_analysis(geo.split_function("cubic"), (0.5, 0.25), loop=0.5)
    assert report["point"] == [0.5, 0.25]
    assert report["derivative"]["derivative"] == pytest.approx([2.9375, 0.75], abs=1e-4)
    assert report["loop_integral"] == pytest.approx([0.0, 0.0], abs=1e-8)
    assert not geo.split_analysis(geo.split_function("conjugate"), (0.5, 0.25))["derivative"]["split_holomorphic"]
    pole = geo.split_analysis(geo.split_function("inverse-square"), (0.0, 0.0), pole=True)
    assert pole["pole_order"] == 2
    assert geo.split_analysis(geo.split_function("cubic"), (1.0, 1.0))["zero_divisor"]
    with pytest.raises(PreconditionError):
        geo.split_analysis(geo.split_function("cubic"), (0.5, 0.25), loop=0.0)


def test_umbilic_report(geo):
    """Test the umbilic verdict of catalog surfaces."""
    assert geo.umbilic_report(geo.surface("de-sitter"))["label"] == "S21-type"
    assert geo.umbilic_report(geo.surface("cylinder"))["totally_umbilic"] is False


def test_surface_curvature(geo):
    """Test the curvature records and summary over a small grid."""
    field = geo.surface_curvature(geo.surface("hyperbolic-plane"), 4, 5, jobs=2)
    assert len(field["rows"]) == 20
    assert field["summary"]["samples"] == 20
    assert field["summary"]["K_max"] == pytest.approx(-1.0)
