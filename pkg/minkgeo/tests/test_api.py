"""Test the HTTP endpoints."""

import pytest
from fastapi import FastAPI
from fastapi.testclient import TestClient

import minkgeo.api.endpoints as endpoints
from minkgeo.config.settings import Settings
from minkgeo.core.manager import GeometryManager


@pytest.fixture
def client():
    app = FastAPI()
    app.include_router(endpoints.router, prefix="/api/v1")
    geo = GeometryManager(Settings())
    geo.initialize()
    endpoints.manager = geo
    yield TestClient(app)
    endpoints.manager = None


def test_manager_not_initialized():
    """Test the 500 response before startup."""
    app = FastAPI()
    app.include_router(endpoints.router, prefix="/api/v1")
    endpoints.manager = None
    response = TestClient(app).get("/api/v1/status")
    assert response.status_code == 500


def test_status(client):
    """Test the catalog listing."""
    response = client.get("/api/v1/status")
    assert response.status_code == 200
    body = response.json()
    assert body["success"] is True
    assert "gamma2" in body["data"]["curves"]


def test_classify_vector(client):
    """Test causal character over HTTP."""
    response = client.post("/api/v1/classify/vector", json={"coords": [1.0, 0.0, 1.0], "sig": "3,1"})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["causal_class"] == "lightlike"
    assert data["indicator"] == 0


def test_classify_transform(client):
    """Test the component of a spatial reflection."""
    matrix = [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    response = client.post("/api/v1/classify/transform", json={"matrix": matrix})
    data = response.json()["data"]
    assert data["is_member"] is True
    assert data["component"] == "MinusUp"


def test_classify_relation(client):
    """Test chronological precedence over HTTP."""
    response = client.post("/api/v1/classify/relation", json={"p": [0, 0, 0], "q": [0, 0, 2]})
    data = response.json()["data"]
    assert data["chron"] is True
    assert data["time_orientation"] == "future"


def test_precondition_errors_are_unprocessable(client):
    """Test that domain preconditions map to 422."""
    response = client.post("/api/v1/classify/vector", json={"coords": [0.0, 0.0, 0.0]})
    assert response.status_code == 422
    response = client.post("/api/v1/curves/spiral/invariants", json={})
    assert response.status_code == 422


def test_request_validation(client):
    """Test pydantic validation of request bodies."""
    response = client.post("/api/v1/surfaces/sphere/curvature", json={"nu": 1})
    assert response.status_code == 422


def test_curve_invariants(client):
    """Test the invariant report of a parametrized catalog curve."""
    response = client.post("/api/v1/curves/gamma2/invariants", json={"params": {"r": 2.0}, "at": 0.5})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["kind"] == "lightlike"
    assert data["ctorsion"] == pytest.approx(-0.25, abs=1e-9)


def test_surface_curvature(client):
    """Test the curvature summary with and without the records."""
    response = client.post("/api/v1/surfaces/de-sitter/curvature", json={"nu": 3, "nv": 4})
    data = response.json()["data"]
    assert data["summary"]["samples"] == 12
    assert data["summary"]["K_min"] == pytest.approx(1.0)
    assert "rows" not in data
    response = client.post("/api/v1/surfaces/de-sitter/curvature", json={"nu": 2, "nv": 2, "rows": True})
    assert len(response.json()["data"]["rows"]) == 4


def test_split_analysis(client):
    """Test the split-complex derivative, pole order and unknown names."""
    response = client.post("/api/v1/split/cubic/analyze", json={"at": [0.5, 0.25], "loop": 0.5})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["derivative"]["split_holomorphic"]
    assert data["loop_integral"] == pytest.approx([0.0, 0.0], abs=1e-8)
    response = client.post("/api/v1/split/inverse-square/analyze", json={"at": [0.0, 0.0], "pole": True})
    assert response.json()["data"]["pole_order"] == 2
    assert client.post("/api/v1/split/sine/analyze", json={}).status_code == 422
    assert client.post("/api/v1/split/cubic/analyze", json={"loop": -1.0}).status_code == 422
