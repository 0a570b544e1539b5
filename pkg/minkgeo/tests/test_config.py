"""Test configuration loading."""

import os
import tempfile

import pytest
from pydantic import ValidationError

from minkgeo.config.settings import RunConfig, Settings


def test_load_numeric_config():
    """Test loading tolerances, integration and grid sections."""
    config_content = """
tolerances:
  causal: 1.0e-8
  umbilic: 1.0e-9
integration:
  step: 1.0e-2
  gauss_nodes: 16
grid:
  nu: 12
  nv: 10
"""

    with tempfile.NamedTemporaryFile(mode="w", suffix=".yml", delete=False) as f:
        f.write(config_content)
        temp_path = f.name

    try:
        settings = Settings(config_path=temp_path)
        settings.load_config()

        assert settings.tolerances.causal == 1e-8
        assert settings.tolerances.umbilic == 1e-9
        # untouched keys keep their defaults
        assert settings.tolerances.zero_divisor == 1e-12
        assert settings.integration.step == 1e-2
        assert settings.integration.gauss_nodes == 16
        assert settings.grid.nu == 12
        assert settings.grid.nv == 10
    finally:
        os.unlink(temp_path)


def test_missing_config_file():
    """Test that a missing file is reported."""
    settings = Settings(config_path="/nonexistent/minkgeo.yml")
    with pytest.raises(FileNotFoundError, match="Config file not found"):
        settings.load_config()


def test_negative_tolerance_rejected():
    """Test that tolerances must be positive."""
    config_content = """
tolerances:
  causal: -1.0
"""

    with tempfile.NamedTemporaryFile(mode="w", suffix=".yml", delete=False) as f:
        f.write(config_content)
        temp_path = f.name

    try:
        settings = Settings(config_path=temp_path)
        with pytest.raises(ValidationError):
            settings.load_config()
    finally:
        os.unlink(temp_path)


def test_jobs_from_environment(monkeypatch):
    """Test MINKGEO_JOBS sets the default pool size."""
    monkeypatch.setenv("MINKGEO_JOBS", "4")
    assert Settings().jobs == 4


def test_run_config_validation():
    """Test per-invocation validation of numeric options."""
    config = RunConfig(command="surface named", grid=(8, 8), format="obj")
    assert config.grid == (8, 8)
    assert config.format == "obj"

    with pytest.raises(ValidationError):
        RunConfig(command="surface named", grid=(1, 8))
    with pytest.raises(ValidationError):
        RunConfig(command="curve named", tol=0.0)
    with pytest.raises(ValidationError):
        RunConfig(command="curve named", step=-1e-3)
    with pytest.raises(ValidationError):
        RunConfig(command="surface named", format="png")
    with pytest.raises(ValidationError):
        RunConfig(command="surface named", jobs=0)
