"""Configuration management for minkgeo."""

from pathlib import Path
from typing import Any, Dict, Literal, Optional, Tuple

import yaml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings


class ToleranceConfig(BaseModel):
    """Zero tolerances used by the classification routines."""
    causal: float = 1e-9
    umbilic: float = 1e-6
    zero_divisor: float = 1e-12
    helix_ratio: float = 1e-6
    split_holomorphic: float = 1e-8

    @field_validator("*")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("tolerances must be positive")
        return value


class IntegrationConfig(BaseModel):
    """Step sizes and quadrature settings."""
    step: float = 1e-3
    gauss_nodes: int = 32
    fd_step_split: float = 1e-5


class GridConfig(BaseModel):
    """Default sampling grids."""
    nu: int = 32
    nv: int = 32
    guard_band: float = 1e-6


class RunConfig(BaseModel):
    """Validated options of a single command-line invocation."""
    command: str
    step: float = 1e-3
    tol: float = 1e-9
    grid: Tuple[int, int] = (32, 32)
    output: Optional[str] = None
    format: Optional[Literal["csv", "json", "obj"]] = None
    jobs: int = 1
    params: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("step", "tol")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("must be positive")
        return value

    @field_validator("grid")
    @classmethod
    def _grid(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if min(value) < 2:
            raise ValueError("grid dimensions must be at least 2")
        return value

    @field_validator("jobs")
    @classmethod
    def _jobs(cls, value: int) -> int:
        if value < 1:
            raise ValueError("jobs must be at least 1")
        return value


class Settings(BaseSettings):
    """Application settings."""

    # Service settings
    app_name: str = "minkgeo"
    debug: bool = False
    host: str = "0.0.0.0"
    port: int = 8000

    # Worker pool size for grid jobs (MINKGEO_JOBS)
    jobs: int = 1

    log_level: str = "INFO"
    log_json: bool = True

    # Numeric configuration file path
    config_path: str = "minkgeo.yml"

    # Loaded numeric configuration
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    integration: IntegrationConfig = Field(default_factory=IntegrationConfig)
    grid: GridConfig = Field(default_factory=GridConfig)

    class Config:
        env_prefix = "MINKGEO_"
        env_file = ".env"
        env_file_encoding = "utf-8"

    def load_config(self) -> None:
        """Load numeric configuration from the YAML file."""
        config_path = Path(self.config_path)

        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        with open(config_path, "r", encoding="utf-8") as f:
            config_data = yaml.safe_load(f) or {}

        if "tolerances" in config_data:
            self.tolerances = ToleranceConfig.model_validate(config_data["tolerances"])

        if "integration" in config_data:
            self.integration = IntegrationConfig.model_validate(config_data["integration"])

        if "grid" in config_data:
            self.grid = GridConfig.model_validate(config_data["grid"])


# Global settings instance
settings = Settings()
