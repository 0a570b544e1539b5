"""Configuration for minkgeo."""

from .settings import GridConfig, IntegrationConfig, RunConfig, Settings, ToleranceConfig, settings

__all__ = [
    "GridConfig",
    "IntegrationConfig",
    "RunConfig",
    "Settings",
    "ToleranceConfig",
    "settings",
]
