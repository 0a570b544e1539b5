"""Main FastAPI application for minkgeo."""

from contextlib import asynccontextmanager

import structlog
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

import minkgeo.api.endpoints
from minkgeo import __version__
from minkgeo.api.endpoints import router
from minkgeo.config.settings import settings
from minkgeo.core.manager import GeometryManager
from minkgeo.logging import configure_logging

configure_logging(settings.log_level, settings.log_json)

logger = structlog.get_logger()


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager."""
    # Startup
    logger.info("Starting minkgeo service")

    try:
        settings.load_config()
        logger.info("Loaded numeric configuration", path=settings.config_path)
    except FileNotFoundError as e:
        logger.warning("Using default numeric configuration", error=str(e))

    geometry_manager = GeometryManager(settings)
    geometry_manager.initialize()
    minkgeo.api.endpoints.manager = geometry_manager

    logger.info("minkgeo service started", **geometry_manager.catalog_status())

    yield

    # Shutdown
    logger.info("Shutting down minkgeo service")


app = FastAPI(
    title=settings.app_name,
    description="Lorentz-Minkowski geometry toolkit",
    version=__version__,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(router, prefix="/api/v1")


@app.get("/health")
async def health_root():
    """Health check endpoint."""
    return {"status": "healthy", "service": "minkgeo"}


@app.get("/")
async def root():
    """Root endpoint."""
    return {"service": "minkgeo", "version": __version__, "status": "running"}


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.debug,
        log_level="info",
    )
