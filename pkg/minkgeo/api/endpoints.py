"""FastAPI endpoints for minkgeo."""

from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import structlog
from fastapi import APIRouter, Depends, HTTPException
from pydantic import BaseModel, Field

from ..adapters.export import to_jsonable
from ..core.errors import PreconditionError
from ..core.lorentz import Signature, causal_character, causal_relations
from ..core.manager import GeometryManager
from ..core.transforms import classify_transform

logger = structlog.get_logger()

# Router for API endpoints
router = APIRouter()

# Global manager instance (will be initialized on startup)
manager: Optional[GeometryManager] = None


class VectorRequest(BaseModel):
    coords: List[float]
    sig: str = "3,1"
    tol: float = Field(default=1e-9, gt=0)


class TransformRequest(BaseModel):
    matrix: List[List[float]]
    sig: str = "3,1"
    tol: float = Field(default=1e-9, gt=0)


class RelationRequest(BaseModel):
    p: List[float]
    q: List[float]
    sig: str = "3,1"


class CurveRequest(BaseModel):
    params: Dict[str, Any] = Field(default_factory=dict)
    at: float = 0.0
    interval: Tuple[float, float] = (-1.0, 1.0)
    samples: int = Field(default=9, ge=2)


class SurfaceRequest(BaseModel):
    params: Dict[str, Any] = Field(default_factory=dict)
    nu: int = Field(default=8, ge=2)
    nv: int = Field(default=8, ge=2)
    rows: bool = False


class SplitRequest(BaseModel):
    at: Tuple[float, float] = (0.5, 0.25)
    loop: Optional[float] = Field(default=None, gt=0)
    pole: bool = False


async def get_manager() -> GeometryManager:
    """Dependency to get the manager instance."""
    if manager is None:
        raise HTTPException(status_code=500, detail="Manager not initialized")
    return manager


def _fail(endpoint: str, e: Exception) -> HTTPException:
    logger.error(f"{endpoint} endpoint error", error=str(e))
    if isinstance(e, PreconditionError):
        return HTTPException(status_code=422, detail=str(e))
    return HTTPException(status_code=500, detail=str(e))


@router.get("/status")
async def status_endpoint(geo: GeometryManager = Depends(get_manager)):
    """Catalog listing."""
    try:
        return {"success": True, "data": geo.catalog_status()}
    except Exception as e:
        raise _fail("Status", e)


@router.post("/classify/vector")
async def classify_vector_endpoint(
    request: VectorRequest, geo: GeometryManager = Depends(get_manager)
):
    """Causal character of a vector."""
    try:
        report = causal_character(np.asarray(request.coords), Signature.parse(request.sig), request.tol)
        return {"success": True, "data": to_jsonable(report)}
    except Exception as e:
        raise _fail("Classify vector", e)


@router.post("/classify/transform")
async def classify_transform_endpoint(
    request: TransformRequest, geo: GeometryManager = Depends(get_manager)
):
    """Membership, component and conjugacy class of a matrix."""
    try:
        report = classify_transform(np.asarray(request.matrix), Signature.parse(request.sig), request.tol)
        return {"success": True, "data": to_jsonable(report)}
    except Exception as e:
        raise _fail("Classify transform", e)


@router.post("/classify/relation")
async def classify_relation_endpoint(
    request: RelationRequest, geo: GeometryManager = Depends(get_manager)
):
    """Chronological and causal precedence of two points."""
    try:
        report = causal_relations(np.asarray(request.p), np.asarray(request.q), Signature.parse(request.sig))
        return {"success": True, "data": to_jsonable(report)}
    except Exception as e:
        raise _fail("Classify relation", e)


@router.post("/curves/{name}/invariants")
async def curve_invariants_endpoint(
    name: str, request: CurveRequest, geo: GeometryManager = Depends(get_manager)
):
    """Invariants and helix label of a catalog curve."""
    try:
        curve = geo.curve(name, **request.params)
        report = geo.curve_invariants(curve, request.at, request.interval, request.samples)
        return {"success": True, "data": report.model_dump()}
    except Exception as e:
        raise _fail("Curve invariants", e)


@router.post("/surfaces/{name}/curvature")
async def surface_curvature_endpoint(
    name: str, request: SurfaceRequest, geo: GeometryManager = Depends(get_manager)
):
    """Curvature summary of a catalog surface over a grid."""
    try:
        surface = geo.surface(name, **request.params)
        field = geo.surface_curvature(surface, request.nu, request.nv)
        data = {"surface": surface.name, "summary": field["summary"]}
        if request.rows:
            data["rows"] = field["rows"]
        return {"success": True, "data": to_jsonable(data, finite=True)}
    except Exception as e:
        raise _fail("Surface curvature", e)


@router.post("/split/{name}/analyze")
async def split_analysis_endpoint(
    name: str, request: SplitRequest, geo: GeometryManager = Depends(get_manager)
):
    """Derivative, loop integral or pole order of a catalog split-complex function."""
    try:
        report = geo.split_analysis(geo.split_function(name), request.at, request.loop, request.pole)
        return {"success": True, "data": to_jsonable(report)}
    except Exception as e:
        raise _fail("Split analysis", e)
