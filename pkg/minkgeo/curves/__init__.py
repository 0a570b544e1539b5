"""Curve theory in R^3 and L^3: frames, invariants, reconstruction and helices."""

from .base import ClosedFormCurve, CurveModel, Reflected, SampledFunctionCurve
from .frames import (
    CartanData,
    SAMPLE_COLUMNS,
    CurveKind,
    FrenetData,
    cartan_apparatus,
    classify_curve,
    frame_sample,
    frenet_apparatus,
)
from .helices import HelixReport, helix_classify, planarity_residual, semi_lightlike_plane
from .reconstruct import (
    ReconstructionKind,
    ReconstructionSpec,
    canonical_frame,
    reconstruct_curve,
    result_rows,
)
from .reparam import ReparamMode, reparametrize
from .standard import StandardCurve, standard_curve

__all__ = [
    "SAMPLE_COLUMNS",
    "CartanData",
    "ClosedFormCurve",
    "CurveKind",
    "CurveModel",
    "FrenetData",
    "HelixReport",
    "ReconstructionKind",
    "ReconstructionSpec",
    "Reflected",
    "ReparamMode",
    "SampledFunctionCurve",
    "StandardCurve",
    "canonical_frame",
    "cartan_apparatus",
    "classify_curve",
    "frame_sample",
    "frenet_apparatus",
    "helix_classify",
    "planarity_residual",
    "reconstruct_curve",
    "reparametrize",
    "result_rows",
    "semi_lightlike_plane",
    "standard_curve",
]
