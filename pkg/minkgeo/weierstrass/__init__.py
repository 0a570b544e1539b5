"""Critical surfaces from Weierstrass data in R^3 and L^3."""

from .data import Pole, WeierstrassAmbient, WeierstrassData, WeierstrassKind
from .gallery import (
    DATA_FUNCTIONS,
    NamedSurface,
    data_from_definition,
    gallery_manifest,
    named_surface,
    oracle_deviation,
    weierstrass_data,
)
from .generate import (
    CriticalityReport,
    GeneratedSurface,
    RegularityReport,
    conformal_factor,
    generate,
    null_residual,
    point_regularity,
    regularity_check,
    typeII_gaussian_curvature,
    verify_critical,
)

__all__ = [
    "CriticalityReport",
    "DATA_FUNCTIONS",
    "GeneratedSurface",
    "NamedSurface",
    "Pole",
    "RegularityReport",
    "WeierstrassAmbient",
    "WeierstrassData",
    "WeierstrassKind",
    "conformal_factor",
    "data_from_definition",
    "gallery_manifest",
    "generate",
    "named_surface",
    "null_residual",
    "oracle_deviation",
    "point_regularity",
    "regularity_check",
    "typeII_gaussian_curvature",
    "verify_critical",
    "weierstrass_data",
]
