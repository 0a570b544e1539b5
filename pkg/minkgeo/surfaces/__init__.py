"""Surface theory in R^3, L^3 and R^3_2: forms, curvature and intrinsic geometry."""

from .base import ClosedFormSurface, SampledFunctionSurface, SurfaceModel, parameter_grid
from .bscroll import BScroll, b_scroll, verify_b_scroll
from .forms import (
    CurvatureReport,
    Diagonalizable,
    FundamentalForms,
    SurfaceCausal,
    curvature_field,
    curvatures,
    fundamental_forms,
)
from .gallery import REALIZATIONS, StandardSurface, standard_surface
from .intrinsic import (
    MetricPatch,
    christoffel_geodesics,
    constant_curvature_G,
    curvature_from_G,
    fermi_chart,
    metric_from_surface,
    riemann_formula_patch,
)
from .revolution import (
    RevolutionKind,
    constant_curvature_profile,
    revolution_ode_residual,
    revolution_surface,
)
from .umbilic import UmbilicLabel, umbilic_surface_check

__all__ = [
    "BScroll",
    "ClosedFormSurface",
    "CurvatureReport",
    "Diagonalizable",
    "FundamentalForms",
    "MetricPatch",
    "REALIZATIONS",
    "RevolutionKind",
    "SampledFunctionSurface",
    "StandardSurface",
    "SurfaceCausal",
    "SurfaceModel",
    "UmbilicLabel",
    "b_scroll",
    "christoffel_geodesics",
    "constant_curvature_G",
    "constant_curvature_profile",
    "curvature_field",
    "curvature_from_G",
    "curvatures",
    "fermi_chart",
    "fundamental_forms",
    "metric_from_surface",
    "parameter_grid",
    "revolution_ode_residual",
    "revolution_surface",
    "riemann_formula_patch",
    "standard_surface",
    "umbilic_surface_check",
    "verify_b_scroll",
]
