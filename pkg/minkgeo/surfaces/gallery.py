"""Named surfaces: quadrics, constant-curvature realizations, graphs and translation surfaces."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.jets import Jet2, cos, cosh, is_jet, sin, sinh, vector
from ..core.lorentz import EUCLIDEAN3, INDEX2_3, LORENTZ3, Signature
from ..curves.base import ClosedFormCurve, CurveModel
from ..curves.standard import standard_curve
from .base import ClosedFormSurface, SurfaceModel
from .revolution import RevolutionKind, RevolutionSurface, constant_curvature_profile

logger = structlog.get_logger()


class StandardSurface(str, Enum):
    DE_SITTER = "de-sitter"
    HYPERBOLIC_PLANE = "hyperbolic-plane"
    ANTI_DE_SITTER = "anti-de-sitter"
    SPHERE = "sphere"
    PLANE = "plane"
    CYLINDER = "cylinder"
    GRAPH = "graph"
    LIGHTLIKE_TRANSLATION = "lightlike-translation"
    REALIZATION = "realization"


@dataclass(frozen=True)
class Realization:
    """Isometric realization of a constant-curvature Fermi metric as a surface of revolution."""

    K: float
    ambient: Signature
    kind: RevolutionKind
    eps: int
    metric: str


# keyed by (sign of K, ambient, causal class of the base geodesic)
REALIZATIONS: Dict[str, Realization] = {
    "kpos-l3-spacelike": Realization(1.0, LORENTZ3, RevolutionKind.ELLIPTIC_Z, -1, "-du^2 + cosh^2 u dv^2"),
    "kpos-r32-spacelike": Realization(1.0, INDEX2_3, RevolutionKind.HYPERBOLIC_Z, -1, "-du^2 + cosh^2 u dv^2"),
    "kpos-l3-timelike": Realization(1.0, LORENTZ3, RevolutionKind.HYPERBOLIC_X, 1, "du^2 - cos^2 u dv^2"),
    "kpos-r32-timelike": Realization(1.0, INDEX2_3, RevolutionKind.ELLIPTIC_X, 1, "du^2 - cos^2 u dv^2"),
    "kneg-l3-spacelike": Realization(-1.0, LORENTZ3, RevolutionKind.ELLIPTIC_Z, -1, "-du^2 + cos^2 u dv^2"),
    "kneg-r32-spacelike": Realization(-1.0, INDEX2_3, RevolutionKind.HYPERBOLIC_Z, -1, "-du^2 + cos^2 u dv^2"),
    "kneg-l3-timelike": Realization(-1.0, LORENTZ3, RevolutionKind.HYPERBOLIC_X, 1, "du^2 - cosh^2 u dv^2"),
    "kneg-r32-timelike": Realization(-1.0, INDEX2_3, RevolutionKind.ELLIPTIC_X, 1, "du^2 - cosh^2 u dv^2"),
}


def realization(key: str) -> RevolutionSurface:
    """One of the eight constant-curvature realizations in L^3 and R^3_2."""
    try:
        spec = REALIZATIONS[key]
    except KeyError as e:
        raise PreconditionError(f"Unknown realization: {key}", known=sorted(REALIZATIONS)) from e
    profile = constant_curvature_profile(spec.K, spec.eps, spec.kind, spec.ambient)
    surface = RevolutionSurface(profile.curve, spec.kind, name=f"realization:{key}")
    surface.params.update(K=spec.K, metric=spec.metric)
    return surface


def _pseudo_sphere_normal(center: np.ndarray, radius: float) -> Callable[[Any], np.ndarray]:
    return lambda p: (np.asarray(p, dtype=float) - center) / radius


def de_sitter(center: Sequence[float] = (0.0, 0.0, 0.0), radius: float = 1.0) -> ClosedFormSurface:
    """S^2_1(c, r): c + r (cosh u cos v, cosh u sin v, sinh u), Gauss map (p - c) / r."""
    if radius <= 0:
        raise PreconditionError("radius must be positive", radius=radius)
    c = np.asarray(center, dtype=float)

    def fn(u: Any, v: Any) -> Any:
        return vector(
            c[0] + radius * cosh(u) * cos(v),
            c[1] + radius * cosh(u) * sin(v),
            c[2] + radius * sinh(u),
        )

    unit = _pseudo_sphere_normal(c, radius)
    return ClosedFormSurface(
        "de-sitter",
        fn,
        LORENTZ3,
        ((-1.5, 1.5), (-math.pi, math.pi)),
        {"center": c.tolist(), "radius": radius},
        normal=lambda u, v: unit(fn(u, v)),
    )


def hyperbolic_plane(radius: float = 1.0) -> ClosedFormSurface:
    """The future sheet H^2(r) = {<p, p> = -r^2, z > 0}, Gauss map p / r."""

    def fn(u: Any, v: Any) -> Any:
        return vector(radius * sinh(u) * cos(v), radius * sinh(u) * sin(v), radius * cosh(u))

    unit = _pseudo_sphere_normal(np.zeros(3), radius)
    return ClosedFormSurface(
        "hyperbolic-plane",
        fn,
        LORENTZ3,
        ((0.1, 2.0), (-math.pi, math.pi)),
        {"radius": radius},
        normal=lambda u, v: unit(fn(u, v)),
    )


def anti_de_sitter(radius: float = 1.0) -> ClosedFormSurface:
    """H^2_1(r) in R^3_2: r (cos u sinh v, cos u cosh v, sin u), Gauss map p / r."""

    def fn(u: Any, v: Any) -> Any:
        return vector(radius * cos(u) * sinh(v), radius * cos(u) * cosh(v), radius * sin(u))

    unit = _pseudo_sphere_normal(np.zeros(3), radius)
    return ClosedFormSurface(
        "anti-de-sitter",
        fn,
        INDEX2_3,
        ((-1.5, 1.5), (-2.0, 2.0)),
        {"radius": radius},
        normal=lambda u, v: unit(fn(u, v)),
    )


def sphere(radius: float = 1.0) -> ClosedFormSurface:
    """Round sphere in R^3 by latitude u and longitude v, Gauss map p / r."""

    def fn(u: Any, v: Any) -> Any:
        return vector(radius * cos(u) * cos(v), radius * cos(u) * sin(v), radius * sin(u))

    unit = _pseudo_sphere_normal(np.zeros(3), radius)
    return ClosedFormSurface(
        "sphere",
        fn,
        EUCLIDEAN3,
        ((-1.5, 1.5), (-math.pi, math.pi)),
        {"radius": radius},
        normal=lambda u, v: unit(fn(u, v)),
    )


def plane(ambient: Signature = LORENTZ3, height: float = 0.0) -> ClosedFormSurface:
    return ClosedFormSurface(
        "plane",
        lambda u, v: vector(u, v, 0.0 * u + height),
        ambient,
        ((-1.0, 1.0), (-1.0, 1.0)),
        {"height": height},
    )


def cylinder(radius: float = 1.0) -> ClosedFormSurface:
    """Timelike cylinder (r cos v, r sin v, u) in L^3."""
    return ClosedFormSurface(
        "cylinder",
        lambda u, v: vector(radius * cos(v), radius * sin(v), u + 0.0 * v),
        LORENTZ3,
        ((-1.0, 1.0), (-math.pi, math.pi)),
        {"radius": radius},
    )


def _default_height(u: Any, v: Any) -> Any:
    return (u * u + v * v) / 4.0


def graph(
    height: Optional[Callable[[Any, Any], Any]] = None,
    domain: Tuple[Tuple[float, float], Tuple[float, float]] = ((-0.5, 0.5), (-0.5, 0.5)),
) -> ClosedFormSurface:
    """Graph (u, v, f(u, v)) in L^3; ``height`` must accept jets."""
    f = height or _default_height
    return ClosedFormSurface("graph", lambda u, v: vector(u, v, f(u, v)), LORENTZ3, domain)


def graph_curvature(height: Callable[[Any, Any], Any], u: float, v: float) -> float:
    """K = (f_uv^2 - f_uu f_vv) / (-1 + f_u^2 + f_v^2)^2 of a graph in L^3."""
    U, V = Jet2.variables(u, v, 2)
    f = height(U, V)
    fu, fv = f.partial(1, 0), f.partial(0, 1)
    fuu, fuv, fvv = f.partial(2, 0), f.partial(1, 1), f.partial(0, 2)
    return float((fuv**2 - fuu * fvv) / (-1.0 + fu**2 + fv**2) ** 2)


class TranslationSurface(SurfaceModel):
    """x(u, v) = alpha(u) + beta(v)."""

    def __init__(self, alpha: CurveModel, beta: CurveModel, name: str = "translation") -> None:
        if alpha.ambient != beta.ambient:
            raise PreconditionError("translation surface needs curves in one ambient space")
        super().__init__(name, alpha.ambient, (alpha.domain, beta.domain))
        self.alpha = alpha
        self.beta = beta

    @property
    def exact(self) -> bool:
        return self.alpha.exact and self.beta.exact

    def position(self, u: Any, v: Any) -> Any:
        if is_jet(u):
            a = u.compose(np.real(self.alpha.jet(float(u.value), u.order).coeffs))
            b = v.compose(np.real(self.beta.jet(float(v.value), v.order).coeffs))
            return a + b
        return self.alpha.sample(u) + self.beta.sample(v)


def lightlike_translation(radius: float = 1.0) -> TranslationSurface:
    """Timelike critical surface swept by two lightlike helices.

    alpha(u) = r (cos u, sin u, u) and beta(v) = r (cos v, -sin v, -v); the
    tangent plane is degenerate where u + v is a multiple of 2 pi.
    """
    alpha = standard_curve("lightlike-helix", r=radius)
    alpha.domain = (0.3, 2.5)
    beta = ClosedFormCurve(
        "lightlike-helix~mirror",
        lambda t: vector(radius * cos(t), -radius * sin(t), -radius * t),
        LORENTZ3,
        (0.3, 2.5),
        {"r": radius},
    )
    return TranslationSurface(alpha, beta, "lightlike-translation")


_FACTORIES: Dict[StandardSurface, Callable[..., SurfaceModel]] = {
    StandardSurface.DE_SITTER: de_sitter,
    StandardSurface.HYPERBOLIC_PLANE: hyperbolic_plane,
    StandardSurface.ANTI_DE_SITTER: anti_de_sitter,
    StandardSurface.SPHERE: sphere,
    StandardSurface.PLANE: plane,
    StandardSurface.CYLINDER: cylinder,
    StandardSurface.GRAPH: graph,
    StandardSurface.LIGHTLIKE_TRANSLATION: lightlike_translation,
    StandardSurface.REALIZATION: realization,
}

# closed-form curvatures of the named quadrics (unit radius, position Gauss map)
EXPECTED_CURVATURES = {
    StandardSurface.DE_SITTER: {"K": 1.0, "H": -1.0},
    StandardSurface.HYPERBOLIC_PLANE: {"K": -1.0, "H": 1.0},
    StandardSurface.ANTI_DE_SITTER: {"K": -1.0, "H": 1.0},
    StandardSurface.SPHERE: {"K": 1.0, "H": -1.0},
    StandardSurface.PLANE: {"K": 0.0, "H": 0.0},
}


def standard_surface(kind: str, **params: Any) -> SurfaceModel:
    """Build a named surface; realizations are addressed as ``realization:<key>``."""
    if kind.startswith("realization:"):
        return realization(kind.split(":", 1)[1])
    try:
        key = StandardSurface(kind)
    except ValueError as e:
        known = sorted(k.value for k in StandardSurface) + [f"realization:{k}" for k in REALIZATIONS]
        raise PreconditionError(f"Unknown surface: {kind}", known=known) from e
    try:
        return _FACTORIES[key](**params)
    except TypeError as e:
        raise PreconditionError(f"invalid parameters for {kind}", error=str(e)) from e
