"""Surfaces of revolution and the profiles that give them constant Gaussian curvature."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
import structlog
from scipy.optimize import brentq

from ..core.errors import PreconditionError
from ..core.integrate import primitive
from ..core.jets import cos, cosh, is_jet, sin, sinh, vector
from ..core.lorentz import LORENTZ3, Signature
from ..curves.base import ClosedFormCurve, CurveModel
from .base import SurfaceModel

logger = structlog.get_logger()


class RevolutionKind(str, Enum):
    """Rotation group used to sweep the profile.

    ``radius`` and ``height`` name the profile coordinates that the rotation
    moves and keeps fixed; the remaining coordinate must vanish on the profile.
    """

    ELLIPTIC_Z = "elliptic-z"
    HYPERBOLIC_Z = "hyperbolic-z"
    ELLIPTIC_X = "elliptic-x"
    HYPERBOLIC_X = "hyperbolic-x"


# (radius axis, height axis, vanishing axis) of the profile for each kind
_AXES: Dict[RevolutionKind, Tuple[int, int, int]] = {
    RevolutionKind.ELLIPTIC_Z: (0, 2, 1),
    RevolutionKind.HYPERBOLIC_Z: (1, 2, 0),
    RevolutionKind.ELLIPTIC_X: (1, 0, 2),
    RevolutionKind.HYPERBOLIC_X: (1, 0, 2),
}

_V_DOMAINS = {
    RevolutionKind.ELLIPTIC_Z: (-math.pi, math.pi),
    RevolutionKind.ELLIPTIC_X: (-math.pi, math.pi),
    RevolutionKind.HYPERBOLIC_Z: (-2.0, 2.0),
    RevolutionKind.HYPERBOLIC_X: (-2.0, 2.0),
}


def sweep(kind: RevolutionKind, r: Any, h: Any, v: Any) -> Any:
    """Orbit point of the profile point with radius ``r`` and height ``h``."""
    if kind is RevolutionKind.ELLIPTIC_Z:
        return vector(r * cos(v), r * sin(v), h)
    if kind is RevolutionKind.HYPERBOLIC_Z:
        return vector(r * sinh(v), r * cosh(v), h)
    if kind is RevolutionKind.ELLIPTIC_X:
        return vector(h, r * cos(v), r * sin(v))
    return vector(h, r * cosh(v), r * sinh(v))


class RevolutionSurface(SurfaceModel):
    """Orbit of a planar profile curve under a one-parameter rotation group."""

    def __init__(
        self,
        profile: CurveModel,
        kind: RevolutionKind = RevolutionKind.ELLIPTIC_Z,
        v_range: Optional[tuple] = None,
        name: Optional[str] = None,
    ) -> None:
        kind = RevolutionKind(kind)
        v_range = tuple(v_range) if v_range is not None else _V_DOMAINS[kind]
        super().__init__(
            name or f"revolution({profile.name})", profile.ambient, (profile.domain, v_range)
        )
        self.profile = profile
        self.kind = kind

    @property
    def exact(self) -> bool:
        return self.profile.exact

    def position(self, u: Any, v: Any) -> Any:
        ir, ih, _ = _AXES[self.kind]
        if is_jet(u):
            P = u.compose(np.real(self.profile.jet(float(u.value), u.order).coeffs))
            return sweep(self.kind, P[ir], P[ih], v)
        P = self.profile.sample(u)
        return sweep(self.kind, P[..., ir], P[..., ih], v)


def revolution_surface(
    profile: CurveModel,
    kind: RevolutionKind = RevolutionKind.ELLIPTIC_Z,
    v_range: Optional[tuple] = None,
    samples: int = 9,
    tol: float = 1e-9,
) -> RevolutionSurface:
    """Sweep ``profile`` around the rotation axis of ``kind``.

    The profile must lie in the plane through the axis and stay off the axis.
    """
    kind = RevolutionKind(kind)
    ir, _, i0 = _AXES[kind]
    a, b = profile.domain
    if not (np.isfinite(a) and np.isfinite(b)):
        a, b = -1.0, 1.0
    pts = profile.sample(np.linspace(a, b, samples))
    scale = max(1.0, float(np.max(np.abs(pts))))
    if np.max(np.abs(pts[:, i0])) > tol * scale:
        raise PreconditionError(
            "profile is not in the plane of the rotation axis", curve=profile.name, kind=kind.value
        )
    if np.min(np.abs(pts[:, ir])) <= tol * scale:
        raise PreconditionError("profile touches the rotation axis", curve=profile.name)
    logger.debug("Built revolution surface", curve=profile.name, kind=kind.value)
    return RevolutionSurface(profile, kind, v_range)


@dataclass
class ConstantCurvatureProfile:
    curve: ClosedFormCurve
    K: float
    eps: int
    kind: RevolutionKind
    interval: Tuple[float, float]


def _radius_functions(
    K: float, eps: int, amplitude: float, slope: float
) -> Tuple[Callable[[Any], Any], Callable[[Any], Any], str]:
    c = eps * K
    if c > 0:
        k = math.sqrt(c)
        return (lambda u: amplitude * cos(k * u)), (lambda u: -amplitude * k * sin(k * u)), "cos"
    if c < 0:
        k = math.sqrt(-c)
        return (lambda u: amplitude * cosh(k * u)), (lambda u: amplitude * k * sinh(k * u)), "cosh"
    return (lambda u: amplitude + slope * u), (lambda u: 0.0 * u + slope), "affine"


def _admissible_interval(q: Callable[[float], float], limit: float) -> Tuple[float, float]:
    if q(0.0) <= 0:
        raise PreconditionError("height integrand is negative at the base point", value=q(0.0))
    bounds = []
    for direction in (1.0, -1.0):
        ts = direction * np.linspace(0.0, limit, 400)
        end = direction * limit
        for prev, cur in zip(ts[:-1], ts[1:]):
            if q(float(cur)) <= 0:
                end = brentq(q, float(prev), float(cur))
                break
        bounds.append(end)
    return bounds[1], bounds[0]


def constant_curvature_profile(
    K: float,
    eps: int,
    kind: RevolutionKind = RevolutionKind.ELLIPTIC_Z,
    ambient: Signature = LORENTZ3,
    amplitude: float = 1.0,
    slope: float = 0.0,
    limit: float = 1.5,
) -> ConstantCurvatureProfile:
    """Unit-speed profile whose surface of revolution has constant curvature ``K``.

    The radius solves f'' + eps K f = 0 and the height is g = int sqrt(q) with
    q = (eps - w_r f'^2) / w_h, where w_r and w_h are the metric weights of the
    radius and height axes and eps the causal indicator of the profile.
    """
    kind = RevolutionKind(kind)
    if eps not in (1, -1):
        raise PreconditionError("profile indicator must be +1 or -1", eps=eps)
    ir, ih, _ = _AXES[kind]
    w_r, w_h = float(ambient.weights[ir]), float(ambient.weights[ih])
    f, df, label = _radius_functions(K, eps, amplitude, slope)

    def integrand(t: Any) -> Any:
        return ((eps - w_r * df(t) * df(t)) / w_h) ** 0.5

    def q(t: float) -> float:
        return float((eps - w_r * df(t) ** 2) / w_h)

    interval = _admissible_interval(q, limit)
    # stay clear of the endpoint where the height integrand vanishes
    margin = 1e-9 * (interval[1] - interval[0])
    domain = (interval[0] + margin, interval[1] - margin)

    def fn(u: Any) -> Any:
        g = primitive(integrand, 0.0, u)
        coords = [None, None, None]
        coords[ir], coords[ih] = f(u), g
        zero = 0.0 * f(u)
        return vector(*(zero if x is None else x for x in coords))

    curve = ClosedFormCurve(
        f"profile(K={K:g},eps={eps:+d},{label})",
        fn,
        ambient,
        domain,
        params={"K": K, "eps": eps, "amplitude": amplitude, "slope": slope},
    )
    logger.debug("Built constant-curvature profile", K=K, eps=eps, kind=kind.value, domain=list(domain))
    return ConstantCurvatureProfile(curve, K, eps, kind, domain)


def revolution_ode_residual(
    profile: CurveModel, K: float, eps: int, kind: RevolutionKind, us: Any
) -> Dict[str, float]:
    """Largest |f'' + eps K f| and |w_r f'^2 + w_h g'^2 - eps| over ``us``."""
    kind = RevolutionKind(kind)
    ir, ih, _ = _AXES[kind]
    w = profile.ambient.weights
    ode, speed = 0.0, 0.0
    for u in np.asarray(us, dtype=float):
        d = np.real(profile.derivatives(float(u), 2))
        f, df, ddf = d[0][ir], d[1][ir], d[2][ir]
        dg = d[1][ih]
        ode = max(ode, abs(ddf + eps * K * f))
        speed = max(speed, abs(w[ir] * df * df + w[ih] * dg * dg - eps))
    return {"ode_residual": float(ode), "speed_residual": float(speed)}
