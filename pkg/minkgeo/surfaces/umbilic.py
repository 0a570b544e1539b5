"""Totally umbilic patches: planes and pseudo-spheres."""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.lorentz import inner
from .base import SurfaceModel, parameter_grid
from .forms import fundamental_forms

logger = structlog.get_logger()


class UmbilicLabel(str, Enum):
    PLANE = "plane"
    SPHERE = "sphere"
    DE_SITTER = "S21-type"
    HYPERBOLIC = "H2-type"
    ANTI_DE_SITTER = "H21-type"
    PSEUDO_SPHERE = "S22-type"
    NOT_UMBILIC = "not-umbilic"


@dataclass
class UmbilicReport:
    totally_umbilic: bool
    label: UmbilicLabel
    center: Optional[np.ndarray] = None
    radius: Optional[float] = None
    level: Optional[float] = None
    umbilic_residual: float = 0.0
    fit_residual: float = 0.0

    def to_dict(self) -> dict:
        return {
            "totally_umbilic": self.totally_umbilic,
            "label": self.label.value,
            "center": None if self.center is None else self.center.tolist(),
            "radius": self.radius,
            "level": self.level,
            "umbilic_residual": self.umbilic_residual,
            "fit_residual": self.fit_residual,
        }


def _label(nu: int, level: float) -> UmbilicLabel:
    if nu == 0:
        return UmbilicLabel.SPHERE
    if nu == 1:
        return UmbilicLabel.DE_SITTER if level > 0 else UmbilicLabel.HYPERBOLIC
    return UmbilicLabel.PSEUDO_SPHERE if level > 0 else UmbilicLabel.ANTI_DE_SITTER


def _fit_center(points: np.ndarray, weights: np.ndarray) -> tuple:
    """Solve <p, p> = 2 <p, c> - m for (c, m) in the least-squares sense."""
    A = np.column_stack([2 * points * weights, -np.ones(len(points))])
    b = (points * points) @ weights
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    return sol[:3], float(sol[3])


def umbilic_surface_check(
    m: SurfaceModel, nu: int = 8, nv: int = 8, tol: float = 1e-6, guard_band: float = 1e-3
) -> UmbilicReport:
    """Decide total umbilicity on a sample grid and identify the model surface.

    Umbilic points have II = lambda I. A totally umbilic patch with lambda = 0
    is a plane; otherwise <p - c, p - c> = k. The center c and level k are the
    least-squares solution over five spread samples, one more than the four
    unknowns, and the fit is checked at every sample.
    """
    sig = m.ambient
    us, vs = parameter_grid(m.domain, nu, nv, guard_band)
    lams: List[float] = []
    points: List[np.ndarray] = []
    worst = 0.0
    for u in us:
        for v in vs:
            forms = fundamental_forms(m, float(u), float(v))
            if forms.degenerate:
                raise PreconditionError("umbilic check needs a non-degenerate patch", u=float(u), v=float(v))
            first, second = forms.first, forms.second
            lam = float(np.sum(first * second) / np.sum(first * first))
            scale = float(np.abs(first).max() + np.abs(second).max())
            worst = max(worst, float(np.abs(second - lam * first).max()) / scale)
            lams.append(lam)
            points.append(np.real(m.position(float(u), float(v))))
    P = np.array(points)
    if worst > tol:
        logger.info("Patch is not totally umbilic", surface=m.name, residual=worst)
        return UmbilicReport(False, UmbilicLabel.NOT_UMBILIC, umbilic_residual=worst)
    if max(abs(x) for x in lams) <= tol:
        # II vanishes: the patch lies in the plane through P[0] with normal N
        normal = fundamental_forms(m, float(us[0]), float(vs[0])).normal
        offsets = inner(P - P[0], normal, sig)
        fit = float(np.max(np.abs(offsets)))
        return UmbilicReport(True, UmbilicLabel.PLANE, umbilic_residual=worst, fit_residual=fit)
    n = len(P)
    picks = [0, n - 1, (nv - 1), n - nv, n // 2 + nv // 2]
    c, offset = _fit_center(P[picks], sig.weights)
    level = float(inner(c, c, sig) - offset)
    if abs(level) <= tol:
        raise PreconditionError("fitted quadric is a lightcone, not a pseudo-sphere", level=level)
    residual = inner(P - c, P - c, sig) - level
    fit = float(np.max(np.abs(residual)))
    report = UmbilicReport(
        True,
        _label(sig.nu, level),
        c,
        float(np.sqrt(abs(level))),
        level,
        worst,
        fit,
    )
    logger.info("Fitted umbilic patch", surface=m.name, label=report.label.value, radius=report.radius)
    return report
