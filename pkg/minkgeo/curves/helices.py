"""Helix detection (Lancret), helical axes and planarity of curves."""

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.integrate import gauss_legendre
from ..core.lorentz import CausalClass, causal_character, inner
from .base import FD_TOLERANCE_FACTOR, CurveModel
from .frames import CurveKind, cartan_apparatus, cartan_jets, classify_curve, frenet_apparatus
from .standard import (
    FAMILY_LABELS,
    StandardCurve,
    standard_helix_parameters,
    standard_lightlike_helix,
)

logger = structlog.get_logger()

AXIS_LABELS = {
    CausalClass.SPACELIKE: "hyperbolic",
    CausalClass.TIMELIKE: "elliptic",
    CausalClass.LIGHTLIKE: "parabolic",
}


@dataclass
class HelixReport:
    is_helix: bool
    kind: Optional[CurveKind]
    axis: Optional[np.ndarray] = None
    axis_class: Optional[CausalClass] = None
    family_label: Optional[str] = None
    standard: Optional[StandardCurve] = None
    standard_params: Optional[Dict[str, float]] = None
    ratio: Optional[float] = None


@dataclass
class PlaneReport:
    normal: np.ndarray
    variation: float
    offset: float
    lam: np.ndarray


def _is_constant(values: np.ndarray, tol: float) -> bool:
    scale = max(1.0, float(np.max(np.abs(values))))
    return bool(np.ptp(values) <= tol * scale)


def helix_classify(
    curve: CurveModel,
    samples: int = 9,
    interval: tuple = (-1.0, 1.0),
    tol: float = 1e-6,
) -> HelixReport:
    """Decide whether ``curve`` is a helix and classify its axis.

    Admissible curves must be unit speed and lightlike curves arc-photon.
    """
    if not curve.exact:
        tol *= FD_TOLERANCE_FACTOR
    info = classify_curve(curve, samples, interval)
    ts = info.params
    euclidean = curve.ambient.nu == 0
    if info.kind is CurveKind.SEMI_LIGHTLIKE:
        plane = semi_lightlike_plane(curve, float(ts[0]), ts)
        return HelixReport(True, info.kind, plane.normal, CausalClass.LIGHTLIKE, "parabolic")

    if info.kind is CurveKind.LIGHTLIKE:
        data = [cartan_apparatus(curve, float(t)) for t in ts]
        c = np.array([d.pseudo_torsion for d in data])
        if not _is_constant(c, tol):
            return HelixReport(False, info.kind)
        first = data[0]
        ct = float(np.mean(c))
        axis = first.B if abs(ct) <= tol else first.T - first.B / ct
        axis_class = causal_character(axis, curve.ambient, 1e-7).causal_class
        standard, params = standard_lightlike_helix(ct, tol)
        logger.info("Classified lightlike helix", curve=curve.name, ctorsion=ct)
        return HelixReport(
            True, info.kind, axis, axis_class, AXIS_LABELS[axis_class], standard, params, ct
        )

    if info.kind is not CurveKind.ADMISSIBLE:
        raise PreconditionError("helix test needs an admissible or lightlike curve", curve=curve.name)
    data = [frenet_apparatus(curve, float(t)) for t in ts]
    kappa = np.array([d.kappa for d in data])
    tau = np.array([d.tau for d in data])
    ratio = tau / kappa
    if not _is_constant(ratio, tol):
        return HelixReport(False, info.kind)
    first = data[0]
    nu = curve.ambient.nu
    c = float(np.mean(ratio))
    if abs(c) <= tol:
        axis = first.B
    else:
        axis = first.T + ((-1) ** nu / c) * first.eps * first.B
    axis_class = causal_character(axis, curve.ambient, 1e-7).causal_class
    label = "elliptic" if euclidean else AXIS_LABELS[axis_class]
    report = HelixReport(True, info.kind, axis, axis_class, label, ratio=c)
    if _is_constant(kappa, tol) and _is_constant(tau, tol):
        standard, params = standard_helix_parameters(
            float(np.mean(kappa)), float(np.mean(tau)), first.eps, first.eta, euclidean, tol
        )
        report.standard, report.standard_params = standard, params
        if FAMILY_LABELS[standard] != label:
            logger.warning(
                "Axis label disagrees with standard family",
                curve=curve.name,
                label=label,
                family=standard.value,
            )
    logger.info("Classified helix", curve=curve.name, label=label, ratio=c)
    return report


def pseudo_torsion(curve: CurveModel, t: float) -> float:
    """-<N', B> of the trihedron as given, without orientation repair."""
    T, N, B = cartan_jets(curve, t)
    return float(-inner(N.derivative(1), B.value, curve.ambient))


def semi_lightlike_plane(curve: CurveModel, s0: float, ss: np.ndarray) -> PlaneReport:
    """The constant lightlike normal v = lambda(s) N(s) of a semi-lightlike curve.

    lambda(s) = exp(-int_{s0}^s c), with c the pseudo-torsion. Reports the
    spread of v over ``ss`` and the largest |<alpha(s) - alpha(s0), v>|.
    """
    ss = np.asarray(ss, dtype=float)
    lams: List[float] = []
    normals: List[np.ndarray] = []
    for s in ss:
        if s == s0:
            integral = 0.0
        else:
            integral = float(
                gauss_legendre(
                    lambda nodes: np.array([pseudo_torsion(curve, float(x)) for x in nodes]),
                    s0,
                    float(s),
                )
            )
        lam = float(np.exp(-integral))
        _, N, _ = cartan_jets(curve, float(s))
        lams.append(lam)
        normals.append(lam * np.real(N.value))
    vs = np.array(normals)
    _, N0, _ = cartan_jets(curve, s0)
    v = np.real(N0.value)
    variation = float(np.max(np.abs(vs - v)))
    p0 = np.asarray(curve.position(s0), dtype=float)
    offsets = [abs(float(inner(np.asarray(curve.position(float(s))) - p0, v, curve.ambient))) for s in ss]
    return PlaneReport(v, variation, max(offsets), np.array(lams))


def planarity_residual(points: np.ndarray) -> float:
    """Largest Euclidean distance from ``points`` to their best-fit plane."""
    P = np.asarray(points, dtype=float)
    if P.shape[0] < 4:
        return 0.0
    centered = P - P.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    return float(np.max(np.abs(centered @ vt[-1])))
