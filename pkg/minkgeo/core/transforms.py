"""Pseudo-orthogonal and Poincare transformations: membership, components, conjugacy."""

from enum import Enum
from typing import Optional

import numpy as np
import structlog
from pydantic import BaseModel
from scipy.linalg import null_space

from .errors import PreconditionError
from .lorentz import (
    DEFAULT_TOL,
    LORENTZ3,
    CausalClass,
    Signature,
    causal_character,
    inner,
)

logger = structlog.get_logger()


class Component(str, Enum):
    """Connected component of O_nu(n): sign of det, then time orientation."""

    PLUS_UP = "PlusUp"
    PLUS_DOWN = "PlusDown"
    MINUS_UP = "MinusUp"
    MINUS_DOWN = "MinusDown"


class Conjugacy(str, Enum):
    HYPERBOLIC = "Hyperbolic"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"


class PseudoOrthReport(BaseModel):
    """Classification of a square matrix against O_nu(n)."""

    is_member: bool
    det_total: float
    det_spatial: float
    det_temporal: float
    component: Optional[Component] = None
    conjugacy: Optional[Conjugacy] = None
    angle: Optional[float] = None
    axis: Optional[list] = None


class ConformalDecomposition(BaseModel):
    """Result of splitting a causal automorphism as scale times Poincare map."""

    scale: float
    is_decomposable: bool
    linear: list
    translation: list


# ---------- generators ----------

def hyperbolic_rotation(phi: float) -> np.ndarray:
    """The boost of L^2 with entries cosh(phi), sinh(phi)."""
    c, s = np.cosh(phi), np.sinh(phi)
    return np.array([[c, s], [s, c]])


def euclidean_rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def hyperbolic_model(phi: float) -> np.ndarray:
    """Boost of L^3 in the (y, z) plane; fixes e1."""
    out = np.eye(3)
    out[1:, 1:] = hyperbolic_rotation(phi)
    return out


def elliptic_model(theta: float) -> np.ndarray:
    """Rotation of L^3 about the timelike axis e3."""
    out = np.eye(3)
    out[:2, :2] = euclidean_rotation(theta)
    return out


def parabolic_model(theta: float) -> np.ndarray:
    """Null rotation of L^3 fixing the lightlike vector (0, 1, 1)."""
    t2 = theta * theta / 2.0
    return np.array(
        [
            [1.0, -theta, theta],
            [theta, 1.0 - t2, t2],
            [theta, -t2, 1.0 + t2],
        ]
    )


def axis_flip(index: int, n: int = 3) -> np.ndarray:
    out = np.eye(n)
    out[index, index] = -1.0
    return out


# ---------- classification ----------

def is_member(L: np.ndarray, sig: Signature, tol: float = DEFAULT_TOL) -> bool:
    L = np.asarray(L, dtype=float)
    eta = sig.metric
    residual = np.max(np.abs(L.T @ eta @ L - eta))
    scale = max(1.0, float(np.max(np.abs(L))) ** 2)
    return bool(residual <= tol * scale)


def _block_dets(L: np.ndarray, sig: Signature) -> tuple:
    k = sig.n - sig.nu
    spatial = float(np.linalg.det(L[:k, :k])) if k else 1.0
    temporal = float(np.linalg.det(L[k:, k:])) if sig.nu else 1.0
    return spatial, temporal


def _component(det_total: float, det_temporal: float) -> Component:
    if det_total > 0:
        return Component.PLUS_UP if det_temporal > 0 else Component.PLUS_DOWN
    return Component.MINUS_UP if det_temporal > 0 else Component.MINUS_DOWN


def _conjugacy3(L: np.ndarray, tol: float) -> tuple:
    if np.allclose(L, np.eye(3), atol=tol):
        return None, 0.0, None
    fixed = null_space(L - np.eye(3), rcond=1e-8)
    if fixed.shape[1] != 1:
        raise PreconditionError("fixed space of a +up member is not a line")
    axis = fixed[:, 0]
    half = (float(np.trace(L)) - 1.0) / 2.0
    cls = causal_character(axis, LORENTZ3, tol=1e-7).causal_class
    if cls is CausalClass.SPACELIKE:
        return Conjugacy.HYPERBOLIC, float(np.arccosh(max(half, 1.0))), axis
    if cls is CausalClass.TIMELIKE:
        return Conjugacy.ELLIPTIC, float(np.arccos(np.clip(half, -1.0, 1.0))), axis
    return Conjugacy.PARABOLIC, None, axis


def classify_transform(
    L: np.ndarray, sig: Signature, tol: float = DEFAULT_TOL
) -> PseudoOrthReport:
    """Membership test, component label and (for n <= 3, nu = 1) the conjugacy class."""
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise PreconditionError("transform must be a square matrix", shape=list(L.shape))
    if L.shape[0] != sig.n:
        raise PreconditionError(
            "matrix size does not match signature", size=L.shape[0], signature=str(sig)
        )
    det_total = float(np.linalg.det(L))
    spatial, temporal = _block_dets(L, sig)
    report = PseudoOrthReport(
        is_member=is_member(L, sig, tol),
        det_total=det_total,
        det_spatial=spatial,
        det_temporal=temporal,
    )
    if not report.is_member:
        logger.debug("Matrix is not a pseudo-orthogonal member", signature=str(sig))
        return report
    report.component = _component(det_total, temporal)
    if report.component is not Component.PLUS_UP or sig.nu != 1:
        return report
    if sig.n == 2:
        report.angle = float(np.arcsinh(L[1, 0]))
        report.conjugacy = Conjugacy.HYPERBOLIC if report.angle else None
    elif sig.n == 3:
        conjugacy, angle, axis = _conjugacy3(L, 1e-12)
        report.conjugacy = conjugacy
        report.angle = angle
        report.axis = None if axis is None else axis.tolist()
    return report


def margulis_invariant(L: np.ndarray, w: np.ndarray) -> float:
    """Signed displacement <w, v1> of the affine map x -> Lx + w along its axis."""
    L = np.asarray(L, dtype=float)
    report = classify_transform(L, LORENTZ3)
    if report.conjugacy is not Conjugacy.HYPERBOLIC:
        raise PreconditionError(
            "Margulis invariant needs a hyperbolic +up transformation",
            conjugacy=None if report.conjugacy is None else report.conjugacy.value,
        )
    values, vectors = np.linalg.eig(L)
    values = values.real
    vectors = vectors.real
    order = np.argsort(values)
    v_small, v_one, v_big = (vectors[:, i] for i in order)
    v_small = v_small if v_small[-1] > 0 else -v_small
    v_big = v_big if v_big[-1] > 0 else -v_big
    v_one = v_one / np.sqrt(float(inner(v_one, v_one, LORENTZ3)))
    if np.linalg.det(np.vstack([v_big, v_one, v_small])) < 0:
        v_one = -v_one
    return float(inner(np.asarray(w, dtype=float), v_one, LORENTZ3))


def alexandrov_zeeman_decomposition(
    M: np.ndarray,
    translation: Optional[np.ndarray] = None,
    sig: Signature = LORENTZ3,
    tol: float = 1e-9,
) -> ConformalDecomposition:
    """Recover the unique split x -> c * Lambda x + b with Lambda in the +up component."""
    M = np.asarray(M, dtype=float)
    n = sig.n
    b = np.zeros(n) if translation is None else np.asarray(translation, dtype=float)
    det = float(np.linalg.det(M))
    if abs(det) <= tol:
        raise PreconditionError("causal automorphism must be invertible")
    c = abs(det) ** (1.0 / n)
    Lam = M / c
    report = classify_transform(Lam, sig, tol)
    ok = report.is_member and report.component is Component.PLUS_UP
    return ConformalDecomposition(
        scale=c, is_decomposable=ok, linear=Lam.tolist(), translation=b.tolist()
    )
