"""Causal classification of curves and the Frenet and Cartan trihedra."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.lorentz import (
    DEFAULT_TOL,
    CausalClass,
    classify_value,
    cross3,
    inner,
    null_completion,
)
from .base import FD_TOLERANCE_FACTOR, CurveModel, Reflected

logger = structlog.get_logger()


class CurveKind(str, Enum):
    ADMISSIBLE = "admissible"
    LIGHTLIKE = "lightlike"
    SEMI_LIGHTLIKE = "semi-lightlike"


@dataclass
class CurveClassification:
    classes: List[CausalClass]
    osculating: List[Optional[CausalClass]]
    constant_class: Optional[CausalClass]
    biregular: bool
    admissible: bool
    kind: Optional[CurveKind]
    params: np.ndarray = field(repr=False)


@dataclass
class FrenetData:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    tau: float
    eps: int
    eta: int
    det: float
    residual: float


@dataclass
class CartanData:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    pseudo_torsion: float
    pseudo_torsion_rate: float
    eps: int
    eta: int
    det: float
    positive: bool
    flipped: bool
    residual: float
    param: float


def _sample_params(curve: CurveModel, samples: int, interval: Optional[tuple]) -> np.ndarray:
    a, b = interval if interval is not None else curve.domain
    if not (np.isfinite(a) and np.isfinite(b)):
        raise PreconditionError("sampling needs a finite interval", curve=curve.name)
    return np.linspace(a, b, samples)


def classify_curve(
    curve: CurveModel,
    samples: int = 16,
    interval: Optional[tuple] = None,
    tol: float = DEFAULT_TOL,
) -> CurveClassification:
    """Causal class of the tangent at each sample, biregularity and admissibility."""
    if samples < 2:
        raise PreconditionError("classification needs at least two samples", samples=samples)
    if not curve.exact:
        tol *= FD_TOLERANCE_FACTOR
    sig = curve.ambient
    ts = _sample_params(curve, samples, interval)
    classes: List[CausalClass] = []
    planes: List[Optional[CausalClass]] = []
    biregular = True
    for t in ts:
        d = curve.derivatives(float(t), 2)
        d1, d2 = d[1], d[2]
        n1 = float(d1 @ d1)
        if n1 <= 1e-24:
            raise PreconditionError("non-regular point", curve=curve.name, t=float(t))
        classes.append(classify_value(float(inner(d1, d1, sig)), n1, tol))
        wedge = np.cross(d1, d2)
        if float(wedge @ wedge) <= tol * n1 * max(float(d2 @ d2), 1e-300):
            biregular = False
            planes.append(None)
            continue
        G = np.array(
            [
                [inner(d1, d1, sig), inner(d1, d2, sig)],
                [inner(d1, d2, sig), inner(d2, d2, sig)],
            ]
        )
        # the osculating plane is timelike, spacelike or lightlike as det G is <0, >0, 0
        planes.append(classify_value(float(np.linalg.det(G)), float(wedge @ wedge), tol))
    constant = classes[0] if all(c is classes[0] for c in classes) else None
    tangent_ok = all(c is not CausalClass.LIGHTLIKE for c in classes)
    planes_ok = biregular and all(p is not CausalClass.LIGHTLIKE for p in planes)
    admissible = biregular and tangent_ok and planes_ok
    kind: Optional[CurveKind] = None
    if admissible:
        kind = CurveKind.ADMISSIBLE
    elif biregular and constant is CausalClass.LIGHTLIKE:
        kind = CurveKind.LIGHTLIKE
    elif biregular and tangent_ok and all(p is CausalClass.LIGHTLIKE for p in planes):
        kind = CurveKind.SEMI_LIGHTLIKE
    logger.debug(
        "Classified curve",
        curve=curve.name,
        constant_class=None if constant is None else constant.value,
        biregular=biregular,
        kind=None if kind is None else kind.value,
    )
    return CurveClassification(classes, planes, constant, biregular, admissible, kind, ts)


def _sign(x: float) -> int:
    return 1 if x > 0 else -1


def frenet_apparatus(curve: CurveModel, s: float, tol: float = 1e-9) -> FrenetData:
    """Frenet trihedron, curvature and torsion of a unit-speed admissible curve."""
    sig = curve.ambient
    nu = sig.nu
    A = curve.jet(float(s), 4)
    T = A.differentiate()
    a2 = T.differentiate()
    q1 = float(inner(T.value, T.value, sig))
    if not curve.exact:
        tol *= FD_TOLERANCE_FACTOR
    if abs(abs(q1) - 1.0) > 1e-6 * (FD_TOLERANCE_FACTOR if not curve.exact else 1.0):
        raise PreconditionError("curve is not unit-speed at the requested point", s=s, speed=q1)
    eps = _sign(q1)
    q2 = inner(a2, a2, sig)
    scale = float(a2.value @ a2.value)
    if scale <= tol**2:
        raise PreconditionError("curvature vanishes: curve is not biregular", s=s)
    if abs(float(q2.value)) <= tol * scale:
        raise PreconditionError(
            "osculating plane is degenerate; use the Cartan trihedron", s=s
        )
    eta = _sign(float(q2.value))
    kappa = (q2 * float(eta)) ** 0.5
    N = a2 / kappa
    sign = (-1) ** nu * eps * eta
    B = cross3(T.truncate(2), N, sig) * float(sign)
    dN = N.differentiate()
    tau = inner(dN, B.truncate(1), sig) * float(sign)

    k, t_ = float(kappa.value), float(tau.value)
    Tv, Nv, Bv = T.value, N.value, B.value
    residual = max(
        np.max(np.abs(T.derivative(1) - k * Nv)),
        np.max(np.abs(dN.value - (-eps * eta * k * Tv + t_ * Bv))),
        np.max(np.abs(B.derivative(1) - (-1) ** (nu + 1) * eps * t_ * Nv)),
    )
    det = float(np.linalg.det(np.vstack([Tv, Nv, Bv])))
    return FrenetData(
        np.real(Tv), np.real(Nv), np.real(Bv), k, t_, eps, eta, det, float(residual)
    )


def _cartan_jets(curve: CurveModel, t: float, tol: float) -> tuple:
    sig = curve.ambient
    A = curve.jet(float(t), 5)
    T = A.differentiate()
    N = T.differentiate()
    tt = float(inner(T.value, T.value, sig))
    nn = float(inner(N.value, N.value, sig))
    tn = float(inner(T.value, N.value, sig))
    scale = max(float(T.value @ T.value), float(N.value @ N.value))
    if abs(tt) <= tol * scale:
        eps, eta = 0, 1
        ok = abs(nn - 1.0) <= 1e3 * tol and abs(tn) <= 1e3 * tol * scale
        lightlike, unit = T.truncate(3), N
    else:
        eps, eta = 1, 0
        ok = (
            abs(tt - 1.0) <= 1e3 * tol
            and abs(nn) <= tol * scale
            and abs(tn) <= 1e3 * tol * scale
            and float(N.value @ N.value) > tol
        )
        lightlike, unit = N, T.truncate(3)
    if not ok:
        raise PreconditionError(
            "(T,N) not valid lightlike-plane basis",
            t=t,
            products=[tt, nn, tn],
        )
    try:
        B = null_completion(lightlike, unit, sig)
    except PreconditionError as e:
        raise PreconditionError("no admissible root for the binormal", t=t) from e
    return T, N, B, eps, eta


def cartan_apparatus(
    curve: CurveModel, t: float, tol: float = 1e-9, strict: bool = False
) -> CartanData:
    """Cartan trihedron and pseudo-torsion of a lightlike or semi-lightlike curve.

    The curve must be arc-photon (lightlike) or unit-speed (semi-lightlike).
    A negatively oriented semi-lightlike curve is reflected t -> -t and the
    data refer to the reflected curve at -t. A negatively oriented lightlike
    curve cannot be repaired that way and is reported with ``positive=False``
    (or rejected when ``strict``).
    """
    if curve.ambient.n != 3 or curve.ambient.nu != 1:
        raise PreconditionError("Cartan trihedra live in L^3", ambient=str(curve.ambient))
    if not curve.exact:
        tol *= FD_TOLERANCE_FACTOR
    flipped = False
    T, N, B, eps, eta = _cartan_jets(curve, t, tol)
    det = float(np.linalg.det(np.vstack([T.value, N.value, B.value])))
    if det < 0 and eps == 1:
        curve, t, flipped = Reflected(curve), -t, True
        T, N, B, eps, eta = _cartan_jets(curve, t, tol)
        det = float(np.linalg.det(np.vstack([T.value, N.value, B.value])))
        logger.info("Reflected semi-lightlike curve to orient its trihedron", curve=curve.name)
    positive = det > 0
    if not positive:
        if strict:
            raise PreconditionError(
                "no admissible root: lightlike trihedron is negatively oriented", t=t
            )
        logger.warning("Negatively oriented lightlike trihedron", curve=curve.name, t=t)

    sig = curve.ambient
    dN = N.differentiate()
    c_jet = -inner(dN, B.truncate(2), sig)
    c, dc = float(c_jet.value), float(c_jet.derivative(1))
    Tv, Nv, Bv = T.value, N.value, B.value
    dT, dB = T.derivative(1), B.derivative(1)
    if eps == 0:
        expected = (Nv, c * Tv + Bv, c * Nv)
    else:
        expected = (Nv, c * Nv, Tv - c * Bv)
    residual = max(
        float(np.max(np.abs(got - want)))
        for got, want in zip((dT, dN.value, dB), expected)
    )
    return CartanData(
        Tv, Nv, Bv, c, dc, eps, eta, det, positive, flipped, residual, float(t)
    )


def cartan_jets(curve: CurveModel, t: float, tol: float = 1e-9) -> tuple:
    """Vector jets (T, N, B) of the Cartan trihedron, without orientation repair."""
    T, N, B, _, _ = _cartan_jets(curve, t, tol)
    return T, N, B


SAMPLE_COLUMNS = (
    "param", "x", "y", "z",
    "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz",
    "kappa_or_ctorsion", "tau",
)


def sample_row(
    t: float,
    point: Sequence[float],
    frame: Optional[Sequence[Any]] = None,
    invariant: Optional[float] = None,
    tau: Optional[float] = None,
) -> Dict[str, float]:
    """One curve sample record in ``SAMPLE_COLUMNS``; absent values stay out of the dict."""
    row = {"param": float(t), **{axis: float(x) for axis, x in zip("xyz", np.real(point))}}
    if frame is not None:
        for name, vec in zip("TNB", frame):
            row.update({f"{name}{axis}": float(x) for axis, x in zip("xyz", np.real(vec))})
    if invariant is not None:
        row["kappa_or_ctorsion"] = float(invariant)
    if tau is not None:
        row["tau"] = float(tau)
    return row


def frame_sample(curve: CurveModel, t: float, kind: Optional[CurveKind], tol: float = 1e-9) -> Dict[str, float]:
    """Position, trihedron and invariants of ``curve`` at t.

    Admissible curves carry (kappa, tau); lightlike and semi-lightlike ones
    carry the pseudo-torsion. Points without a trihedron keep only the
    position.
    """
    point = np.asarray(curve.position(float(t)))
    try:
        if kind is CurveKind.ADMISSIBLE:
            f = frenet_apparatus(curve, t, tol)
            return sample_row(t, point, (f.T, f.N, f.B), f.kappa, f.tau)
        if kind is not None:
            c = cartan_apparatus(curve, t, tol)
            return sample_row(t, point, (c.T, c.N, c.B), c.pseudo_torsion)
    except PreconditionError as e:
        logger.debug("No trihedron at sample", curve=curve.name, t=t, error=str(e))
    return sample_row(t, point)


__all__ = [
    "SAMPLE_COLUMNS",
    "CartanData",
    "CurveClassification",
    "CurveKind",
    "FrenetData",
    "cartan_apparatus",
    "cartan_jets",
    "classify_curve",
    "frame_sample",
    "frenet_apparatus",
    "sample_row",
]
