"""Curves from their invariants: integration of the Frenet and Cartan systems."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Sequence, Union

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.integrate import rk4
from ..core.lorentz import EUCLIDEAN3, LORENTZ3, Signature, gram_matrix
from .frames import sample_row

logger = structlog.get_logger()

Profile = Union[float, Callable[[float], float]]

SQRT_HALF = np.sqrt(0.5)


class ReconstructionKind(str, Enum):
    ADMISSIBLE = "admissible"
    LIGHTLIKE = "lightlike"
    SEMI_LIGHTLIKE = "semi-lightlike"


# Cartan frames of the standard positive basis; each satisfies its kind's products
STANDARD_FRAMES: Dict[ReconstructionKind, np.ndarray] = {
    ReconstructionKind.LIGHTLIKE: np.array(
        [[SQRT_HALF, 0.0, SQRT_HALF], [0.0, 1.0, 0.0], [-SQRT_HALF, 0.0, SQRT_HALF]]
    ),
    ReconstructionKind.SEMI_LIGHTLIKE: np.array(
        [[1.0, 0.0, 0.0], [0.0, SQRT_HALF, SQRT_HALF], [0.0, -SQRT_HALF, SQRT_HALF]]
    ),
}

# expected Gram matrices of (T, N, B)
_CARTAN_GRAMS = {
    ReconstructionKind.LIGHTLIKE: np.array([[0.0, 0.0, -1.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]]),
    ReconstructionKind.SEMI_LIGHTLIKE: np.array(
        [[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, -1.0, 0.0]]
    ),
}

_PAIRS = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


@dataclass
class ReconstructionSpec:
    """Invariants, initial data and parameter grid of a reconstruction run.

    For ``ADMISSIBLE`` both ``kappa`` and ``tau`` are used; otherwise
    ``ctorsion`` is the pseudo-torsion profile. Profiles are constants or
    callables of the parameter.
    """

    kind: ReconstructionKind
    initial_point: np.ndarray
    initial_frame: np.ndarray
    param_range: tuple
    step: float
    kappa: Profile = 1.0
    tau: Profile = 0.0
    ctorsion: Profile = 0.0
    ambient: Signature = LORENTZ3


@dataclass
class ReconstructionResult:
    params: np.ndarray
    points: np.ndarray
    frames: np.ndarray = field(repr=False)
    drift: float
    products: np.ndarray = field(repr=False)
    eps: int = 0
    eta: int = 0


def _profile(p: Profile) -> Callable[[float], float]:
    if callable(p):
        return p
    value = float(p)
    return lambda _t: value


def _frame_products(frame: np.ndarray, sig: Signature) -> np.ndarray:
    G = gram_matrix(frame, frame, sig)
    return np.array([G[i, j] for i, j in _PAIRS])


def validate_frame(kind: ReconstructionKind, frame: np.ndarray, sig: Signature, tol: float = 1e-9) -> tuple:
    """Check the frame conditions; returns the indicators (eps, eta)."""
    frame = np.asarray(frame, dtype=float)
    if frame.shape != (3, 3):
        raise PreconditionError("initial frame must be three 3-vectors", shape=list(frame.shape))
    G = gram_matrix(frame, frame, sig)
    det = float(np.linalg.det(frame))
    if kind is ReconstructionKind.ADMISSIBLE:
        diag = np.diag(G)
        off = G - np.diag(diag)
        if np.max(np.abs(off)) > tol or np.max(np.abs(np.abs(diag) - 1.0)) > tol:
            raise PreconditionError("admissible frame must be orthonormal", gram=G.tolist())
        if det <= 0:
            raise PreconditionError("admissible frame must be positively oriented", det=det)
        return int(np.sign(diag[0])), int(np.sign(diag[1]))
    if sig != LORENTZ3:
        raise PreconditionError("Cartan frames live in L^3", ambient=str(sig))
    if np.max(np.abs(G - _CARTAN_GRAMS[kind])) > tol:
        raise PreconditionError(
            "initial frame violates the Cartan conditions", kind=kind.value, gram=G.tolist()
        )
    if det <= 0:
        logger.warning("Cartan frame is negatively oriented", kind=kind.value, det=det)
    return (0, 1) if kind is ReconstructionKind.LIGHTLIKE else (1, 0)


def _rhs(spec: ReconstructionSpec, eps: int, eta: int) -> Callable[[float, np.ndarray], np.ndarray]:
    nu = spec.ambient.nu
    kind = spec.kind
    kappa, tau, c = _profile(spec.kappa), _profile(spec.tau), _profile(spec.ctorsion)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        T, N, B = y[3:6], y[6:9], y[9:12]
        if kind is ReconstructionKind.ADMISSIBLE:
            k, w = kappa(t), tau(t)
            dT = k * N
            dN = -eps * eta * k * T + w * B
            dB = (-1) ** (nu + 1) * eps * w * N
        elif kind is ReconstructionKind.LIGHTLIKE:
            ct = c(t)
            dT, dN, dB = N, ct * T + B, ct * N
        else:
            ct = c(t)
            dT, dN, dB = N, ct * N, T - ct * B
        return np.concatenate([T, dT, dN, dB])

    return rhs


def reconstruct_curve(spec: ReconstructionSpec) -> ReconstructionResult:
    """Integrate the frame system with RK4 and the curve alongside it."""
    if spec.step <= 0:
        raise PreconditionError("step must be positive", step=spec.step)
    kind = ReconstructionKind(spec.kind)
    spec.kind = kind
    if kind is ReconstructionKind.ADMISSIBLE and spec.ambient not in (EUCLIDEAN3, LORENTZ3):
        raise PreconditionError("admissible reconstruction needs R^3 or L^3", ambient=str(spec.ambient))
    frame = np.asarray(spec.initial_frame, dtype=float)
    eps, eta = validate_frame(kind, frame, spec.ambient)
    t0, t1 = (float(x) for x in spec.param_range)
    steps = int(round((t1 - t0) / spec.step))
    if steps <= 0:
        raise PreconditionError("empty parameter range", param_range=[t0, t1])
    if kind is ReconstructionKind.ADMISSIBLE:
        kappa = _profile(spec.kappa)
        for t in np.linspace(t0, t1, 16):
            if kappa(float(t)) <= 0:
                raise PreconditionError("curvature must be positive", t=float(t))
    y0 = np.concatenate([np.asarray(spec.initial_point, dtype=float), frame.ravel()])
    ts, ys = rk4(_rhs(spec, eps, eta), y0, t0, spec.step, steps)
    frames = ys[:, 3:].reshape(-1, 3, 3)
    products = np.array([_frame_products(f, spec.ambient) for f in frames])
    drift = float(np.max(np.abs(products - products[0])))
    logger.info(
        "Reconstructed curve", kind=kind.value, steps=steps, drift=drift
    )
    return ReconstructionResult(ts, ys[:, :3], frames, drift, products, eps, eta)


def result_rows(spec: ReconstructionSpec, result: ReconstructionResult) -> List[Dict[str, float]]:
    """Sample records of a run: point, frame and the prescribed invariants."""
    kappa, tau, c = _profile(spec.kappa), _profile(spec.tau), _profile(spec.ctorsion)
    admissible = ReconstructionKind(spec.kind) is ReconstructionKind.ADMISSIBLE
    rows = []
    for t, point, frame in zip(result.params, result.points, result.frames):
        t = float(t)
        if admissible:
            rows.append(sample_row(t, point, frame, kappa(t), tau(t)))
        else:
            rows.append(sample_row(t, point, frame, c(t)))
    return rows


def align_to_frame(
    points: np.ndarray,
    from_point: np.ndarray,
    from_frame: np.ndarray,
    to_point: np.ndarray,
    to_frame: np.ndarray,
) -> np.ndarray:
    """Apply the affine map sending (from_point, from_frame) to (to_point, to_frame)."""
    M = np.linalg.solve(np.asarray(from_frame, dtype=float), np.asarray(to_frame, dtype=float))
    # rows are frame vectors: x -> x @ M maps from_frame rows onto to_frame rows
    return (np.asarray(points) - from_point) @ M + to_point


def pointwise_deviation(a: Sequence, b: Sequence) -> float:
    return float(np.max(np.linalg.norm(np.asarray(a) - np.asarray(b), axis=-1)))


def canonical_frame(kind: ReconstructionKind) -> np.ndarray:
    """Standard initial frame of each kind."""
    kind = ReconstructionKind(kind)
    if kind is ReconstructionKind.ADMISSIBLE:
        return np.eye(3)
    return STANDARD_FRAMES[kind].copy()
