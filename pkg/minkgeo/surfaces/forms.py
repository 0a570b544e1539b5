"""Fundamental forms, Gauss map, mean and Gaussian curvature, Weingarten diagnosis."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog

from ..core.errors import DegeneratePoint, PreconditionError
from ..core.lorentz import DEFAULT_TOL, cross3, inner
from .base import SurfaceModel, parameter_grid

logger = structlog.get_logger()

# discriminants below this (relative) size count as a repeated principal curvature
DISCRIMINANT_TOL = 1e-10

# ||S - mu I|| bands for a repeated eigenvalue mu: below -> scalar, above -> defective
SCALAR_BAND = 1e-8
DEFECTIVE_BAND = 1e-5


class SurfaceCausal(str, Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NEGATIVE_DEFINITE = "negative-definite"
    DEGENERATE = "degenerate"


class Diagonalizable(str, Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass
class FundamentalForms:
    E: float
    F: float
    G: float
    e: float
    f: float
    g: float
    eps: Optional[int]
    normal: Optional[np.ndarray]
    causal: SurfaceCausal
    degenerate: bool = False
    xu: np.ndarray = field(default=None, repr=False)
    xv: np.ndarray = field(default=None, repr=False)

    @property
    def first(self) -> np.ndarray:
        return np.array([[self.E, self.F], [self.F, self.G]])

    @property
    def second(self) -> np.ndarray:
        return np.array([[self.e, self.f], [self.f, self.g]])

    @property
    def det_first(self) -> float:
        return self.E * self.G - self.F**2


@dataclass
class CurvatureReport:
    H: float
    K: float
    discriminant: float
    diagonalizable: Diagonalizable
    principal: Optional[Tuple[float, float]]
    directions: Optional[np.ndarray]
    umbilic: bool
    lightlike_eigenvector: bool
    shape_operator: np.ndarray = field(repr=False)
    eps: int = 1
    asymmetry: float = 0.0

    def to_dict(self) -> Dict[str, object]:
        return {
            "H": self.H,
            "K": self.K,
            "discriminant": self.discriminant,
            "diagonalizable": self.diagonalizable.value,
            "principal": None if self.principal is None else list(self.principal),
            "umbilic": self.umbilic,
            "lightlike_eigenvector": self.lightlike_eigenvector,
            "eps": self.eps,
        }


def fundamental_forms(
    m: SurfaceModel, u: float, v: float, tol: float = DEFAULT_TOL
) -> FundamentalForms:
    """First and second fundamental forms and the unit normal at (u, v).

    A lightlike tangent plane is reported with ``degenerate=True`` and no normal.
    """
    sig = m.ambient
    J = m.jet(u, v, 2)
    xu, xv = np.real(J.partial(1, 0)), np.real(J.partial(0, 1))
    xuu, xuv, xvv = (np.real(J.partial(i, j)) for i, j in ((2, 0), (1, 1), (0, 2)))
    euclid = np.cross(xu, xv)
    scale = float(xu @ xu) * float(xv @ xv)
    if float(euclid @ euclid) <= 1e-24 * max(scale, 1e-300):
        raise PreconditionError("non-regular surface point", surface=m.name, u=u, v=v)
    if not m.exact:
        tol *= 1e3
    E, F, G = (float(inner(a, b, sig)) for a, b in ((xu, xu), (xu, xv), (xv, xv)))
    det = E * G - F * F
    if abs(det) <= tol * scale:
        return FundamentalForms(
            E, F, G, np.nan, np.nan, np.nan, None, None, SurfaceCausal.DEGENERATE, True, xu, xv
        )
    if det < 0:
        causal = SurfaceCausal.TIMELIKE
    else:
        causal = SurfaceCausal.SPACELIKE if E > 0 else SurfaceCausal.NEGATIVE_DEFINITE
    override = m.gauss_map(u, v)
    n = override if override is not None else cross3(xu, xv, sig)
    q = float(inner(n, n, sig))
    N = n / np.sqrt(abs(q))
    eps = 1 if q > 0 else -1
    e, f, g = (float(inner(w, N, sig)) for w in (xuu, xuv, xvv))
    return FundamentalForms(E, F, G, e, f, g, eps, N, causal, False, xu, xv)


def _repeated_root_status(S: np.ndarray, mu: float) -> Diagonalizable:
    gap = float(np.linalg.norm(S - mu * np.eye(2)))
    scale = 1.0 + abs(mu)
    if gap <= SCALAR_BAND * scale:
        return Diagonalizable.YES
    if gap >= DEFECTIVE_BAND * scale:
        return Diagonalizable.NO
    return Diagonalizable.INCONCLUSIVE


def weingarten_asymmetry(forms: FundamentalForms, S: np.ndarray) -> float:
    """|<S x_u, x_v> - <x_u, S x_v>| in coordinates; zero for a self-adjoint S."""
    IS = forms.first @ S
    return float(abs(IS[1, 0] - IS[0, 1]))


def curvatures(
    m: SurfaceModel, u: float, v: float, tol: float = DEFAULT_TOL
) -> CurvatureReport:
    """Mean and Gaussian curvature with the diagonalization diagnosis of the shape operator."""
    forms = fundamental_forms(m, u, v, tol)
    if forms.degenerate:
        raise DegeneratePoint("curvature undefined at a lightlike surface point", u=u, v=v)
    eps = int(forms.eps or 1)
    first, second = forms.first, forms.second
    det_i = forms.det_first
    S = np.linalg.solve(first, second)
    K = eps * (forms.e * forms.g - forms.f**2) / det_i
    H = 0.5 * eps * (forms.E * forms.g + forms.e * forms.G - 2 * forms.F * forms.f) / det_i
    disc = H * H - eps * K
    repeated = abs(disc) <= DISCRIMINANT_TOL * (1.0 + H * H + abs(K))
    riemannian = det_i > 0
    principal: Optional[Tuple[float, float]] = None
    directions: Optional[np.ndarray] = None
    lightlike = False
    if repeated:
        mu = eps * H
        status = Diagonalizable.YES if riemannian else _repeated_root_status(S, mu)
        if status is Diagonalizable.YES:
            principal = (mu, mu)
        else:
            # the single eigendirection of a defective shape operator
            _, vecs = np.linalg.eig(S)
            vec = np.real(vecs[:, 0])
            lightlike = abs(float(vec @ first @ vec)) <= 1e-6 * float(vec @ vec) * (1 + np.abs(first).max())
            directions = np.array([vec[0] * forms.xu + vec[1] * forms.xv])
    elif disc > 0:
        status = Diagonalizable.YES
        root = np.sqrt(disc)
        principal = (eps * H + root, eps * H - root)
    else:
        status = Diagonalizable.NO
    if principal is not None:
        vecs = _eigendirections(S, principal)
        directions = np.array([a * forms.xu + b * forms.xv for a, b in vecs])
        lightlike = any(
            abs(float(inner(d, d, m.ambient))) <= 1e-6 * float(d @ d) for d in directions
        )
    umbilic = status is Diagonalizable.YES and repeated
    report = CurvatureReport(
        float(H),
        float(K),
        float(disc),
        status,
        principal,
        directions,
        umbilic,
        lightlike,
        S,
        eps,
        weingarten_asymmetry(forms, S),
    )
    logger.debug("Computed curvatures", surface=m.name, u=u, v=v, H=report.H, K=report.K)
    return report


def _eigendirections(S: np.ndarray, principal: Tuple[float, float]) -> List[np.ndarray]:
    if principal[0] == principal[1]:
        return [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    out = []
    for k in principal:
        A = S - k * np.eye(2)
        # a null vector of the 2x2 singular matrix A
        row = A[0] if np.linalg.norm(A[0]) >= np.linalg.norm(A[1]) else A[1]
        vec = np.array([-row[1], row[0]]) if np.linalg.norm(row) > 0 else np.array([1.0, 0.0])
        out.append(vec / np.linalg.norm(vec))
    return out


CSV_COLUMNS = ("u", "v", "E", "F", "G", "e", "f", "g", "H", "K", "diag_flag")


def curvature_row(m: SurfaceModel, u: float, v: float) -> Dict[str, object]:
    """One curvature-field record; degenerate points carry NaN curvatures."""
    forms = fundamental_forms(m, u, v)
    row: Dict[str, object] = {
        "u": u,
        "v": v,
        "E": forms.E,
        "F": forms.F,
        "G": forms.G,
        "e": forms.e,
        "f": forms.f,
        "g": forms.g,
    }
    if forms.degenerate:
        row.update(H=float("nan"), K=float("nan"), diag_flag="degenerate")
        return row
    report = curvatures(m, u, v)
    row.update(H=report.H, K=report.K, diag_flag=report.diagonalizable.value)
    return row


def curvature_field(
    m: SurfaceModel, nu: int = 32, nv: int = 32, guard_band: float = 1e-6
) -> List[Dict[str, object]]:
    """Curvature records over the grid, ordered by u then v."""
    us, vs = parameter_grid(m.domain, nu, nv, guard_band)
    return [curvature_row(m, float(u), float(v)) for u in us for v in vs]


def curvature_summary(rows: List[Dict[str, object]]) -> Dict[str, float]:
    """Extremes of H and K over the non-degenerate records."""
    H = np.array([r["H"] for r in rows], dtype=float)
    K = np.array([r["K"] for r in rows], dtype=float)
    ok = np.isfinite(H) & np.isfinite(K)
    if not ok.any():
        return {"samples": len(rows), "degenerate": len(rows)}
    return {
        "samples": len(rows),
        "degenerate": int((~ok).sum()),
        "H_min": float(H[ok].min()),
        "H_max": float(H[ok].max()),
        "maxH": float(np.abs(H[ok]).max()),
        "K_min": float(K[ok].min()),
        "K_max": float(K[ok].max()),
    }
