"""B-scrolls: ruled surfaces over lightlike curves along their Cartan binormal."""

from dataclasses import dataclass, field
from typing import Any, List

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.jets import Jet2, is_jet
from ..core.lorentz import inner
from ..curves.base import CurveModel
from ..curves.frames import CurveKind, cartan_jets, classify_curve
from .base import SurfaceModel
from .forms import Diagonalizable, curvatures

logger = structlog.get_logger()


class BScroll(SurfaceModel):
    """x(phi, t) = alpha(phi) + t B(phi) for an arc-photon lightlike curve alpha."""

    def __init__(self, alpha: CurveModel, t_range: tuple = (-1.0, 1.0)) -> None:
        super().__init__(f"bscroll({alpha.name})", alpha.ambient, (alpha.domain, tuple(t_range)))
        self.alpha = alpha

    @property
    def exact(self) -> bool:
        return self.alpha.exact

    def _binormal_series(self, phi: float, order: int) -> tuple:
        _, _, B = cartan_jets(self.alpha, phi)
        A = self.alpha.jet(phi, order)
        return np.real(A.coeffs[: order + 1]), np.real(B.coeffs[: order + 1])

    def position(self, u: Any, v: Any) -> Any:
        if is_jet(u):
            alpha_series, b_series = self._binormal_series(float(u.value), u.order)
            return u.compose(alpha_series) + u.compose(b_series) * v
        U, V = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        flat = []
        for phi, t in zip(U.ravel(), V.ravel()):
            _, _, B = cartan_jets(self.alpha, float(phi))
            flat.append(np.real(self.alpha.position(float(phi))) + float(t) * np.real(B.value))
        return np.array(flat).reshape(U.shape + (3,))

    def jet(self, u: float, v: float, order: int = 2) -> Jet2:
        if order > 3:
            raise PreconditionError("B-scroll jets are available up to order 3", order=order)
        return super().jet(u, v, order)

    def frame_data(self, phi: float) -> tuple:
        """(pseudo-torsion, its derivative, det(T, N, B)) at phi, frame as constructed."""
        T, N, B = cartan_jets(self.alpha, phi)
        c_jet = -inner(N.differentiate(), B.truncate(2), self.ambient)
        det = float(np.linalg.det(np.real(np.vstack([T.value, N.value, B.value]))))
        return float(np.real(c_jet.value)), float(np.real(c_jet.derivative(1))), det


@dataclass
class BScrollSample:
    phi: float
    t: float
    K: float
    H: float
    K_expected: float
    H_expected: float
    diagonalizable: Diagonalizable
    expected_defective: bool


@dataclass
class BScrollVerification:
    samples: List[BScrollSample] = field(repr=False)
    K_residual: float
    H_residual: float
    diagonalization_mismatches: int

    def to_dict(self) -> dict:
        return {
            "K_residual": self.K_residual,
            "H_residual": self.H_residual,
            "diagonalization_mismatches": self.diagonalization_mismatches,
            "samples": len(self.samples),
        }


def b_scroll(alpha: CurveModel, t_range: tuple = (-1.0, 1.0), samples: int = 5) -> BScroll:
    """Build the B-scroll of a lightlike curve in arc-photon parametrization."""
    a, b = alpha.domain
    interval = (a, b) if np.isfinite(a) and np.isfinite(b) else (-1.0, 1.0)
    info = classify_curve(alpha, samples, interval)
    if info.kind is not CurveKind.LIGHTLIKE:
        raise PreconditionError("B-scroll needs a lightlike curve", curve=alpha.name)
    scroll = BScroll(alpha, t_range)
    logger.info("Built B-scroll", curve=alpha.name, t_range=list(t_range))
    return scroll


def verify_b_scroll(scroll: BScroll, phis: Any, ts: Any, tol: float = 1e-8) -> BScrollVerification:
    """Compare numeric curvatures with K = c^2 D^2 and H = c D, D = det(T, N, B).

    The shape operator is expected to be defective wherever 1 + t c'(phi) != 0.
    """
    out: List[BScrollSample] = []
    mismatches = 0
    for phi in np.asarray(phis, dtype=float):
        c, dc, D = scroll.frame_data(float(phi))
        for t in np.asarray(ts, dtype=float):
            report = curvatures(scroll, float(phi), float(t))
            defective = abs(1.0 + t * dc) > tol
            sample = BScrollSample(
                float(phi),
                float(t),
                report.K,
                report.H,
                c * c * D * D,
                c * D,
                report.diagonalizable,
                defective,
            )
            if defective != (report.diagonalizable is Diagonalizable.NO):
                mismatches += 1
            out.append(sample)
    k_res = max(abs(s.K - s.K_expected) for s in out)
    h_res = max(abs(s.H - s.H_expected) for s in out)
    logger.info(
        "Verified B-scroll",
        surface=scroll.name,
        K_residual=k_res,
        H_residual=h_res,
        mismatches=mismatches,
    )
    return BScrollVerification(out, float(k_res), float(h_res), mismatches)
