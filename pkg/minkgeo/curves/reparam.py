"""Unit-speed and arc-photon reparametrization."""

from enum import Enum
from typing import Any, Optional

import numpy as np
import structlog
from scipy.optimize import brentq

from ..core.errors import NumericalFailure, PreconditionError
from ..core.integrate import integral
from ..core.jets import Jet
from ..core.lorentz import inner
from .base import CurveModel

logger = structlog.get_logger()


class ReparamMode(str, Enum):
    UNIT_SPEED = "unit_speed"
    ARC_PHOTON = "arc_photon"


def _speed_jet(curve: CurveModel, derivative: Jet, mode: ReparamMode) -> Any:
    q = inner(derivative, derivative, curve.ambient)
    q = q * float(np.sign(q.value)) if isinstance(q, Jet) else abs(q)
    return q ** (0.5 if mode is ReparamMode.UNIT_SPEED else 0.25)


class ReparametrizedCurve(CurveModel):
    """``base`` composed with the inverse of phi(t) = int_{t0}^t w.

    ``w`` is sqrt|<a', a'>| for unit speed and |<a'', a''>|^(1/4) for arc-photon.
    The new parameter is 0 at ``t0``.
    """

    def __init__(
        self,
        base: CurveModel,
        mode: ReparamMode,
        t0: float = 0.0,
        tol: float = 1e-11,
        scan_limit: float = 1e3,
    ) -> None:
        super().__init__(f"{base.name}~{mode.value}", base.ambient)
        self.base = base
        self.mode = mode
        self.t0 = float(t0)
        self.tol = tol
        self.scan_limit = scan_limit
        self._check(self.t0)

    @property
    def exact(self) -> bool:
        return self.base.exact

    def _k(self) -> int:
        return 1 if self.mode is ReparamMode.UNIT_SPEED else 2

    def weight(self, t: float) -> float:
        """The integrand w at the old parameter ``t``."""
        d = self.base.derivatives(t, self._k())[self._k()]
        q = float(inner(d, d, self.ambient))
        return abs(q) ** (0.5 if self.mode is ReparamMode.UNIT_SPEED else 0.25)

    def _check(self, t: float) -> None:
        d = self.base.derivatives(t, 2)
        q1 = float(inner(d[1], d[1], self.ambient))
        scale = float(d[1] @ d[1])
        lightlike = abs(q1) <= 1e-9 * max(scale, 1e-300)
        if self.mode is ReparamMode.UNIT_SPEED and lightlike:
            raise PreconditionError("unit-speed reparametrization of a lightlike point", t=t)
        if self.mode is ReparamMode.ARC_PHOTON:
            if not lightlike:
                raise PreconditionError("arc-photon reparametrization needs a lightlike curve", t=t)
            if abs(float(inner(d[2], d[2], self.ambient))) <= 1e-12:
                raise PreconditionError("second derivative has zero pseudo-norm", t=t)

    def arc(self, t: float) -> float:
        """New parameter value of the old parameter ``t``."""
        if t == self.t0:
            return 0.0
        return integral(self.weight, self.t0, t, self.tol)

    def inverse(self, s: float) -> float:
        """Old parameter reached at new parameter ``s`` (monotone inversion)."""
        if s == 0.0:
            return self.t0
        direction = 1.0 if s > 0 else -1.0
        lo, hi = self.base.domain
        width = 1.0
        prev = self.t0
        while True:
            cand = self.t0 + direction * width
            cand = min(max(cand, lo), hi)
            value = self.arc(cand) - s
            if value * direction >= 0:
                break
            if cand in (lo, hi) or width > self.scan_limit:
                raise NumericalFailure(
                    "arclength does not reach the requested parameter", s=s
                )
            prev = cand
            width *= 2.0
        a, b = sorted((prev, cand))
        return brentq(lambda t: self.arc(t) - s, a, b, xtol=1e-14, rtol=4 * np.finfo(float).eps)

    def position(self, t: Any) -> Any:
        if isinstance(t, Jet):
            return self.jet(float(t.value), t.order)
        t = np.asarray(t, dtype=float)
        if t.ndim == 0:
            return self.base.position(self.inverse(float(t)))
        return np.stack([self.base.position(self.inverse(float(x))) for x in t])

    def jet(self, s: float, order: int = 3) -> Jet:
        h0 = self.inverse(float(s))
        base = self.base.jet(h0, order + self._k())
        series = base.differentiate()
        if self._k() == 2:
            series = series.differentiate()
        var = Jet.variable(float(s), order)
        # Picard iteration for H' = 1 / w(alpha^(k) o H); each pass fixes one coefficient
        H = Jet.constant(h0, order)
        for _ in range(order + 1):
            d = H.compose(series.coeffs)
            H = var.antiderivative(1.0 / _speed_jet(self, d, self.mode), h0)
        return H.compose(base.coeffs[: order + 1])


def reparametrize(
    curve: CurveModel, mode: ReparamMode, t0: float = 0.0, tol: Optional[float] = None
) -> ReparametrizedCurve:
    """Reparametrize by arclength (unit speed) or by the arc-photon parameter."""
    out = ReparametrizedCurve(curve, ReparamMode(mode), t0=t0, tol=tol or 1e-11)
    logger.debug("Reparametrized curve", curve=curve.name, mode=out.mode.value, t0=t0)
    return out


def arc_photon_shift(first: CurveModel, second: CurveModel, grid: np.ndarray) -> tuple:
    """Least-squares slope and offset between two arc-photon parameter grids.

    Both curves must be arc-photon reparametrizations of the same lightlike
    curve; the grid is given in the old parameter.
    """
    if not (isinstance(first, ReparametrizedCurve) and isinstance(second, ReparametrizedCurve)):
        raise PreconditionError("arc-photon shift needs two reparametrized curves")
    a = np.array([first.arc(float(t)) for t in grid])
    b = np.array([second.arc(float(t)) for t in grid])
    slope, offset = np.polyfit(a, b, 1)
    return float(slope), float(offset)


__all__ = ["ReparamMode", "ReparametrizedCurve", "arc_photon_shift", "reparametrize"]
