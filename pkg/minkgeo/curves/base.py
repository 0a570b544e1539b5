"""Curve models: closed forms with exact jets and black-box curves."""

import math
from abc import ABC, abstractmethod
from typing import Any, Callable, Optional, Tuple

import numpy as np
import structlog

from ..core.jets import Jet
from ..core.lorentz import LORENTZ3, Signature

logger = structlog.get_logger()

Interval = Tuple[float, float]

# central-difference steps per derivative order
FD_STEPS = {1: 1e-4, 2: 1e-4, 3: 1e-3, 4: 1e-2, 5: 2e-2}

# tolerance multiplier for curves without exact jets
FD_TOLERANCE_FACTOR = 100.0


class CurveModel(ABC):
    """A smooth parametrized curve in a three-dimensional pseudo-Euclidean space."""

    def __init__(
        self,
        name: str,
        ambient: Signature = LORENTZ3,
        domain: Interval = (-math.inf, math.inf),
    ) -> None:
        self.name = name
        self.ambient = ambient
        self.domain = domain

    @property
    def exact(self) -> bool:
        """Whether :meth:`jet` is exact rather than a finite-difference estimate."""
        return True

    @abstractmethod
    def position(self, t: Any) -> Any:
        """Point of the curve; ``t`` may be a float, an array or a jet."""

    def jet(self, t: float, order: int = 3) -> Jet:
        """Vector jet of the curve at ``t``."""
        self._check_domain(t)
        return self.position(Jet.variable(float(t), order))

    def derivatives(self, t: float, order: int = 3) -> np.ndarray:
        """Rows are the curve value and its first ``order`` derivatives."""
        return self.jet(t, order).derivatives()

    def sample(self, ts: Any) -> np.ndarray:
        return np.asarray(self.position(np.asarray(ts, dtype=float)), dtype=float)

    def _check_domain(self, t: float) -> None:
        a, b = self.domain
        if not a <= t <= b:
            from ..core.errors import PreconditionError

            raise PreconditionError("parameter outside curve domain", t=t, domain=[a, b])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, ambient={self.ambient})"


class ClosedFormCurve(CurveModel):
    """Curve given by an expression built from :mod:`minkgeo.core.jets` functions."""

    def __init__(
        self,
        name: str,
        fn: Callable[[Any], Any],
        ambient: Signature = LORENTZ3,
        domain: Interval = (-math.inf, math.inf),
        params: Optional[dict] = None,
    ) -> None:
        super().__init__(name, ambient, domain)
        self._fn = fn
        self.params = dict(params or {})

    def position(self, t: Any) -> Any:
        return self._fn(t)


class SampledFunctionCurve(CurveModel):
    """Black-box curve: derivatives come from central differences."""

    def __init__(
        self,
        name: str,
        fn: Callable[[float], Any],
        ambient: Signature = LORENTZ3,
        domain: Interval = (-math.inf, math.inf),
    ) -> None:
        super().__init__(name, ambient, domain)
        self._fn = fn

    @property
    def exact(self) -> bool:
        return False

    def position(self, t: Any) -> Any:
        if isinstance(t, Jet):
            return self.jet(float(t.value), t.order)
        t = np.asarray(t, dtype=float)
        if t.ndim == 0:
            return np.asarray(self._fn(float(t)), dtype=float)
        return np.stack([np.asarray(self._fn(float(x)), dtype=float) for x in t])

    def jet(self, t: float, order: int = 3) -> Jet:
        self._check_domain(t)
        return Jet(np.stack(_central_differences(self._fn, t, order)) / _factorials(order))


class Reflected(CurveModel):
    """The curve t -> base(-t)."""

    def __init__(self, base: CurveModel) -> None:
        a, b = base.domain
        super().__init__(f"{base.name}~reflected", base.ambient, (-b, a))
        self.base = base

    @property
    def exact(self) -> bool:
        return self.base.exact

    def position(self, t: Any) -> Any:
        return self.base.position(-t)

    def jet(self, t: float, order: int = 3) -> Jet:
        inner = self.base.jet(-t, order)
        signs = (-1.0) ** np.arange(order + 1)
        return Jet(inner.coeffs * signs[:, None])


def _factorials(order: int) -> np.ndarray:
    return np.array([math.factorial(k) for k in range(order + 1)], dtype=float)[:, None]


def _central_differences(fn: Callable[[float], Any], t: float, order: int) -> list:
    value = np.asarray(fn(t), dtype=float)
    out = [value]
    for k in range(1, order + 1):
        h = FD_STEPS.get(k, 2e-2)
        # k-th central difference: sum_j (-1)^j C(k, j) f(t + (k/2 - j) h) / h^k
        acc = np.zeros_like(value)
        for j in range(k + 1):
            acc = acc + (-1) ** j * math.comb(k, j) * np.asarray(
                fn(t + (k / 2.0 - j) * h), dtype=float
            )
        out.append(acc / h**k)
    return out
