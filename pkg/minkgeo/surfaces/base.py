"""Surface models: closed forms with exact jets and black-box parametrizations."""

import math
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.jets import Jet2
from ..core.lorentz import LORENTZ3, Signature

logger = structlog.get_logger()

Interval = Tuple[float, float]
Rectangle = Tuple[Interval, Interval]

UNBOUNDED: Rectangle = ((-math.inf, math.inf), (-math.inf, math.inf))

# central-difference step for black-box surfaces
FD_STEP = 1e-4


class SurfaceModel(ABC):
    """A parametrized surface x(u, v) in a three-dimensional pseudo-Euclidean space."""

    def __init__(
        self,
        name: str,
        ambient: Signature = LORENTZ3,
        domain: Rectangle = UNBOUNDED,
    ) -> None:
        if ambient.n != 3:
            raise PreconditionError("surfaces live in three-dimensional spaces", ambient=str(ambient))
        self.name = name
        self.ambient = ambient
        self.domain = domain
        self.params: Dict[str, Any] = {}

    @property
    def exact(self) -> bool:
        """Whether :meth:`jet` is exact rather than a finite-difference estimate."""
        return True

    @abstractmethod
    def position(self, u: Any, v: Any) -> Any:
        """Point of the surface; ``u`` and ``v`` may be floats, arrays or jets."""

    def jet(self, u: float, v: float, order: int = 2) -> Jet2:
        """Vector jet of the parametrization at (u, v)."""
        self.check_domain(u, v)
        U, V = Jet2.variables(float(u), float(v), order)
        return self.position(U, V)

    def gauss_map(self, u: float, v: float) -> Optional[np.ndarray]:
        """Preferred unit normal, or None to use the normalized cross product."""
        return None

    def sample(self, us: Any, vs: Any) -> np.ndarray:
        """Points on the tensor grid ``us x vs``; shape (len(us), len(vs), 3)."""
        U, V = np.meshgrid(np.asarray(us, dtype=float), np.asarray(vs, dtype=float), indexing="ij")
        return np.asarray(self.position(U, V), dtype=float)

    def check_domain(self, u: float, v: float) -> None:
        (u0, u1), (v0, v1) = self.domain
        if not (u0 <= u <= u1 and v0 <= v <= v1):
            raise PreconditionError(
                "parameter outside surface domain", u=u, v=v, domain=[[u0, u1], [v0, v1]]
            )

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, ambient={self.ambient})"


class ClosedFormSurface(SurfaceModel):
    """Surface given by an expression built from :mod:`minkgeo.core.jets` functions."""

    def __init__(
        self,
        name: str,
        fn: Callable[[Any, Any], Any],
        ambient: Signature = LORENTZ3,
        domain: Rectangle = UNBOUNDED,
        params: Optional[dict] = None,
        normal: Optional[Callable[[float, float], Any]] = None,
    ) -> None:
        super().__init__(name, ambient, domain)
        self._fn = fn
        self._normal = normal
        self.params = dict(params or {})

    def position(self, u: Any, v: Any) -> Any:
        return self._fn(u, v)

    def gauss_map(self, u: float, v: float) -> Optional[np.ndarray]:
        if self._normal is None:
            return None
        return np.asarray(self._normal(u, v), dtype=float)


class SampledFunctionSurface(SurfaceModel):
    """Black-box surface; second-order jets come from central differences."""

    def __init__(
        self,
        name: str,
        fn: Callable[[float, float], Any],
        ambient: Signature = LORENTZ3,
        domain: Rectangle = UNBOUNDED,
        step: float = FD_STEP,
    ) -> None:
        super().__init__(name, ambient, domain)
        self._fn = fn
        self.step = step

    @property
    def exact(self) -> bool:
        return False

    def position(self, u: Any, v: Any) -> Any:
        U, V = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        if U.ndim == 0:
            return np.asarray(self._fn(float(U), float(V)), dtype=float)
        flat = [np.asarray(self._fn(float(a), float(b)), dtype=float) for a, b in zip(U.ravel(), V.ravel())]
        return np.array(flat).reshape(U.shape + (3,))

    def jet(self, u: float, v: float, order: int = 2) -> Jet2:
        if order > 2:
            raise PreconditionError("black-box surfaces provide jets up to order 2", order=order)
        self.check_domain(u, v)
        f, h = self._fn, self.step

        def at(du: float, dv: float) -> np.ndarray:
            return np.asarray(f(u + du, v + dv), dtype=float)

        x = at(0, 0)
        c = np.zeros((order + 1, order + 1, 3))
        c[0, 0] = x
        if order >= 1:
            c[1, 0] = (at(h, 0) - at(-h, 0)) / (2 * h)
            c[0, 1] = (at(0, h) - at(0, -h)) / (2 * h)
        if order == 2:
            c[2, 0] = (at(h, 0) - 2 * x + at(-h, 0)) / h**2 / 2
            c[0, 2] = (at(0, h) - 2 * x + at(0, -h)) / h**2 / 2
            c[1, 1] = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h)
        return Jet2(c)


def parameter_grid(
    domain: Rectangle, nu: int, nv: int, guard_band: float = 1e-6
) -> Tuple[np.ndarray, np.ndarray]:
    """Evenly spaced parameters inside ``domain``, kept ``guard_band`` away from its edges."""
    if nu < 2 or nv < 2:
        raise PreconditionError("grid needs at least two samples per direction", nu=nu, nv=nv)
    axes = []
    for (a, b), n in zip(domain, (nu, nv)):
        if not (np.isfinite(a) and np.isfinite(b)):
            raise PreconditionError("sampling needs a bounded domain", domain=[a, b])
        inset = guard_band * (b - a)
        axes.append(np.linspace(a + inset, b - inset, n))
    return axes[0], axes[1]
