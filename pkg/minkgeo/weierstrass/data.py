"""Weierstrass data for critical surfaces in R^3 and L^3."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import PreconditionError
from ..core.jets import Jet, is_jet
from ..core.lorentz import EUCLIDEAN3, LORENTZ3, Signature
from ..splitcomplex.numbers import SplitComplex

Interval = Tuple[float, float]
Rectangle = Tuple[Interval, Interval]


class WeierstrassKind(str, Enum):
    TYPE_I = "type-I"
    TYPE_II = "type-II"


class WeierstrassAmbient(str, Enum):
    R3 = "R3"
    L3_SPACELIKE = "L3-spacelike"
    L3_TIMELIKE = "L3-timelike"

    @property
    def signature(self) -> Signature:
        return EUCLIDEAN3 if self is WeierstrassAmbient.R3 else LORENTZ3

    @property
    def split(self) -> bool:
        """Timelike surfaces take split-complex data."""
        return self is WeierstrassAmbient.L3_TIMELIKE

    @property
    def nu(self) -> int:
        return self.signature.nu


@dataclass(frozen=True)
class Pole:
    point: Tuple[float, float]
    order: int = 1


@dataclass
class WeierstrassData:
    """Type I data (f, g) or type II data F, with declared poles.

    ``chart`` optionally reparametrizes the data plane, z = chart(zeta), so a
    surface can be generated on a rectangle of zeta; it must be holomorphic
    and jet-aware. Poles are given in the data plane.
    """

    kind: WeierstrassKind
    ambient: WeierstrassAmbient
    f: Optional[Callable[[Any], Any]] = None
    g: Optional[Callable[[Any], Any]] = None
    F: Optional[Callable[[Any], Any]] = None
    basepoint: Tuple[float, float] = (0.0, 0.0)
    domain: Rectangle = ((-1.0, 1.0), (-1.0, 1.0))
    poles: List[Pole] = field(default_factory=list)
    chart: Optional[Callable[[Any], Any]] = None
    offset: Sequence[float] = (0.0, 0.0, 0.0)
    name: str = "custom"

    def __post_init__(self) -> None:
        if self.kind is WeierstrassKind.TYPE_I and (self.f is None or self.g is None):
            raise PreconditionError("type I data needs f and g", name=self.name)
        if self.kind is WeierstrassKind.TYPE_II and self.F is None:
            raise PreconditionError("type II data needs F", name=self.name)
        if self.chart is not None and self.ambient.split:
            raise PreconditionError("charts are supported for complex data only", name=self.name)
        (u0, u1), (v0, v1) = self.domain
        x, y = self.basepoint
        if not (u0 < x < u1 and v0 < y < v1):
            raise PreconditionError("basepoint outside the domain", basepoint=list(self.basepoint))
        self.offset = tuple(float(c) for c in self.offset)

    # ---------- evaluation ----------
    def point(self, u: Any, v: Any) -> Any:
        """Parameter value u + i v, or u + h v for timelike data."""
        if self.ambient.split:
            return SplitComplex(u, v)
        return u + 1j * v

    def weierstrass_pair(self, z: Any) -> Tuple[Any, Any]:
        """(f, g) at a data-plane point; type II data has g(z) = z."""
        if self.kind is WeierstrassKind.TYPE_II:
            f, g = self.F(z), z
        else:
            f, g = self.f(z), self.g(z)
        if self.ambient.split:
            return SplitComplex.coerce(f), SplitComplex.coerce(g)
        return f, g

    def integrands(self, z: Any) -> List[Any]:
        """Components whose integrals have real parts x^1, x^2, x^3."""
        f, g = self.weierstrass_pair(z)
        g2 = g * g
        if self.ambient is WeierstrassAmbient.R3:
            return [f * (1 - g2), 1j * f * (1 + g2), 2 * f * g]
        if self.ambient is WeierstrassAmbient.L3_SPACELIKE:
            return [f * (1 + g2), 1j * f * (1 - g2), -2 * f * g]
        # the timelike representation carries the f g term second
        return [f * (1 - g2), 2 * f * g, f * (1 + g2)]

    def to_data_plane(self, zeta: Any) -> Tuple[Any, Any]:
        """(z, dz/dzeta) for a parameter value, array or univariate jet."""
        if self.chart is None:
            return zeta, 1.0
        if is_jet(zeta):
            lifted = Jet(np.concatenate([zeta.coeffs, np.zeros((1,) + zeta.shape)]))
            lifted.coeffs[1] = 1.0
            c = self.chart(lifted)
            return c.truncate(zeta.order), c.differentiate()
        zeta = np.asarray(zeta, dtype=complex)
        c = self.chart(Jet(np.stack([zeta, np.ones_like(zeta)])))
        return c.coeffs[0], c.coeffs[1]

    def pulled_integrands(self, zeta: Any) -> List[Any]:
        """Integrands with respect to the chart parameter."""
        z, dz = self.to_data_plane(zeta)
        if self.chart is None:
            return self.integrands(z)
        return [omega * dz for omega in self.integrands(z)]

    def describe(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "ambient": self.ambient.value,
            "basepoint": list(self.basepoint),
            "domain": [list(self.domain[0]), list(self.domain[1])],
            "poles": [{"point": list(p.point), "order": p.order} for p in self.poles],
            "charted": self.chart is not None,
        }
