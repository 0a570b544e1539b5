"""Split-complex numbers x + h y with h^2 = 1, and generalized systems C_{alpha,beta}.

Components of :class:`SplitComplex` may be floats, numpy arrays or jets, so the
same expression evaluates a value, a grid of values or a Taylor expansion.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Optional, Tuple, Union

import numpy as np

from ..core.errors import PreconditionError, ZeroDivisorError
from ..core.jets import cosh, exp, sinh, value_of

# scale-relative tolerance for the zero-divisor test
ZERO_DIVISOR_TOL = 1e-12


def _plain(x: Any) -> Any:
    return np.real(value_of(x))


class SplitComplex:
    """The split-complex number ``re + h * im``."""

    __slots__ = ("re", "im")
    __array_ufunc__ = None

    def __init__(self, re: Any = 0.0, im: Any = 0.0) -> None:
        self.re = re
        self.im = im

    @classmethod
    def coerce(cls, x: Any) -> "SplitComplex":
        if isinstance(x, SplitComplex):
            return x
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(x[0], x[1])
        return cls(x, 0.0 * x)

    @classmethod
    def from_null(cls, a: Any, b: Any) -> "SplitComplex":
        """The number a l + b lbar in null coordinates, l = (1 + h) / 2."""
        return cls((a + b) / 2.0, (a - b) / 2.0)

    # ---------- arithmetic ----------
    def __add__(self, other: Any) -> "SplitComplex":
        if isinstance(other, SplitComplex):
            return SplitComplex(self.re + other.re, self.im + other.im)
        return SplitComplex(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "SplitComplex":
        if isinstance(other, SplitComplex):
            return SplitComplex(self.re - other.re, self.im - other.im)
        return SplitComplex(self.re - other, self.im)

    def __rsub__(self, other: Any) -> "SplitComplex":
        return (-self) + other

    def __neg__(self) -> "SplitComplex":
        return SplitComplex(-self.re, -self.im)

    def __pos__(self) -> "SplitComplex":
        return self

    def __mul__(self, other: Any) -> "SplitComplex":
        if isinstance(other, SplitComplex):
            a, b, c, d = self.re, self.im, other.re, other.im
            return SplitComplex(a * c + b * d, a * d + b * c)
        return SplitComplex(self.re * other, self.im * other)

    def __rmul__(self, other: Any) -> "SplitComplex":
        return SplitComplex(other * self.re, other * self.im)

    def __truediv__(self, other: Any) -> "SplitComplex":
        if isinstance(other, SplitComplex):
            return self * other.inverse()
        return SplitComplex(self.re / other, self.im / other)

    def __rtruediv__(self, other: Any) -> "SplitComplex":
        return self.inverse() * other

    def __pow__(self, power: int) -> "SplitComplex":
        if not isinstance(power, (int, np.integer)):
            raise TypeError("split-complex powers must be integers")
        if power < 0:
            return self.inverse() ** (-power)
        result = SplitComplex(1.0 + 0.0 * self.re, 0.0 * self.im)
        for _ in range(int(power)):
            result = result * self
        return result

    def conj(self) -> "SplitComplex":
        return SplitComplex(self.re, -self.im)

    conjugate = conj

    def norm_sq(self) -> Any:
        """w * conj(w) = re^2 - im^2, possibly negative."""
        return self.re * self.re - self.im * self.im

    @property
    def modulus(self) -> Any:
        return np.sqrt(np.abs(_plain(self.norm_sq())))

    def is_zero_divisor(self, tol: float = ZERO_DIVISOR_TOL) -> Any:
        """Whether |re| = |im| != 0, up to ``tol * (|re| + |im|)``."""
        a, b = np.abs(_plain(self.re)), np.abs(_plain(self.im))
        return (np.abs(a - b) <= tol * (a + b)) & (a + b > 0)

    def is_invertible(self, tol: float = ZERO_DIVISOR_TOL) -> Any:
        """Neither zero nor a zero divisor."""
        a, b = np.abs(_plain(self.re)), np.abs(_plain(self.im))
        return np.abs(a - b) > tol * (a + b)

    def inverse(self, tol: float = ZERO_DIVISOR_TOL) -> "SplitComplex":
        if not np.all(self.is_invertible(tol)):
            raise ZeroDivisorError(
                "split-complex zero divisor has no inverse",
                re=np.asarray(_plain(self.re)).tolist(),
                im=np.asarray(_plain(self.im)).tolist(),
            )
        return self.conj() / self.norm_sq()

    def exp(self) -> "SplitComplex":
        """e^x (cosh y + h sinh y)."""
        e = exp(self.re)
        return SplitComplex(e * cosh(self.im), e * sinh(self.im))

    def null_components(self) -> Tuple[Any, Any]:
        """Coefficients (a, b) with self = a l + b lbar."""
        return self.re + self.im, self.re - self.im

    # ---------- comparison and display ----------
    def value(self) -> "SplitComplex":
        """Plain value of a jet-valued number."""
        return SplitComplex(value_of(self.re), value_of(self.im))

    def isclose(self, other: Any, tol: float = 1e-12) -> bool:
        o = SplitComplex.coerce(other)
        return bool(
            np.all(np.abs(np.asarray(_plain(self.re)) - np.asarray(_plain(o.re))) <= tol)
            and np.all(np.abs(np.asarray(_plain(self.im)) - np.asarray(_plain(o.im))) <= tol)
        )

    def magnitude(self) -> float:
        """Largest absolute component; a Euclidean size, unlike :attr:`modulus`."""
        return float(max(np.max(np.abs(_plain(self.re))), np.max(np.abs(_plain(self.im)))))

    def to_list(self) -> List[float]:
        return [float(_plain(self.re)), float(_plain(self.im))]

    def __repr__(self) -> str:
        return f"SplitComplex({_plain(self.re)!r}, {_plain(self.im)!r})"


H = SplitComplex(0.0, 1.0)
ELL = SplitComplex(0.5, 0.5)
ELL_BAR = SplitComplex(0.5, -0.5)


def lorentz_pairing(w1: SplitComplex, w2: SplitComplex) -> Any:
    """Re(w1 conj(w2)), the Lorentzian product of (re, im) pairs."""
    return (w1 * w2.conj()).re


def split_series(delta: SplitComplex, coefficients: List[SplitComplex]) -> SplitComplex:
    """sum_k c_k delta^k for a split-complex increment with jet components."""
    zero = 0.0 * delta.re
    out = SplitComplex(coefficients[0].re + zero, coefficients[0].im + zero)
    power: Optional[SplitComplex] = None
    for c in coefficients[1:]:
        power = delta if power is None else power * delta
        out = out + power * c
    return out


class NumberSystem(str, Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class GeneralizedComplex:
    """a + u b in C_{alpha,beta}, where u^2 = alpha + beta u."""

    a: float
    b: float
    alpha: float
    beta: float

    def _check(self, other: "GeneralizedComplex") -> None:
        if (self.alpha, self.beta) != (other.alpha, other.beta):
            raise PreconditionError("numbers belong to different systems")

    def __add__(self, other: "GeneralizedComplex") -> "GeneralizedComplex":
        self._check(other)
        return GeneralizedComplex(self.a + other.a, self.b + other.b, self.alpha, self.beta)

    def __mul__(self, other: Union["GeneralizedComplex", float]) -> "GeneralizedComplex":
        if not isinstance(other, GeneralizedComplex):
            return GeneralizedComplex(self.a * other, self.b * other, self.alpha, self.beta)
        self._check(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return GeneralizedComplex(
            a * c + self.alpha * b * d,
            a * d + b * c + self.beta * b * d,
            self.alpha,
            self.beta,
        )

    @property
    def norm(self) -> float:
        """D = a^2 + beta a b - alpha b^2."""
        return self.a**2 + self.beta * self.a * self.b - self.alpha * self.b**2

    @property
    def discriminant(self) -> float:
        return self.beta**2 + 4.0 * self.alpha

    def conj(self) -> "GeneralizedComplex":
        return GeneralizedComplex(self.a + self.beta * self.b, -self.b, self.alpha, self.beta)

    def _scale(self) -> float:
        return (self.a**2 + self.b**2) * (1.0 + abs(self.alpha) + abs(self.beta))

    def is_invertible(self, tol: float = ZERO_DIVISOR_TOL) -> bool:
        return abs(self.norm) > tol * self._scale()

    def inverse(self, tol: float = ZERO_DIVISOR_TOL) -> "GeneralizedComplex":
        if not self.is_invertible(tol):
            raise ZeroDivisorError(
                "element is not invertible", a=self.a, b=self.b, alpha=self.alpha, beta=self.beta
            )
        return self.conj() * (1.0 / self.norm)

    def bilinear(self, other: "GeneralizedComplex") -> float:
        """Polarization of D: ac + (beta/2)(ad + bc) - alpha bd."""
        self._check(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return a * c + self.beta / 2.0 * (a * d + b * c) - self.alpha * b * d


def system_class(alpha: float, beta: float, tol: float = 1e-12) -> NumberSystem:
    delta = beta**2 + 4.0 * alpha
    if abs(delta) <= tol * (1.0 + beta**2 + 4.0 * abs(alpha)):
        return NumberSystem.PARABOLIC
    return NumberSystem.ELLIPTIC if delta < 0 else NumberSystem.HYPERBOLIC


def zero_divisor_lines(alpha: float, beta: float) -> List[float]:
    """Slopes k with zero divisors on a + k b = 0; empty for elliptic systems."""
    cls = system_class(alpha, beta)
    if cls is NumberSystem.ELLIPTIC:
        return []
    root = math.sqrt(max(beta**2 + 4.0 * alpha, 0.0))
    if cls is NumberSystem.PARABOLIC:
        return [beta / 2.0]
    return [(beta + root) / 2.0, (beta - root) / 2.0]


@dataclass
class GeneralizedReport:
    number: GeneralizedComplex
    norm: float
    discriminant: float
    system: NumberSystem
    invertible: bool
    zero_divisor_lines: List[float]
    product: Optional[GeneralizedComplex] = None
    inverse: Optional[GeneralizedComplex] = None

    def to_dict(self) -> dict:
        def pair(x: Optional[GeneralizedComplex]) -> Optional[List[float]]:
            return None if x is None else [x.a, x.b]

        return {
            "number": pair(self.number),
            "alpha": self.number.alpha,
            "beta": self.number.beta,
            "D": self.norm,
            "Delta": self.discriminant,
            "system": self.system.value,
            "invertible": self.invertible,
            "zero_divisor_lines": self.zero_divisor_lines,
            "product": pair(self.product),
            "inverse": pair(self.inverse),
        }


def generalized_number(
    a: float,
    b: float,
    alpha: float,
    beta: float,
    other: Optional[Tuple[float, float]] = None,
) -> GeneralizedReport:
    """Classify a + u b in C_{alpha,beta}; optionally multiply by ``other``."""
    x = GeneralizedComplex(float(a), float(b), float(alpha), float(beta))
    product = None
    if other is not None:
        product = x * GeneralizedComplex(float(other[0]), float(other[1]), x.alpha, x.beta)
    invertible = x.is_invertible()
    return GeneralizedReport(
        number=x,
        norm=x.norm,
        discriminant=x.discriminant,
        system=system_class(alpha, beta),
        invertible=invertible,
        zero_divisor_lines=zero_divisor_lines(alpha, beta),
        product=product,
        inverse=x.inverse() if invertible else None,
    )
