"""Closed-form curves: standard helices, horocycles and the named test curves."""

import math
from enum import Enum
from typing import Any, Callable, Dict, Tuple

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.jets import cos, cosh, exp, sin, sinh, vector
from ..core.lorentz import EUCLIDEAN3, LORENTZ3
from .base import ClosedFormCurve

logger = structlog.get_logger()


class StandardCurve(str, Enum):
    BETA1 = "beta1"
    BETA2 = "beta2"
    BETA3 = "beta3"
    BETA4 = "beta4"
    BETA5 = "beta5"
    BETA6 = "beta6"
    GAMMA1 = "gamma1"
    GAMMA2 = "gamma2"
    GAMMA3 = "gamma3"
    HOROCYCLE = "horocycle"
    SEMI_LIGHTLIKE_EXP = "semi-lightlike-exp"
    SEMI_LIGHTLIKE_COSH = "semi-lightlike-cosh"
    CIRCLE = "circle"
    LINE = "line"
    TIME_LINE = "time-line"
    HYPERBOLA = "hyperbola"
    LIGHTLIKE_HELIX = "lightlike-helix"


FAMILY_LABELS = {
    StandardCurve.BETA1: "elliptic",
    StandardCurve.BETA2: "elliptic",
    StandardCurve.BETA3: "hyperbolic",
    StandardCurve.BETA4: "hyperbolic",
    StandardCurve.BETA5: "parabolic",
    StandardCurve.BETA6: "parabolic",
    StandardCurve.GAMMA1: "hyperbolic",
    StandardCurve.GAMMA2: "elliptic",
    StandardCurve.GAMMA3: "parabolic",
}


def _beta1(a: float = 1.0, b: float = 0.0) -> ClosedFormCurve:
    c = math.hypot(a, b)
    if c == 0:
        raise PreconditionError("beta1 needs (a, b) != (0, 0)")
    return ClosedFormCurve(
        "beta1",
        lambda s: vector(a * cos(s / c), a * sin(s / c), b * s / c),
        EUCLIDEAN3,
        params={"a": a, "b": b},
    )


def _split_c(name: str, a: float, b: float) -> float:
    c2 = abs(a * a - b * b)
    if c2 <= 1e-14 * max(a * a + b * b, 1e-300):
        raise PreconditionError(f"{name} needs a != +-b", a=a, b=b)
    return math.sqrt(c2)


def _beta2(a: float = 2.0, b: float = 1.0) -> ClosedFormCurve:
    c = _split_c("beta2", a, b)
    return ClosedFormCurve(
        "beta2",
        lambda s: vector(a * cos(s / c), a * sin(s / c), b * s / c),
        LORENTZ3,
        params={"a": a, "b": b},
    )


def _beta3(a: float = 2.0, b: float = 1.0) -> ClosedFormCurve:
    c = _split_c("beta3", a, b)
    return ClosedFormCurve(
        "beta3",
        lambda s: vector(b * s / c, a * cosh(s / c), a * sinh(s / c)),
        LORENTZ3,
        params={"a": a, "b": b},
    )


def _beta4(a: float = 1.0, b: float = 1.0) -> ClosedFormCurve:
    c = math.hypot(a, b)
    if c == 0:
        raise PreconditionError("beta4 needs (a, b) != (0, 0)")
    return ClosedFormCurve(
        "beta4",
        lambda s: vector(b * s / c, a * sinh(s / c), a * cosh(s / c)),
        LORENTZ3,
        params={"a": a, "b": b},
    )


def _beta5(a: float = 1.0) -> ClosedFormCurve:
    return ClosedFormCurve(
        "beta5",
        lambda s: vector(a * s**2 / 2, a**2 * s**3 / 6, s + a**2 * s**3 / 6),
        LORENTZ3,
        params={"a": a},
    )


def _beta6(a: float = 1.0) -> ClosedFormCurve:
    return ClosedFormCurve(
        "beta6",
        lambda s: vector(a * s**2 / 2, s - a**2 * s**3 / 6, -(a**2) * s**3 / 6),
        LORENTZ3,
        params={"a": a},
    )


def _positive_r(name: str, r: float) -> float:
    if r <= 0:
        raise PreconditionError(f"{name} needs r > 0", r=r)
    return math.sqrt(r)


def _gamma1(r: float = 1.0) -> ClosedFormCurve:
    q = _positive_r("gamma1", r)
    return ClosedFormCurve(
        "gamma1",
        lambda p: vector(q * p, r * cosh(p / q), r * sinh(p / q)),
        LORENTZ3,
        params={"r": r},
    )


def _gamma2(r: float = 1.0) -> ClosedFormCurve:
    q = _positive_r("gamma2", r)
    return ClosedFormCurve(
        "gamma2",
        lambda p: vector(r * cos(p / q), r * sin(p / q), q * p),
        LORENTZ3,
        params={"r": r},
    )


def _gamma3() -> ClosedFormCurve:
    return ClosedFormCurve(
        "gamma3",
        lambda p: vector(-(p**3) / 4 + p / 3, p**2 / 2, -(p**3) / 4 - p / 3),
        LORENTZ3,
    )


def horocycle_data(c: float = -1.0) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Base vector v and the vectors w1, w2 of the horocycle of level c."""
    if c >= 0:
        raise PreconditionError("horocycle level must be negative", c=c)
    v = np.array([0.0, 1.0, 1.0])
    w1 = np.array([1.0, 0.0, 0.0])
    w2 = np.array([0.0, (c - 1.0 / c) / 2.0, (-1.0 / c - c) / 2.0])
    return v, w1, w2


def _horocycle(c: float = -1.0) -> ClosedFormCurve:
    v, w1, w2 = horocycle_data(c)
    return ClosedFormCurve(
        "horocycle",
        lambda s: vector(*(-(s * s) / (2 * c) * v[i] + s * w1[i] + w2[i] for i in range(3))),
        LORENTZ3,
        params={"c": c},
    )


def _semi_lightlike_exp(
    ctorsion: float = 1.0, a: float = 0.0, b: float = 1.0, c: float = 0.0, d: float = 0.0
) -> ClosedFormCurve:
    if ctorsion == 0:
        raise PreconditionError("constant pseudo-torsion must be nonzero")
    if b == 0:
        raise PreconditionError("b = 0 gives a line, not a semi-lightlike curve")
    k = float(ctorsion)

    def fn(s: Any) -> Any:
        f = (b / k**2) * exp(k * s) + c * s + d
        return vector(s + a, f, f)

    return ClosedFormCurve(
        "semi-lightlike-exp", fn, LORENTZ3, params={"ctorsion": k, "a": a, "b": b, "c": c, "d": d}
    )


def _semi_lightlike_cosh() -> ClosedFormCurve:
    return ClosedFormCurve("semi-lightlike-cosh", lambda s: vector(s, cosh(s), cosh(s)), LORENTZ3)


def _circle(r: float = 1.0, euclidean: bool = True) -> ClosedFormCurve:
    return ClosedFormCurve(
        "circle",
        lambda t: vector(r * cos(t), r * sin(t), 0.0 * t),
        EUCLIDEAN3 if euclidean else LORENTZ3,
        params={"r": r},
    )


def _line() -> ClosedFormCurve:
    return ClosedFormCurve("line", lambda t: vector(t, 0.0 * t, 0.0 * t), EUCLIDEAN3)


def _time_line() -> ClosedFormCurve:
    return ClosedFormCurve("time-line", lambda t: vector(0.0 * t, 0.0 * t, t), LORENTZ3)


def _hyperbola() -> ClosedFormCurve:
    return ClosedFormCurve("hyperbola", lambda s: vector(0.0 * s, sinh(s), cosh(s)), LORENTZ3)


def _lightlike_helix(r: float = 1.0) -> ClosedFormCurve:
    return ClosedFormCurve(
        "lightlike-helix",
        lambda t: vector(r * cos(t), r * sin(t), r * t),
        LORENTZ3,
        params={"r": r},
    )


_FACTORIES: Dict[StandardCurve, Callable[..., ClosedFormCurve]] = {
    StandardCurve.BETA1: _beta1,
    StandardCurve.BETA2: _beta2,
    StandardCurve.BETA3: _beta3,
    StandardCurve.BETA4: _beta4,
    StandardCurve.BETA5: _beta5,
    StandardCurve.BETA6: _beta6,
    StandardCurve.GAMMA1: _gamma1,
    StandardCurve.GAMMA2: _gamma2,
    StandardCurve.GAMMA3: _gamma3,
    StandardCurve.HOROCYCLE: _horocycle,
    StandardCurve.SEMI_LIGHTLIKE_EXP: _semi_lightlike_exp,
    StandardCurve.SEMI_LIGHTLIKE_COSH: _semi_lightlike_cosh,
    StandardCurve.CIRCLE: _circle,
    StandardCurve.LINE: _line,
    StandardCurve.TIME_LINE: _time_line,
    StandardCurve.HYPERBOLA: _hyperbola,
    StandardCurve.LIGHTLIKE_HELIX: _lightlike_helix,
}


def standard_curve(kind: str, **params: Any) -> ClosedFormCurve:
    """Build a named closed-form curve; unknown parameters are rejected."""
    try:
        key = StandardCurve(kind)
    except ValueError as e:
        raise PreconditionError(f"Unknown curve: {kind}", known=sorted(k.value for k in StandardCurve)) from e
    try:
        return _FACTORIES[key](**params)
    except TypeError as e:
        raise PreconditionError(f"invalid parameters for {kind}", error=str(e)) from e


def standard_helix_parameters(
    kappa: float, tau: float, eps: int, eta: int, euclidean: bool, tol: float = 1e-9
) -> Tuple[StandardCurve, Dict[str, float]]:
    """Standard helix congruent to a unit-speed helix with constant (kappa, tau)."""
    if kappa <= 0:
        raise PreconditionError("curvature must be positive", kappa=kappa)
    if euclidean:
        s = kappa**2 + tau**2
        return StandardCurve.BETA1, {"a": kappa / s, "b": tau / s}
    gap = kappa - abs(tau)
    if eps == 1 and eta == -1:
        s = kappa**2 + tau**2
        return StandardCurve.BETA4, {"a": kappa / s, "b": -tau / s}
    if abs(gap) <= tol * max(kappa, 1.0):
        family = StandardCurve.BETA5 if eps == -1 else StandardCurve.BETA6
        return family, {"a": tau}
    d = abs(kappa**2 - tau**2)
    params = {"a": kappa / d, "b": tau / d}
    if eps == -1:
        return (StandardCurve.BETA3 if gap > 0 else StandardCurve.BETA2), params
    return (StandardCurve.BETA2 if gap > 0 else StandardCurve.BETA3), params


def standard_lightlike_helix(ctorsion: float, tol: float = 1e-9) -> Tuple[StandardCurve, Dict[str, float]]:
    """Standard lightlike helix with constant pseudo-torsion."""
    if abs(ctorsion) <= tol:
        return StandardCurve.GAMMA3, {}
    r = 1.0 / (2.0 * abs(ctorsion))
    return (StandardCurve.GAMMA1 if ctorsion > 0 else StandardCurve.GAMMA2), {"r": r}
