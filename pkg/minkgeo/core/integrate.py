"""Fixed-step ODE integration and quadrature helpers."""

from functools import lru_cache
from typing import Any, Callable, Tuple

import numpy as np
import structlog
from scipy.integrate import quad

from .errors import NumericalFailure, PreconditionError
from .jets import is_jet, value_of

logger = structlog.get_logger()

GAUSS_NODES = 32


def rk4(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    t0: float,
    step: float,
    steps: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """Classical fourth-order Runge-Kutta; returns the parameter grid and states."""
    if step == 0 or steps < 0:
        raise PreconditionError("integration step must be nonzero", step=step, steps=steps)
    y = np.asarray(y0, dtype=float)
    ts = t0 + step * np.arange(steps + 1)
    out = np.empty((steps + 1,) + y.shape)
    out[0] = y
    h = step
    for i in range(steps):
        t = ts[i]
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h / 2 * k1)
        k3 = rhs(t + h / 2, y + h / 2 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise NumericalFailure("integration diverged", step_index=i, t=float(t))
        out[i + 1] = y
    return ts, out


@lru_cache(maxsize=8)
def _legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def gauss_legendre(
    f: Callable[[np.ndarray], Any], a: float, b: float, n: int = GAUSS_NODES
) -> Any:
    """Integral of ``f`` over [a, b]; ``f`` is evaluated once on all nodes."""
    x, w = _legendre(n)
    half = (b - a) / 2.0
    nodes = (a + b) / 2.0 + half * x
    values = f(nodes)
    return half * np.tensordot(w, values, axes=(0, 0))


def integral(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10) -> float:
    """Adaptive quadrature with a failure check."""
    value, err = quad(f, a, b, epsabs=tol, epsrel=tol, limit=200)
    if not np.isfinite(value) or err > max(1e3 * tol, 1e-6 * abs(value)):
        raise NumericalFailure("quadrature did not converge", a=a, b=b, error=err)
    return float(value)


def primitive(
    integrand: Callable[[Any], Any], lower: float, x: Any, tol: float = 1e-10
) -> Any:
    """F(x) = int_lower^x integrand; jets get exact higher coefficients."""
    if isinstance(x, np.ndarray) and x.ndim > 0:
        flat = [primitive(integrand, lower, float(xi), tol) for xi in x.ravel()]
        return np.array(flat).reshape(x.shape)
    x0 = float(np.real(value_of(x)))
    constant = integral(lambda t: float(integrand(t)), lower, x0, tol) if x0 != lower else 0.0
    if not is_jet(x):
        return constant
    return x.antiderivative(integrand(x), constant)
