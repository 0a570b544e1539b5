"""Calculus of split-complex functions f(x + h y) = phi(x, y) + h psi(x, y).

Derivatives come from two-variable jets when the function is written with jet
aware arithmetic; black-box functions fall back to central differences.
Line integrals use fixed Gauss-Legendre rules per path segment.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.integrate import GAUSS_NODES, gauss_legendre
from ..core.jets import Jet2, exp, is_jet
from .numbers import ELL, ELL_BAR, H, SplitComplex

logger = structlog.get_logger()

Interval = Tuple[float, float]
Rectangle = Tuple[Interval, Interval]

WHOLE_PLANE: Rectangle = ((-math.inf, math.inf), (-math.inf, math.inf))

# black-box difference step; second differences use ten times this
FD_STEP = 1e-5


@dataclass
class SplitFunction:
    """A split-complex function on an open rectangle of the (x, y) plane."""

    fn: Callable[[SplitComplex], Any]
    domain: Rectangle = WHOLE_PLANE
    name: str = "f"
    black_box: bool = False

    def __call__(self, w: Any) -> SplitComplex:
        return SplitComplex.coerce(self.fn(SplitComplex.coerce(w)))

    def contains(self, x: Any, y: Any) -> bool:
        (x0, x1), (y0, y1) = self.domain
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        return bool(np.all((x0 < x) & (x < x1) & (y0 < y) & (y < y1)))

    def check_domain(self, x: Any, y: Any) -> None:
        if not self.contains(x, y):
            raise PreconditionError("point outside the function domain", function=self.name)


def as_split_function(f: Union[SplitFunction, Callable[[SplitComplex], Any]]) -> SplitFunction:
    return f if isinstance(f, SplitFunction) else SplitFunction(f)


def _point(w: Any) -> Tuple[float, float]:
    w = SplitComplex.coerce(w)
    return float(w.re), float(w.im)


def _as_jet(x: Any, order: int) -> Jet2:
    if is_jet(x):
        return x
    c = np.zeros((order + 1, order + 1))
    c[0, 0] = float(np.real(x))
    return Jet2(c)


def split_jets(
    f: SplitFunction, x: float, y: float, order: int = 2, step: float = FD_STEP
) -> Tuple[Jet2, Jet2]:
    """Jets of phi and psi at (x, y); black boxes use differences of size ``step``."""
    if f.black_box:
        return _difference_jets(f, x, y, step)
    U, V = Jet2.variables(x, y, order)
    out = f(SplitComplex(U, V))
    return _as_jet(out.re, order), _as_jet(out.im, order)


def _difference_jets(f: SplitFunction, x: float, y: float, step: float = FD_STEP) -> Tuple[Jet2, Jet2]:
    def at(dx: float, dy: float) -> np.ndarray:
        w = f(SplitComplex(x + dx, y + dy))
        return np.array([float(w.re), float(w.im)])

    h, k = step, 10.0 * step
    c = np.zeros((3, 3, 2))
    mid = at(0, 0)
    c[0, 0] = mid
    c[1, 0] = (at(h, 0) - at(-h, 0)) / (2 * h)
    c[0, 1] = (at(0, h) - at(0, -h)) / (2 * h)
    c[2, 0] = (at(k, 0) - 2 * mid + at(-k, 0)) / k**2 / 2
    c[0, 2] = (at(0, k) - 2 * mid + at(0, -k)) / k**2 / 2
    c[1, 1] = (at(k, k) - at(k, -k) - at(-k, k) + at(-k, -k)) / (4 * k * k)
    return Jet2(c[..., 0]), Jet2(c[..., 1])


@dataclass
class SplitDerivative:
    dw: SplitComplex
    dwbar: SplitComplex
    cr_residual: float
    dalembertian_phi: float
    dalembertian_psi: float
    split_holomorphic: bool
    derivative: Optional[SplitComplex] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dw": self.dw.to_list(),
            "dwbar": self.dwbar.to_list(),
            "cr_residual": self.cr_residual,
            "dalembertian_phi": self.dalembertian_phi,
            "dalembertian_psi": self.dalembertian_psi,
            "split_holomorphic": self.split_holomorphic,
            "derivative": None if self.derivative is None else self.derivative.to_list(),
        }


def differentiate(f: Any, w: Any, tol: float = 1e-8, step: float = FD_STEP) -> SplitDerivative:
    """Wirtinger derivatives d/dw = (d/dx + h d/dy) / 2 and d/dwbar = (d/dx - h d/dy) / 2."""
    f = as_split_function(f)
    x, y = _point(w)
    f.check_domain(x, y)
    phi, psi = split_jets(f, x, y, step=step)
    px, py = float(phi.partial(1, 0)), float(phi.partial(0, 1))
    qx, qy = float(psi.partial(1, 0)), float(psi.partial(0, 1))
    dw = SplitComplex((px + qy) / 2.0, (qx + py) / 2.0)
    dwbar = SplitComplex((px - qy) / 2.0, (qx - py) / 2.0)
    residual = max(abs(px - qy), abs(py - qx))
    scale = 1.0 + max(abs(px), abs(py), abs(qx), abs(qy))
    if f.black_box:
        tol = max(tol, 1e-6)
    holomorphic = residual <= tol * scale
    return SplitDerivative(
        dw=dw,
        dwbar=dwbar,
        cr_residual=residual,
        dalembertian_phi=float(phi.partial(2, 0) - phi.partial(0, 2)),
        dalembertian_psi=float(psi.partial(2, 0) - psi.partial(0, 2)),
        split_holomorphic=holomorphic,
        derivative=dw if holomorphic else None,
    )


def _wirtinger(F: SplitComplex, sign: int) -> SplitComplex:
    dx = SplitComplex(F.re.d_du(), F.im.d_du())
    dy = SplitComplex(F.re.d_dv(), F.im.d_dv())
    return (dx + sign * (H * dy)) * 0.5


def wave_operator(f: Any, w: Any) -> SplitComplex:
    """4 d/dwbar d/dw f, applied as operators to the jet of f."""
    f = as_split_function(f)
    if f.black_box:
        raise PreconditionError("operator composition needs a jet-aware function", function=f.name)
    x, y = _point(w)
    f.check_domain(x, y)
    phi, psi = split_jets(f, x, y)
    second = _wirtinger(_wirtinger(SplitComplex(phi, psi), +1), -1)
    return SplitComplex(4.0 * float(second.re.value), 4.0 * float(second.im.value))


# ---------- paths and line integrals ----------


@dataclass
class Segment:
    """Smooth path piece gamma(t), t in [t0, t1]; both callables take arrays."""

    gamma: Callable[[np.ndarray], SplitComplex]
    dgamma: Callable[[np.ndarray], SplitComplex]
    t0: float = 0.0
    t1: float = 1.0


def line(a: Any, b: Any) -> Segment:
    a, b = SplitComplex.coerce(a), SplitComplex.coerce(b)
    d = b - a
    return Segment(
        lambda t: SplitComplex(a.re + t * d.re, a.im + t * d.im),
        lambda t: SplitComplex(d.re + 0.0 * t, d.im + 0.0 * t),
    )


def polyline(vertices: Sequence[Any]) -> List[Segment]:
    if len(vertices) < 2:
        raise PreconditionError("a path needs at least two vertices")
    return [line(a, b) for a, b in zip(vertices[:-1], vertices[1:])]


def l_path(start: Any, end: Any, first: str = "x") -> List[Segment]:
    """Axis-aligned path moving along ``first`` ("x" or "y") before the other axis."""
    (x0, y0), (x1, y1) = _point(start), _point(end)
    corner = (x1, y0) if first == "x" else (x0, y1)
    return polyline([(x0, y0), corner, (x1, y1)])


def square_loop(corner: Any = (0.0, 0.0), side: float = 1.0) -> List[Segment]:
    x, y = _point(corner)
    return polyline([(x, y), (x + side, y), (x + side, y + side), (x, y + side), (x, y)])


def _evaluate(f: SplitFunction, z: SplitComplex) -> SplitComplex:
    try:
        out = f(z)
        re = np.broadcast_to(np.asarray(out.re, dtype=float), np.shape(z.re))
        im = np.broadcast_to(np.asarray(out.im, dtype=float), np.shape(z.re))
        return SplitComplex(re, im)
    except (TypeError, ValueError):
        values = [f(SplitComplex(float(a), float(b))) for a, b in zip(z.re, z.im)]
        return SplitComplex(
            np.array([float(v.re) for v in values]), np.array([float(v.im) for v in values])
        )


def integrate(f: Any, path: Union[Segment, Sequence[Any]], nodes: int = GAUSS_NODES) -> SplitComplex:
    """Integral of f(w) dw along a path: segments, or a polyline given by its vertices."""
    f = as_split_function(f)
    if isinstance(path, Segment):
        segments = [path]
    elif all(isinstance(s, Segment) for s in path):
        segments = list(path)
    else:
        segments = polyline(path)
    total = np.zeros(2)
    for seg in segments:

        def integrand(t: np.ndarray, seg: Segment = seg) -> np.ndarray:
            z = seg.gamma(t)
            if not f.contains(z.re, z.im):
                raise PreconditionError("integration path leaves the function domain", function=f.name)
            v = _evaluate(f, z) * seg.dgamma(t)
            return np.stack([np.asarray(v.re, dtype=float), np.asarray(v.im, dtype=float)], axis=-1)

        total = total + gauss_legendre(integrand, seg.t0, seg.t1, nodes)
    return SplitComplex(float(total[0]), float(total[1]))


# ---------- Lorentz conjugates ----------


def _gradient(phi: Callable[[Any, Any], Any], x: Any, y: Any) -> Tuple[np.ndarray, np.ndarray]:
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    cu = np.zeros((2, 2) + x.shape)
    cv = np.zeros((2, 2) + x.shape)
    cu[0, 0], cu[1, 0] = x, 1.0
    cv[0, 0], cv[0, 1] = y, 1.0
    j = phi(Jet2(cu), Jet2(cv))
    if not is_jet(j):
        return np.zeros(x.shape), np.zeros(x.shape)
    return np.real(j.coeffs[1, 0]), np.real(j.coeffs[0, 1])


def lorentz_harmonic_residual(phi: Callable[[Any, Any], Any], x: float, y: float) -> float:
    """Scale-relative phi_xx - phi_yy."""
    U, V = Jet2.variables(float(x), float(y), 2)
    j = _as_jet(phi(U, V), 2)
    xx, yy = float(j.partial(2, 0)), float(j.partial(0, 2))
    return abs(xx - yy) / (1.0 + abs(xx) + abs(yy))


@dataclass
class LorentzConjugate:
    """psi with psi_x = phi_y and psi_y = phi_x, normalized by psi(basepoint) = value."""

    phi: Callable[[Any, Any], Any]
    basepoint: Tuple[float, float]
    domain: Rectangle = WHOLE_PLANE
    value: float = 0.0
    first: str = "x"
    _g: SplitFunction = field(init=False, repr=False)

    def __post_init__(self) -> None:
        def g(w: SplitComplex) -> SplitComplex:
            px, py = _gradient(self.phi, w.re, w.im)
            return SplitComplex(px, py)

        self._g = SplitFunction(g, self.domain, "phi_x + h phi_y")

    def __call__(self, x: float, y: float) -> float:
        path = l_path(self.basepoint, (x, y), self.first)
        return self.value + integrate(self._g, path).im

    def residual(self, x: float, y: float, step: float = FD_STEP) -> float:
        """Largest violation of the two conjugacy equations, by central differences."""
        psi_x = (self(x + step, y) - self(x - step, y)) / (2 * step)
        psi_y = (self(x, y + step) - self(x, y - step)) / (2 * step)
        px, py = _gradient(self.phi, x, y)
        return float(max(abs(float(px) - psi_y), abs(float(py) - psi_x)))


def lorentz_conjugate(
    phi: Callable[[Any, Any], Any],
    basepoint: Tuple[float, float] = (0.0, 0.0),
    domain: Rectangle = WHOLE_PLANE,
    tol: float = 1e-8,
    samples: Sequence[Tuple[float, float]] = (),
    first: str = "x",
) -> LorentzConjugate:
    """Lorentz conjugate of a jet-aware scalar field phi(x, y).

    psi is the imaginary part of a primitive of g = phi_x + h phi_y, integrated
    along an axis-aligned path from ``basepoint``.
    """
    for x, y in [tuple(basepoint), *samples]:
        r = lorentz_harmonic_residual(phi, x, y)
        if r > tol:
            raise PreconditionError("phi is not Lorentz-harmonic", x=x, y=y, residual=r)
    logger.debug("Building Lorentz conjugate", basepoint=list(basepoint))
    return LorentzConjugate(phi, (float(basepoint[0]), float(basepoint[1])), domain, first=first)


# ---------- identities ----------


def decomposition_residual(f: Any, w: Any, s: float, t: float) -> float:
    """|f(w) - (lbar f(w + t l) + l f(w + s lbar))|, zero for split-holomorphic f."""
    f = as_split_function(f)
    w = SplitComplex.coerce(w)
    rebuilt = ELL_BAR * f(w + ELL * t) + ELL * f(w + ELL_BAR * s)
    return (f(w) - rebuilt).magnitude()


def bounded_entire_function() -> SplitFunction:
    """(1 + h) / (1 + e^-x e^-y): bounded, non-constant and split-holomorphic on the plane."""

    def fn(w: SplitComplex) -> SplitComplex:
        return SplitComplex(1.0, 1.0) * (1.0 / (1.0 + exp(-w.re) * exp(-w.im)))

    return SplitFunction(fn, name="bounded-entire")


# ---------- poles ----------

_SAMPLE_DIRECTIONS = ((1.0, 0.0), (0.0, 1.0), (1.0, 0.5), (0.5, 1.0))


def pole_order(f: Any, w0: Any, max_order: int = 6, radius: float = 1e-2) -> int:
    """Least k for which (w - w0)^k f stays bounded and split-holomorphic near w0.

    Samples along non-null directions at ``radius`` and ``radius / 10``; the
    multiplied function counts as bounded when its size grows by at most a
    factor 2 between the two radii.
    """
    f = as_split_function(f)
    w0 = SplitComplex.coerce(w0)
    for k in range(max_order + 1):

        def g(w: SplitComplex, k: int = k) -> SplitComplex:
            return (w - w0) ** k * f(w)

        bounded = True
        for dx, dy in _SAMPLE_DIRECTIONS:
            outer = g(w0 + SplitComplex(radius * dx, radius * dy)).magnitude()
            inner = g(w0 + SplitComplex(0.1 * radius * dx, 0.1 * radius * dy)).magnitude()
            if not np.isfinite(inner) or inner > 2.0 * max(outer, 1e-12):
                bounded = False
                break
        if not bounded:
            continue
        near = w0 + SplitComplex(radius, 0.5 * radius)
        if differentiate(SplitFunction(g, f.domain, f.name, f.black_box), near, tol=1e-6).split_holomorphic:
            logger.debug("Pole order found", order=k, point=w0.to_list())
            return k
    raise PreconditionError("no pole of order <= max_order", point=w0.to_list(), max_order=max_order)
