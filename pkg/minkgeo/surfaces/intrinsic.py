"""Intrinsic geometry of two-dimensional metrics.

Christoffel symbols and geodesics of a metric patch, Fermi charts along a
geodesic, curvature of metrics of the form (-1)^nu eps du^2 + G dv^2, the
constant-curvature solutions of that family, and the polar expansion
H(x, y) = (G - u^2) / u^4 of a Riemannian Fermi metric.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
import structlog
from scipy.interpolate import RectBivariateSpline

from ..core.errors import NumericalFailure, PreconditionError
from ..core.integrate import rk4
from ..core.jets import Jet, Jet2, cos, cosh, is_jet, value_of
from ..core.lorentz import inner
from .base import SurfaceModel

logger = structlog.get_logger()

MetricFn = Callable[[Any, Any], Tuple[Any, Any, Any]]

# Jacobian condition number at which a Fermi chart counts as folded
FOLD_CONDITION = 1e6


@dataclass
class MetricPatch:
    """Metric g11 du^2 + 2 g12 du dv + g22 dv^2 on a coordinate patch.

    ``metric`` maps (u, v) to (g11, g12, g22) and must accept jets, so
    partial derivatives come out exactly.
    """

    metric: MetricFn
    nu: int = 0
    name: str = "metric"

    def matrix(self, u: float, v: float) -> np.ndarray:
        g11, g12, g22 = (float(np.real(value_of(x))) for x in self.metric(u, v))
        return np.array([[g11, g12], [g12, g22]])

    def derivatives(self, u: float, v: float) -> Tuple[np.ndarray, np.ndarray]:
        """The metric matrix and its partials, stacked as dg[k] = d g / d x^k."""
        U, V = Jet2.variables(float(u), float(v), 1)
        comps = [x if is_jet(x) else Jet2(U._constant(x)) for x in self.metric(U, V)]
        g = np.zeros((2, 2))
        dg = np.zeros((2, 2, 2))
        for (i, j), c in zip(((0, 0), (0, 1), (1, 1)), comps):
            val = float(np.real(c.value))
            du, dv = float(np.real(c.partial(1, 0))), float(np.real(c.partial(0, 1)))
            g[i, j] = g[j, i] = val
            dg[0, i, j] = dg[0, j, i] = du
            dg[1, i, j] = dg[1, j, i] = dv
        return g, dg

    def christoffel(self, u: float, v: float) -> np.ndarray:
        """Gamma[k, i, j] = 1/2 g^{kr} (d_i g_rj + d_j g_ri - d_r g_ij)."""
        g, dg = self.derivatives(u, v)
        det = float(np.linalg.det(g))
        if abs(det) <= 1e-12 * max(1.0, float(np.abs(g).max()) ** 2):
            raise NumericalFailure("metric degenerates", u=u, v=v, det=det)
        ginv = np.linalg.inv(g)
        # lowered[r, i, j] = d_i g_rj + d_j g_ri - d_r g_ij
        lowered = (
            np.einsum("irj->rij", dg) + np.einsum("jri->rij", dg) - dg
        )
        return 0.5 * np.einsum("kr,rij->kij", ginv, lowered)

    def speed(self, u: float, v: float, du: float, dv: float) -> float:
        w = np.array([du, dv])
        return float(w @ self.matrix(u, v) @ w)


def metric_from_surface(m: SurfaceModel) -> MetricPatch:
    """First fundamental form of ``m`` as a metric patch."""
    sig = m.ambient

    def metric(u: Any, v: Any) -> tuple:
        if is_jet(u):
            J = m.jet(float(np.real(u.value)), float(np.real(v.value)), u.order + 1)
            xu, xv = J.d_du(), J.d_dv()
        else:
            J = m.jet(float(u), float(v), 1)
            xu, xv = J.partial(1, 0), J.partial(0, 1)
        return inner(xu, xu, sig), inner(xu, xv, sig), inner(xv, xv, sig)

    patch = MetricPatch(metric, 0, f"first-form({m.name})")
    if sig.nu > 0:
        (u0, u1), (v0, v1) = m.domain
        u_mid = 0.5 * (u0 + u1) if np.isfinite(u0 + u1) else 0.0
        v_mid = 0.5 * (v0 + v1) if np.isfinite(v0 + v1) else 0.0
        patch.nu = metric_index(patch.matrix(u_mid, v_mid))
    return patch


def metric_index(g: np.ndarray) -> int:
    """Number of negative eigenvalues of a symmetric 2x2 matrix."""
    return int(np.sum(np.linalg.eigvalsh(g) < 0))


@dataclass
class GeodesicResult:
    params: np.ndarray
    points: np.ndarray
    velocities: np.ndarray
    speeds: np.ndarray = field(repr=False)
    drift: float = 0.0


def christoffel_geodesics(
    patch: MetricPatch,
    start: Tuple[float, float],
    velocity: Tuple[float, float],
    step: float = 1e-2,
    steps: int = 100,
) -> GeodesicResult:
    """RK4 solution of u''^k + Gamma^k_ij u'^i u'^j = 0."""

    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        gamma = patch.christoffel(y[0], y[1])
        w = y[2:]
        acc = -np.einsum("kij,i,j->k", gamma, w, w)
        return np.concatenate([w, acc])

    y0 = np.array([start[0], start[1], velocity[0], velocity[1]], dtype=float)
    ts, ys = rk4(rhs, y0, 0.0, step, steps)
    speeds = np.array([patch.speed(*y) for y in ys])
    drift = float(np.max(np.abs(speeds - speeds[0])))
    logger.debug("Integrated geodesic", metric=patch.name, steps=steps, drift=drift)
    return GeodesicResult(ts, ys[:, :2], ys[:, 2:], speeds, drift)


@dataclass
class FermiChart:
    us: np.ndarray
    vs: np.ndarray
    points: np.ndarray = field(repr=False)
    E: np.ndarray = field(repr=False)
    F: np.ndarray = field(repr=False)
    G: np.ndarray = field(repr=False)
    eps_gamma: int
    nu: int
    diagnostics: Dict[str, float]

    def metric_patch(self) -> MetricPatch:
        """Fermi metric (-1)^nu eps du^2 + G dv^2 with G interpolated by a spline."""
        k = min(3, len(self.us) - 1, len(self.vs) - 1)
        spline = RectBivariateSpline(self.us, self.vs, self.G, kx=k, ky=k)
        e = float((-1) ** self.nu * self.eps_gamma)

        def metric(u: Any, v: Any) -> tuple:
            return e, 0.0, _spline_value(spline, u, v)

        return MetricPatch(metric, self.nu, "fermi")


def _spline_value(spline: RectBivariateSpline, u: Any, v: Any) -> Any:
    if not is_jet(u):
        return float(spline(float(u), float(v))[0, 0])
    u0, v0 = float(np.real(u.value)), float(np.real(v.value))
    order = u.order
    c = np.zeros((order + 1, order + 1))
    for i in range(order + 1):
        for j in range(order + 1 - i):
            c[i, j] = spline(u0, v0, dx=i, dy=j)[0, 0] / (math.factorial(i) * math.factorial(j))
    return Jet2(c)


def _unit_normal(g: np.ndarray, w: np.ndarray) -> Tuple[np.ndarray, int]:
    a = g @ w
    n = np.array([-a[1], a[0]])
    q = float(n @ g @ n)
    if abs(q) <= 1e-14 * float(n @ n):
        raise PreconditionError("base geodesic is lightlike")
    return n / math.sqrt(abs(q)), 1 if q > 0 else -1


def fermi_chart(
    patch: MetricPatch,
    start: Tuple[float, float],
    direction: Tuple[float, float],
    width: float = 0.5,
    length: float = 1.0,
    nu_samples: int = 21,
    nv_samples: int = 21,
) -> FermiChart:
    """Chart x(u, v) = gamma_v(u) built by shooting geodesics orthogonal to a base geodesic.

    The base geodesic starts at ``start`` with unit velocity ``direction``;
    gamma_v is the unit-speed geodesic leaving the base point gamma(v)
    orthogonally. Samples cover |u| <= width and 0 <= v <= length.
    """
    g0 = patch.matrix(*start)
    w0 = np.asarray(direction, dtype=float)
    q0 = float(w0 @ g0 @ w0)
    if abs(abs(q0) - 1.0) > 1e-8:
        raise PreconditionError("base geodesic must be unit speed", speed=q0)
    eps_gamma = 1 if q0 > 0 else -1
    nv_steps = nv_samples - 1
    base = christoffel_geodesics(patch, start, tuple(w0), length / nv_steps, nv_steps)
    half = (nu_samples - 1) // 2
    du = width / half
    us = du * np.arange(-half, half + 1)
    points = np.empty((len(us), nv_samples, 2))
    for j, (p, w) in enumerate(zip(base.points, base.velocities)):
        n, _ = _unit_normal(patch.matrix(*p), w)
        forward = christoffel_geodesics(patch, tuple(p), tuple(n), du, half)
        backward = christoffel_geodesics(patch, tuple(p), tuple(n), -du, half)
        points[half:, j] = forward.points
        points[: half + 1, j] = backward.points[::-1]
    xu = np.gradient(points, us, axis=0, edge_order=2)
    xv = np.gradient(points, base.params, axis=1, edge_order=2)
    E = np.empty(points.shape[:2])
    F = np.empty_like(E)
    G = np.empty_like(E)
    for i in range(len(us)):
        for j in range(nv_samples):
            g = patch.matrix(*points[i, j])
            J = np.column_stack([xu[i, j], xv[i, j]])
            cond = float(np.linalg.cond(J))
            if not np.isfinite(cond) or cond > FOLD_CONDITION:
                raise NumericalFailure("Fermi chart folds", u=float(us[i]), v=float(base.params[j]))
            E[i, j] = xu[i, j] @ g @ xu[i, j]
            F[i, j] = xu[i, j] @ g @ xv[i, j]
            G[i, j] = xv[i, j] @ g @ xv[i, j]
    nu = metric_index(g0)
    expected_E = (-1) ** nu * eps_gamma
    G_u = np.gradient(G, us, axis=0, edge_order=2)
    diagnostics = {
        "max_F": float(np.max(np.abs(F))),
        "max_E_deviation": float(np.max(np.abs(E - expected_E))),
        "max_G_u_on_base": float(np.max(np.abs(G_u[half]))),
    }
    logger.info("Built Fermi chart", metric=patch.name, eps_gamma=eps_gamma, **diagnostics)
    return FermiChart(us, base.params, points, E, F, G, eps_gamma, nu, diagnostics)


def curvature_from_G(
    G: Callable[[Any, Any], Any], nu: int, eps_gamma: int, u: float, v: float = 0.0
) -> float:
    """K = (-1)^(nu+1) eps (sqrt|G|)_uu / sqrt|G| for the metric (-1)^nu eps du^2 + G dv^2."""
    try:
        U, V = Jet2.variables(float(u), float(v), 2)
        gj = G(U, V)
        if not is_jet(gj):
            raise TypeError("metric function ignored its jet arguments")
        g0 = float(np.real(gj.value))
        _check_sign(g0, eps_gamma, u, v)
        root = (gj * float(np.sign(g0))) ** 0.5
        second = float(np.real(root.partial(2, 0)))
        value = float(np.real(root.value))
    except TypeError:
        h = 1e-4
        vals = [abs(float(G(u + k * h, v))) for k in (-1, 0, 1)]
        _check_sign(float(G(u, v)), eps_gamma, u, v)
        roots = np.sqrt(vals)
        second = (roots[0] - 2 * roots[1] + roots[2]) / (h * h)
        value = float(roots[1])
    return float((-1) ** (nu + 1) * eps_gamma * second / value)


def _check_sign(g0: float, eps_gamma: int, u: float, v: float) -> None:
    if g0 == 0 or int(np.sign(g0)) != eps_gamma:
        raise PreconditionError("G must be nonzero with the sign of eps_gamma", G=g0, u=u, v=v)


@dataclass
class ConstantCurvatureMetric:
    K: float
    nu: int
    eps_gamma: int
    label: str
    G: Callable[[Any, Any], Any] = field(repr=False)

    @property
    def patch(self) -> MetricPatch:
        e = float((-1) ** self.nu * self.eps_gamma)
        return MetricPatch(lambda u, v: (e, 0.0, self.G(u, v)), self.nu, f"K={self.K:g}/{self.label}")


def constant_curvature_G(
    K: float, nu: int, eps_gamma: int, slope: float = 0.0
) -> ConstantCurvatureMetric:
    """G solving (sqrt|G|)_uu + (-1)^nu eps K sqrt|G| = 0 with G(0) = eps, G_u(0) = 0.

    ``slope`` only enters the flat case, where sqrt|G| = 1 + slope u.
    """
    if nu not in (0, 1) or eps_gamma not in (1, -1):
        raise PreconditionError("need nu in {0, 1} and eps_gamma = +-1", nu=nu, eps_gamma=eps_gamma)
    c = (-1) ** nu * eps_gamma * K
    k = math.sqrt(abs(c))
    sign = "" if eps_gamma > 0 else "-"
    label = sign + ("cos^2" if c > 0 else "cosh^2" if c < 0 else "affine")

    def root(u: Any) -> Any:
        if c > 0:
            return cos(k * u)
        if c < 0:
            return cosh(k * u)
        return 1.0 + slope * u

    def G(u: Any, v: Any) -> Any:
        r = root(u)
        return eps_gamma * r * r + 0.0 * v

    return ConstantCurvatureMetric(K, nu, eps_gamma, label, G)


def constant_curvature_residual(
    G: Callable[[Any, Any], Any], nu: int, eps_gamma: int, K: float, us: Any, v: float = 0.0
) -> float:
    """Largest |(sqrt|G|)_uu + (-1)^nu eps K sqrt|G| over ``us``."""
    worst = 0.0
    for u in np.asarray(us, dtype=float):
        U, V = Jet2.variables(float(u), v, 2)
        gj = G(U, V)
        root = (gj * float(np.sign(np.real(gj.value)))) ** 0.5
        r = float(np.real(root.value))
        worst = max(worst, abs(float(np.real(root.partial(2, 0))) + (-1) ** nu * eps_gamma * K * r))
    return worst


@dataclass
class RiemannFormula:
    """H(x, y) = (G(u, v) - u^2) / u^4 in polar coordinates x = u cos v, y = u sin v."""

    G: Callable[[Any, Any], Any] = field(repr=False)
    origin_limit: float
    curvature_estimate: float
    origin_curvature: Optional[float] = None

    def evaluate(self, x: Any, y: Any) -> Any:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        u = np.hypot(x, y)
        if np.any(u == 0):
            raise PreconditionError("H is not defined by the polar formula at the origin")
        v = np.arctan2(y, x)
        G = np.vectorize(lambda a, b: float(self.G(float(a), float(b))))(u, v)
        return (G - u**2) / u**4


def riemann_formula_patch(G: Callable[[Any, Any], Any], v: float = 0.0) -> RiemannFormula:
    """Polar expansion of a Riemannian Fermi metric du^2 + G dv^2 around a pole.

    The origin value H(0, 0) is the u^4 Taylor coefficient of G, and -3 H(0, 0)
    estimates the Gaussian curvature there.
    """
    t = Jet.variable(0.0, 4)
    series = G(t, v)
    if not is_jet(series):
        raise PreconditionError("riemann formula needs a jet-aware G")
    c = np.real(series.coeffs)
    if abs(c[0]) > 1e-12 or abs(c[1]) > 1e-12 or abs(c[2] - 1.0) > 1e-9:
        raise PreconditionError(
            "G must behave like u^2 at the pole", coefficients=[float(x) for x in c[:3]]
        )
    limit = float(c[4])
    estimate = -3.0 * limit
    origin_k = None
    try:
        origin_k = curvature_from_G(G, 0, 1, 1e-3, v)
    except PreconditionError:
        pass
    if origin_k is not None and abs(origin_k - estimate) > 1e-2 * max(1.0, abs(estimate)):
        logger.warning("Riemann formula estimate disagrees with curvature", estimate=estimate, K=origin_k)
    return RiemannFormula(G, limit, estimate, origin_k)
