"""Critical surfaces from Weierstrass data, with regularity masks and checks."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import structlog

from ..core.errors import DegeneratePoint, PoleError, PreconditionError
from ..core.integrate import GAUSS_NODES, gauss_legendre
from ..core.jets import Jet, is_jet
from ..splitcomplex.numbers import SplitComplex, split_series
from ..surfaces.base import SurfaceModel, parameter_grid
from ..surfaces.forms import curvatures
from .data import WeierstrassAmbient, WeierstrassData, WeierstrassKind

logger = structlog.get_logger()

GUARD_BAND = 1e-6


def _pole_hit(data: WeierstrassData, z: Any, guard: float) -> Optional[Tuple[float, float]]:
    """First declared pole within ``guard`` of the data-plane point(s) ``z``."""
    if data.ambient.split:
        zx, zy = np.asarray(z.re, dtype=float), np.asarray(z.im, dtype=float)
    else:
        zx, zy = np.real(z), np.imag(z)
    for pole in data.poles:
        px, py = pole.point
        if np.any(np.hypot(zx - px, zy - py) <= guard):
            return pole.point
    return None


def _segment_distance(a: np.ndarray, b: np.ndarray, p: np.ndarray) -> float:
    d = b - a
    t = 0.0 if not np.any(d) else float(np.clip(np.dot(p - a, d) / np.dot(d, d), 0.0, 1.0))
    return float(np.linalg.norm(a + t * d - p))


def _real_part(values: List[Any], split: bool) -> np.ndarray:
    parts = [np.asarray(v.re if split else np.real(v), dtype=float) for v in values]
    return np.stack(np.broadcast_arrays(*parts), axis=-1)


def _coefficients(x: Any, order: int) -> np.ndarray:
    """First ``order`` Taylor coefficients of a univariate jet or a constant."""
    out = np.zeros(order, dtype=complex)
    if is_jet(x):
        out[: min(order, x.order + 1)] = x.coeffs[:order]
    elif order > 0:
        out[0] = complex(x)
    return out


class GeneratedSurface(SurfaceModel):
    """x(u, v) = c + Re of the integral of the Weierstrass integrands from the basepoint.

    Values come from Gauss-Legendre quadrature along an axis-aligned path;
    derivative jets come from the integrands themselves.
    """

    def __init__(
        self,
        data: WeierstrassData,
        first: str = "x",
        guard_band: float = GUARD_BAND,
        name: Optional[str] = None,
        nodes: int = GAUSS_NODES,
    ) -> None:
        super().__init__(name or data.name, data.ambient.signature, data.domain)
        if first not in ("x", "y"):
            raise PreconditionError("path order must be 'x' or 'y'", first=first)
        self.data = data
        self.first = first
        self.guard_band = guard_band
        self.nodes = nodes
        self.offset = np.asarray(data.offset, dtype=float)
        self.params = data.describe()
        self.regularity: Optional["RegularityReport"] = None
        self.points: Optional[np.ndarray] = None

    # ---------- quadrature ----------
    def _segment(self, a: Tuple[float, float], b: Tuple[float, float]) -> np.ndarray:
        data, split = self.data, self.data.ambient.split
        if a == b:
            return np.zeros(3)
        if data.chart is None:
            for pole in data.poles:
                if _segment_distance(np.array(a), np.array(b), np.array(pole.point)) <= self.guard_band:
                    raise PoleError("integration path passes through a pole", pole=list(pole.point))
        dx, dy = b[0] - a[0], b[1] - a[1]
        step = SplitComplex(dx, dy) if split else complex(dx, dy)

        def integrand(t: np.ndarray) -> np.ndarray:
            zeta = data.point(a[0] + t * dx, a[1] + t * dy)
            z, _ = data.to_data_plane(zeta)
            hit = _pole_hit(data, z, self.guard_band)
            if hit is not None:
                raise PoleError("integration path passes through a pole", pole=list(hit))
            return _real_part([w * step for w in data.pulled_integrands(zeta)], split)

        return gauss_legendre(integrand, 0.0, 1.0, self.nodes)

    def primitive(self, u: float, v: float) -> np.ndarray:
        """Real part of the integral from the basepoint to (u, v), without the offset."""
        u0, v0 = self.data.basepoint
        corner = (u, v0) if self.first == "x" else (u0, v)
        return self._segment((u0, v0), corner) + self._segment(corner, (u, v))

    # ---------- SurfaceModel ----------
    def position(self, u: Any, v: Any) -> Any:
        if is_jet(u):
            return self._jet_position(u, v)
        U, V = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        if U.ndim == 0:
            return self.offset + self.primitive(float(U), float(V))
        flat = [self.offset + self.primitive(float(a), float(b)) for a, b in zip(U.ravel(), V.ravel())]
        return np.array(flat).reshape(U.shape + (3,))

    def _jet_position(self, U: Any, V: Any) -> Any:
        order = U.order
        u0, v0 = float(U.value), float(V.value)
        value = self.offset + self.primitive(u0, v0)
        if self.data.ambient.split:
            zeta = SplitComplex(Jet.variable(u0, order - 1), v0)
            omegas = [SplitComplex.coerce(w) for w in self.data.pulled_integrands(zeta)]
            re = np.stack([_coefficients(w.re, order).real for w in omegas], axis=-1)
            im = np.stack([_coefficients(w.im, order).real for w in omegas], axis=-1)
            series = [SplitComplex(value, np.zeros(3))]
            series += [SplitComplex(re[k] / (k + 1), im[k] / (k + 1)) for k in range(order)]
            return split_series(SplitComplex(U - u0, V - v0), series).re
        zeta = Jet.variable(complex(u0, v0), order - 1)
        omegas = self.data.pulled_integrands(zeta)
        coeffs = np.stack([_coefficients(w, order) for w in omegas], axis=-1)
        series = np.zeros((order + 1, 3), dtype=complex)
        series[0] = value
        for k in range(order):
            series[k + 1] = coeffs[k] / (k + 1)
        return (U + 1j * V).compose(series).real


# ---------- regularity ----------


@dataclass
class RegularityReport:
    us: np.ndarray
    vs: np.ndarray
    mask: np.ndarray
    lambda_sq: np.ndarray
    clauses: np.ndarray
    counts: Dict[str, int] = field(default_factory=dict)

    @property
    def regular_fraction(self) -> float:
        return float(np.mean(~self.mask))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shape": list(self.mask.shape),
            "masked": int(self.mask.sum()),
            "regular_fraction": self.regular_fraction,
            "clauses": self.counts,
        }


def tangent_vectors(data: WeierstrassData, u: float, v: float) -> Tuple[np.ndarray, np.ndarray]:
    """(x_u, x_v) read off the integrands: Re/-Im for complex data, Re/Im for split data."""
    omegas = data.pulled_integrands(data.point(u, v))
    if data.ambient.split:
        omegas = [SplitComplex.coerce(w) for w in omegas]
        xu = np.array([float(w.re) for w in omegas])
        xv = np.array([float(w.im) for w in omegas])
    else:
        values = np.array([complex(w) for w in omegas])
        xu, xv = values.real, -values.imag
    return xu, xv


def conformal_factor(data: WeierstrassData, u: float, v: float) -> float:
    """E = <x_u, x_u> from the closed factor formulas of each representation."""
    z, dz = data.to_data_plane(data.point(u, v))
    f, g = data.weierstrass_pair(z)
    if data.ambient.split:
        return float(-4.0 * f.norm_sq() * g.im**2)
    jac = abs(complex(dz)) ** 2
    f, g = complex(f), complex(g)
    sign = 1.0 if data.ambient is WeierstrassAmbient.R3 else -1.0
    return float(abs(f) ** 2 * (1.0 + sign * abs(g) ** 2) ** 2 * jac)


def null_residual(data: WeierstrassData, u: float, v: float) -> float:
    """|<Omega, Omega>| for the bilinear extension of the ambient product."""
    weights = data.ambient.signature.weights
    omegas = data.pulled_integrands(data.point(u, v))
    if data.ambient.split:
        total = SplitComplex(0.0, 0.0)
        for w, e in zip(omegas, weights):
            w = SplitComplex.coerce(w)
            total = total + (w * w) * float(e)
        return total.magnitude()
    return float(abs(sum(e * complex(w) ** 2 for w, e in zip(omegas, weights))))


def point_regularity(
    data: WeierstrassData, u: float, v: float, guard: float = GUARD_BAND, tol: float = 1e-9
) -> Tuple[List[str], float]:
    """Clauses that fail at (u, v) and the value of E there."""
    z, _ = data.to_data_plane(data.point(u, v))
    if _pole_hit(data, z, guard) is not None:
        return ["pole"], float("nan")
    clauses: List[str] = []
    f, g = data.weierstrass_pair(z)
    if data.ambient is WeierstrassAmbient.L3_SPACELIKE and abs(abs(complex(g)) - 1.0) <= guard:
        clauses.append("unit-circle")
    if data.ambient.split:
        if abs(float(g.im)) <= guard:
            clauses.append("g-real")
        if bool(f.is_zero_divisor(guard)):
            clauses.append("zero-divisor")
        elif f.magnitude() <= guard:
            clauses.append("f-zero")
    xu, xv = tangent_vectors(data, u, v)
    E = float(data.ambient.signature.weights @ (xu * xu))
    scale = 1.0 + float(np.abs(xu).max() + np.abs(xv).max()) ** 2
    if abs(E) <= tol * scale and not clauses:
        # E ~ |f|^2 (1 -+ |g|^2)^2, so a factor below sqrt(tol) explains a vanishing E
        near = float(np.sqrt(tol * scale))
        if data.ambient is WeierstrassAmbient.L3_SPACELIKE and abs(abs(complex(g)) - 1.0) <= near:
            clauses.append("unit-circle")
        if not data.ambient.split and abs(complex(f)) <= max(guard, near):
            clauses.append("F-zero" if data.kind is WeierstrassKind.TYPE_II else "f-zero")
        if not clauses:
            clauses.append("degenerate")
    return clauses, E


def regularity_check(
    data: WeierstrassData,
    nu: int = 21,
    nv: int = 21,
    guard_band: float = GUARD_BAND,
    tol: float = 1e-9,
) -> RegularityReport:
    """Mask grid points where the conformal factor vanishes, naming the clause that fired."""
    us, vs = parameter_grid(data.domain, nu, nv, guard_band)
    mask = np.zeros((nu, nv), dtype=bool)
    lam = np.full((nu, nv), np.nan)
    clauses = np.full((nu, nv), "", dtype=object)
    counts: Dict[str, int] = {}
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            fired, E = point_regularity(data, float(u), float(v), guard_band, tol)
            lam[i, j] = E
            if fired:
                mask[i, j] = True
                clauses[i, j] = ",".join(fired)
                for c in fired:
                    counts[c] = counts.get(c, 0) + 1
    logger.info("Regularity check", surface=data.name, masked=int(mask.sum()), clauses=counts)
    return RegularityReport(us, vs, mask, lam, clauses, counts)


def generate(
    data: WeierstrassData,
    nu: int = 21,
    nv: int = 21,
    first: str = "x",
    guard_band: float = GUARD_BAND,
    jobs: int = 1,
    nodes: int = GAUSS_NODES,
) -> GeneratedSurface:
    """Build the surface and sample it on a grid; masked samples are NaN."""
    surface = GeneratedSurface(data, first, guard_band, nodes=nodes)
    report = regularity_check(data, nu, nv, guard_band)
    for i, u in enumerate(report.us):
        for j, v in enumerate(report.vs):
            if report.clauses[i, j] == "pole":
                raise PoleError("grid point on a declared pole", u=float(u), v=float(v))

    def row(i: int) -> np.ndarray:
        out = np.full((len(report.vs), 3), np.nan)
        for j, v in enumerate(report.vs):
            if not report.mask[i, j]:
                out[j] = surface.position(float(report.us[i]), float(v))
        return out

    # rows are independent; map keeps them in order
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, range(len(report.us))))
    else:
        rows = [row(i) for i in range(len(report.us))]
    surface.points = np.stack(rows)
    surface.regularity = report
    logger.info("Generated critical surface", surface=data.name, grid=[nu, nv])
    return surface


@dataclass
class CriticalityReport:
    samples: int
    max_mean_curvature: float
    max_null_residual: float
    max_conformal_mismatch: float
    max_isothermal_defect: float

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def verify_critical(surface: GeneratedSurface, stride: int = 1) -> CriticalityReport:
    """Null derivative, conformal factor, isothermality and H = 0 at unmasked samples."""
    report = surface.regularity
    if report is None:
        raise PreconditionError("surface has no sampled grid; call generate first")
    data = surface.data
    sign = -1.0 if data.ambient.split else 1.0
    worst_h = worst_null = worst_lam = worst_iso = 0.0
    n = 0
    for i in range(0, len(report.us), stride):
        for j in range(0, len(report.vs), stride):
            if report.mask[i, j]:
                continue
            u, v = float(report.us[i]), float(report.vs[j])
            xu, xv = tangent_vectors(data, u, v)
            weights = data.ambient.signature.weights
            E, F, G = (float(weights @ (a * b)) for a, b in ((xu, xu), (xu, xv), (xv, xv)))
            lam = conformal_factor(data, u, v)
            scale = 1.0 + abs(E)
            worst_iso = max(worst_iso, (abs(E - sign * G) + abs(F)) / scale)
            worst_lam = max(worst_lam, abs(lam - E) / scale)
            worst_null = max(worst_null, null_residual(data, u, v) / scale)
            try:
                worst_h = max(worst_h, abs(curvatures(surface, u, v).H))
            except DegeneratePoint:
                continue
            n += 1
    return CriticalityReport(n, worst_h, worst_null, worst_lam, worst_iso)


def typeII_gaussian_curvature(F: Any, ambient: WeierstrassAmbient, z: complex) -> float:
    """K = (-1)^(nu+1) 4 / (|F(z)|^2 ((-1)^nu + |z|^2)^4) for spacelike type II data."""
    if ambient.split:
        raise PreconditionError("closed curvature formula covers spacelike data only")
    nu = ambient.nu
    z = complex(z)
    value = abs(complex(F(z))) ** 2
    base = (-1.0) ** nu + abs(z) ** 2
    if value == 0.0 or abs(base) <= 1e-12:
        raise DegeneratePoint("irregular point of the type II parametrization", z=[z.real, z.imag])
    return float((-1.0) ** (nu + 1) * 4.0 / (value * base**4))

