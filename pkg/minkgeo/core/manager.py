"""Core manager for minkgeo - owns the named catalogs and runs grid jobs."""

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

import numpy as np
import structlog
from pydantic import BaseModel

from ..config.settings import Settings
from ..curves import (
    CurveKind,
    CurveModel,
    StandardCurve,
    cartan_apparatus,
    classify_curve,
    frame_sample,
    frenet_apparatus,
    helix_classify,
    standard_curve,
)
from ..splitcomplex import (
    SplitComplex,
    SplitFunction,
    bounded_entire_function,
    differentiate,
    integrate,
    pole_order,
    square_loop,
)
from ..surfaces import (
    REALIZATIONS,
    StandardSurface,
    SurfaceModel,
    parameter_grid,
    standard_surface,
    umbilic_surface_check,
)
from ..surfaces.forms import curvature_row, curvature_summary
from ..weierstrass import NamedSurface, WeierstrassData, weierstrass_data
from .errors import PreconditionError

logger = structlog.get_logger()

T = TypeVar("T")
R = TypeVar("R")


class CurveInvariants(BaseModel):
    """Summary of a curve's causal type, invariants and helix label."""
    name: str
    ambient: str
    kind: Optional[str] = None
    tangent_class: Optional[str] = None
    admissible: bool
    biregular: bool
    param: float
    kappa: Optional[float] = None
    tau: Optional[float] = None
    ctorsion: Optional[float] = None
    frame_residual: Optional[float] = None
    helix: bool = False
    helix_label: Optional[str] = None
    axis_class: Optional[str] = None
    standard: Optional[str] = None
    standard_params: Optional[Dict[str, float]] = None


def _cube(w: SplitComplex) -> SplitComplex:
    return w * w * w + 2.0 * w


def _split_exp(w: SplitComplex) -> SplitComplex:
    return w.exp()


def _inverse_square(w: SplitComplex) -> SplitComplex:
    return (w * w).inverse()


def _conjugate(w: SplitComplex) -> SplitComplex:
    return w.conj()


SPLIT_FUNCTIONS: Dict[str, Callable[[], SplitFunction]] = {
    "cubic": lambda: SplitFunction(_cube, name="cubic"),
    "exp": lambda: SplitFunction(_split_exp, name="exp"),
    "inverse-square": lambda: SplitFunction(
        _inverse_square, domain=((0.1, 5.0), (-0.05, 0.05)), name="inverse-square"
    ),
    "conjugate": lambda: SplitFunction(_conjugate, name="conjugate"),
    "bounded-entire": bounded_entire_function,
}


class GeometryManager:
    """Catalog owner and job runner for the command line and HTTP front ends."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.curves: Dict[str, CurveModel] = {}
        self.surfaces: Dict[str, SurfaceModel] = {}
        self.weierstrass: Dict[str, WeierstrassData] = {}
        self.split_functions: Dict[str, SplitFunction] = {}

    def initialize(self) -> None:
        """Build every catalog entry with its default parameters."""
        for kind in StandardCurve:
            try:
                curve = self._create_curve(kind.value, {})
                if curve is not None:
                    self.curves[kind.value] = curve
            except Exception as e:
                logger.error("Failed to build curve", curve=kind.value, error=str(e))

        surface_names = [k.value for k in StandardSurface if k is not StandardSurface.REALIZATION]
        surface_names += [f"realization:{key}" for key in REALIZATIONS]
        for name in surface_names:
            try:
                surface = self._create_surface(name, {})
                if surface is not None:
                    self.surfaces[name] = surface
            except Exception as e:
                logger.error("Failed to build surface", surface=name, error=str(e))

        for kind in NamedSurface:
            data = self._create_weierstrass(kind.value)
            if data is not None:
                self.weierstrass[kind.value] = data

        for name in SPLIT_FUNCTIONS:
            fn = self._create_split_function(name)
            if fn is not None:
                self.split_functions[name] = fn

        logger.info(
            "Initialized catalogs",
            curves=len(self.curves),
            surfaces=len(self.surfaces),
            weierstrass=len(self.weierstrass),
            split_functions=len(self.split_functions),
        )

    # ---------- factories ----------
    def _create_curve(self, name: str, params: Dict[str, Any]) -> Optional[CurveModel]:
        """Create a named curve; unknown names warn and give None."""
        if name not in {k.value for k in StandardCurve}:
            logger.warning("Unknown curve", curve=name)
            return None
        return standard_curve(name, **params)

    def _create_surface(self, name: str, params: Dict[str, Any]) -> Optional[SurfaceModel]:
        """Create a named surface or realization; unknown names warn and give None."""
        known = {k.value for k in StandardSurface} | {f"realization:{k}" for k in REALIZATIONS}
        if name not in known or name == StandardSurface.REALIZATION.value:
            logger.warning("Unknown surface", surface=name)
            return None
        return standard_surface(name, **params)

    def _create_weierstrass(self, name: str) -> Optional[WeierstrassData]:
        if name not in {k.value for k in NamedSurface}:
            logger.warning("Unknown Weierstrass surface", surface=name)
            return None
        return weierstrass_data(name)

    def _create_split_function(self, name: str) -> Optional[SplitFunction]:
        factory = SPLIT_FUNCTIONS.get(name)
        if factory is None:
            logger.warning("Unknown split-complex function", function=name)
            return None
        return factory()

    # ---------- lookups ----------
    def curve(self, name: str, **params: Any) -> CurveModel:
        """Catalog curve, rebuilt when parameters are given."""
        if not params and name in self.curves:
            return self.curves[name]
        curve = self._create_curve(name, params)
        if curve is None:
            raise PreconditionError(f"Unknown curve: {name}", known=sorted(k.value for k in StandardCurve))
        return curve

    def surface(self, name: str, **params: Any) -> SurfaceModel:
        if not params and name in self.surfaces:
            return self.surfaces[name]
        surface = self._create_surface(name, params)
        if surface is None:
            raise PreconditionError(f"Unknown surface: {name}", known=sorted(self.surfaces))
        return surface

    def weierstrass_surface(self, name: str) -> WeierstrassData:
        data = self.weierstrass.get(name) or self._create_weierstrass(name)
        if data is None:
            raise PreconditionError(
                f"Unknown Weierstrass surface: {name}", known=[k.value for k in NamedSurface]
            )
        return data

    def split_function(self, name: str) -> SplitFunction:
        fn = self.split_functions.get(name) or self._create_split_function(name)
        if fn is None:
            raise PreconditionError(f"Unknown split-complex function: {name}", known=sorted(SPLIT_FUNCTIONS))
        return fn

    # ---------- jobs ----------
    def run_grid(self, fn: Callable[[T], R], items: Iterable[T], jobs: Optional[int] = None) -> List[R]:
        """Map ``fn`` over ``items`` on a pool of ``jobs`` threads; results keep input order."""
        items = list(items)
        workers = max(1, jobs or self.settings.jobs)
        if workers == 1 or len(items) < 2:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))

    def curve_invariants(
        self,
        curve: CurveModel,
        at: float = 0.0,
        interval: Sequence[float] = (-1.0, 1.0),
        samples: int = 9,
    ) -> CurveInvariants:
        """Causal type, invariants at ``at`` and helix label over ``interval``."""
        tol = self.settings.tolerances
        info = classify_curve(curve, samples, tuple(interval), tol.causal)
        report = CurveInvariants(
            name=curve.name,
            ambient=curve.ambient.code,
            kind=None if info.kind is None else info.kind.value,
            tangent_class=None if info.constant_class is None else info.constant_class.value,
            admissible=info.admissible,
            biregular=info.biregular,
            param=float(at),
        )
        if info.kind is CurveKind.ADMISSIBLE:
            frenet = frenet_apparatus(curve, at)
            report.kappa, report.tau, report.frame_residual = frenet.kappa, frenet.tau, frenet.residual
        elif info.kind in (CurveKind.LIGHTLIKE, CurveKind.SEMI_LIGHTLIKE):
            cartan = cartan_apparatus(curve, at)
            report.ctorsion, report.frame_residual = cartan.pseudo_torsion, cartan.residual
        if info.kind is not None:
            helix = helix_classify(curve, samples, tuple(interval), tol.helix_ratio)
            report.helix = helix.is_helix
            report.helix_label = helix.family_label
            report.axis_class = None if helix.axis_class is None else helix.axis_class.value
            report.standard = None if helix.standard is None else helix.standard.value
            report.standard_params = helix.standard_params
        logger.info("Computed curve invariants", curve=curve.name, kind=report.kind)
        return report

    def sample_curve(
        self,
        curve: CurveModel,
        start: float,
        stop: float,
        step: float,
        kind: Optional[CurveKind] = None,
    ) -> List[Dict[str, float]]:
        """Sample records (point, trihedron, invariants) at start, start + step, ..., stop.

        ``kind`` defaults to the classification over [start, stop].
        """
        if step <= 0 or stop <= start:
            raise PreconditionError("sampling needs step > 0 and a nonempty range", range=[start, stop], step=step)
        if kind is None:
            kind = classify_curve(curve, 9, (start, stop), self.settings.tolerances.causal).kind
        ts = np.linspace(start, stop, int(round((stop - start) / step)) + 1)
        return self.run_grid(lambda t: frame_sample(curve, float(t), kind), ts)

    def split_analysis(
        self,
        fn: SplitFunction,
        at: Sequence[float],
        loop: Optional[float] = None,
        pole: bool = False,
    ) -> Dict[str, Any]:
        """Wirtinger derivatives at ``at`` and the integral around a square loop of side ``loop``.

        With ``pole`` the report holds the pole order at ``at`` instead; the
        order is local, so the function domain is not enforced there.
        """
        tol, integ = self.settings.tolerances, self.settings.integration
        w = SplitComplex(float(at[0]), float(at[1]))
        report: Dict[str, Any] = {
            "function": fn.name,
            "point": w.to_list(),
            "zero_divisor": bool(w.is_zero_divisor(tol.zero_divisor)),
        }
        if pole:
            local = SplitFunction(fn.fn, name=fn.name, black_box=fn.black_box)
            report["pole_order"] = pole_order(local, w)
        else:
            derivative = differentiate(fn, w, tol.split_holomorphic, integ.fd_step_split)
            report["derivative"] = derivative.to_dict()
            if loop is not None:
                if loop <= 0:
                    raise PreconditionError("loop side must be positive", side=loop)
                total = integrate(fn, square_loop(w, loop), integ.gauss_nodes)
                report["loop_integral"] = total.to_list()
        logger.info("Analyzed split-complex function", function=fn.name, point=report["point"], pole=pole)
        return report

    def surface_curvature(
        self, surface: SurfaceModel, nu: int, nv: int, jobs: Optional[int] = None
    ) -> Dict[str, Any]:
        """Curvature records over a grid plus their summary."""
        us, vs = parameter_grid(surface.domain, nu, nv, self.settings.grid.guard_band)
        rows_by_u = self.run_grid(
            lambda u: [curvature_row(surface, float(u), float(v)) for v in vs], us, jobs
        )
        rows = [row for chunk in rows_by_u for row in chunk]
        summary = curvature_summary(rows)
        if summary.get("degenerate"):
            logger.warning("Degenerate grid points", surface=surface.name, count=summary["degenerate"])
        return {"rows": rows, "summary": summary}

    def umbilic_report(self, surface: SurfaceModel) -> Optional[Dict[str, Any]]:
        """Totally-umbilic verdict and fitted model surface, or None on a degenerate patch."""
        try:
            return umbilic_surface_check(surface, tol=self.settings.tolerances.umbilic).to_dict()
        except PreconditionError as e:
            logger.info("No umbilic report", surface=surface.name, error=str(e))
            return None

    def catalog_status(self) -> Dict[str, Any]:
        """Names available in each catalog."""
        return {
            "curves": sorted(self.curves),
            "surfaces": sorted(self.surfaces),
            "weierstrass": sorted(self.weierstrass),
            "split_functions": sorted(self.split_functions),
            "jobs": self.settings.jobs,
        }
