"""Command-line front end: classification, curves, surfaces and split-complex functions.

Reports go to stdout as deterministic JSON; logs go to stderr. Exit codes:
0 success, 2 usage or parse error, 3 domain precondition, 4 numerical failure.

``--format`` chooses what ``-o`` receives: ``csv`` sample tables (the
default for curves), ``obj`` meshes (the default for surfaces) or ``json``,
the report itself.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np
import structlog
from pydantic import ValidationError

from ..adapters.export import dumps_json, write_csv, write_json, write_obj
from ..config.settings import RunConfig, Settings
from ..core.errors import GeometryError, PreconditionError
from ..core.lorentz import Signature, causal_character, causal_relations
from ..core.manager import GeometryManager
from ..core.transforms import classify_transform
from ..curves import (
    SAMPLE_COLUMNS,
    CurveKind,
    ReconstructionKind,
    ReconstructionSpec,
    cartan_apparatus,
    canonical_frame,
    classify_curve,
    frenet_apparatus,
    reconstruct_curve,
    result_rows,
)
from ..curves.reconstruct import pointwise_deviation
from ..logging import configure_logging
from ..surfaces import (
    RevolutionKind,
    b_scroll,
    constant_curvature_profile,
    fermi_chart,
    metric_from_surface,
    parameter_grid,
    revolution_ode_residual,
    revolution_surface,
    verify_b_scroll,
)
from ..surfaces.forms import CSV_COLUMNS
from ..surfaces.gallery import EXPECTED_CURVATURES, StandardSurface
from ..weierstrass import (
    NamedSurface,
    data_from_definition,
    gallery_manifest,
    generate,
    named_surface,
    oracle_deviation,
    verify_critical,
)

logger = structlog.get_logger()

# parameters of catalog curves and surfaces that have their own flags
PARAM_FLAGS = ("r", "a", "b", "c", "radius", "height")

USAGE_EXIT = 2


class UsageError(Exception):
    """Malformed command-line input."""


# ---------- parsing helpers ----------


def parse_floats(text: str, count: Optional[int] = None) -> List[float]:
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError as e:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from e
    if count is not None and len(values) != count:
        raise UsageError(f"expected {count} numbers, got {text!r}")
    return values


def parse_grid(text: str) -> Tuple[int, int]:
    try:
        nu, nv = (int(x) for x in text.lower().split("x"))
    except ValueError as e:
        raise UsageError(f"grid must look like 64x64, got {text!r}") from e
    return nu, nv


def parse_profile(text: str) -> Any:
    """``const:X`` or ``linear:A,B`` (A + B t)."""
    kind, _, rest = text.partition(":")
    if kind == "const":
        return parse_floats(rest, 1)[0]
    if kind == "linear":
        a, b = parse_floats(rest, 2)
        return lambda t: a + b * t
    raise UsageError(f"profile must be const:X or linear:A,B, got {text!r}")


def parse_params(args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for flag in PARAM_FLAGS:
        value = getattr(args, flag, None)
        if value is not None:
            params[flag] = value
    for item in getattr(args, "param", None) or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from e


def parse_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{what} is not valid JSON: {e}") from e


def parse_signature(text: Any) -> Signature:
    if not isinstance(text, str):
        raise UsageError(f"signature must be a string like '3,1', got {text!r}")
    try:
        return Signature.parse(text)
    except PreconditionError as e:
        raise UsageError(str(e)) from e


def as_array(value: Any, what: str, ndim: int) -> np.ndarray:
    """``value`` as a float array of rank ``ndim``; ragged or non-numeric input is a usage error."""
    try:
        array = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise UsageError(f"{what} must be a rectangular array of numbers") from e
    if array.ndim != ndim:
        raise UsageError(f"{what} must have rank {ndim}, got shape {list(array.shape)}")
    return array


def _given(value: Any, default: Any) -> Any:
    return default if value is None else value


def run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    grid = parse_grid(args.grid) if getattr(args, "grid", None) else (settings.grid.nu, settings.grid.nv)
    return RunConfig(
        command=f"{args.command} {getattr(args, 'action', '')}".strip(),
        step=_given(getattr(args, "step", None), settings.integration.step),
        tol=_given(getattr(args, "tol", None), settings.tolerances.causal),
        grid=grid,
        output=getattr(args, "output", None),
        format=getattr(args, "format", None),
        jobs=_given(args.jobs, settings.jobs),
        params=parse_params(args),
    )


# ---------- classify ----------


def cmd_classify(args: argparse.Namespace, geo: GeometryManager, config: RunConfig) -> Dict[str, Any]:
    payload: Any = load_json(args.file) if getattr(args, "file", None) else {}
    if isinstance(payload, list):
        payload = {"coords" if args.action == "vector" else "matrix": payload}
    if not isinstance(payload, dict):
        raise UsageError("--file must hold a JSON object or array")
    sig_text = args.sig or payload.get("sig")
    if args.action == "vector":
        coords = parse_floats(args.coords) if args.coords else payload.get("coords")
        if coords is None:
            raise UsageError("classify vector needs --coords or --file")
        v = as_array(coords, "coords", 1)
        sig = parse_signature(sig_text or f"{len(v)},1")
        report = causal_character(v, sig, config.tol)
        return {"signature": sig.code, **report.__dict__}
    if args.action == "transform":
        matrix = parse_json(args.matrix, "--matrix") if args.matrix else payload.get("matrix")
        if matrix is None:
            raise UsageError("classify transform needs --matrix or --file")
        L = as_array(matrix, "matrix", 2)
        sig = parse_signature(sig_text or f"{L.shape[0]},1")
        return classify_transform(L, sig, config.tol).model_dump()
    p = parse_floats(args.p) if args.p else payload.get("p")
    q = parse_floats(args.q) if args.q else payload.get("q")
    if p is None or q is None:
        raise UsageError("classify relation needs --p and --q")
    pv, qv = as_array(p, "p", 1), as_array(q, "q", 1)
    sig = parse_signature(sig_text or f"{len(pv)},1")
    return causal_relations(pv, qv, sig).__dict__


# ---------- curve ----------


def _initial_frame(curve: Any, t0: float) -> Tuple[np.ndarray, np.ndarray, str, Dict[str, float]]:
    """Point, frame rows (T, N, B), reconstruction kind and invariants of ``curve`` at t0."""
    info = classify_curve(curve, 9, (t0, t0 + 1.0))
    point = np.real(np.asarray(curve.position(t0), dtype=float))
    if info.kind is CurveKind.ADMISSIBLE:
        frenet = frenet_apparatus(curve, t0)
        frame = np.vstack([frenet.T, frenet.N, frenet.B])
        return point, frame, ReconstructionKind.ADMISSIBLE.value, {"kappa": frenet.kappa, "tau": frenet.tau}
    if info.kind in (CurveKind.LIGHTLIKE, CurveKind.SEMI_LIGHTLIKE):
        cartan = cartan_apparatus(curve, t0, strict=True)
        frame = np.real(np.vstack([cartan.T, cartan.N, cartan.B]))
        return point, frame, info.kind.value, {"ctorsion": cartan.pseudo_torsion}
    raise PreconditionError("curve has no Frenet or Cartan frame", curve=curve.name)


def _write_samples(rows: List[Dict[str, float]], config: RunConfig) -> None:
    if not config.output or config.format == "json":
        return
    write_csv(rows, SAMPLE_COLUMNS, config.output)


def cmd_curve(args: argparse.Namespace, geo: GeometryManager, config: RunConfig) -> Dict[str, Any]:
    if config.format == "obj":
        raise UsageError("curves have no mesh output; use --format csv or json")
    start, stop = parse_floats(args.range, 2)
    if args.action == "named":
        curve = geo.curve(args.name, **config.params)
        report = geo.curve_invariants(curve, args.at if args.at is not None else start, (start, stop))
        kind = None if report.kind is None else CurveKind(report.kind)
        rows = geo.sample_curve(curve, start, stop, config.step, kind)
        _write_samples(rows, config)
        out = report.model_dump()
        out["samples"] = len(rows)
        return out

    ambient = parse_signature(args.ambient)
    deviation_target = None
    if args.compare:
        target = geo.curve(args.compare, **config.params)
        point, frame, kind, invariants = _initial_frame(target, start)
        deviation_target = target
        logger.info("Seeded reconstruction from catalog curve", curve=target.name, **invariants)
    else:
        if args.kind is None:
            raise UsageError("curve reconstruct needs --kind or --compare")
        kind = ReconstructionKind(args.kind).value
        point = np.asarray(parse_floats(args.point, 3))
        frame = (
            as_array(load_json(args.frame), "frame", 2) if args.frame else canonical_frame(ReconstructionKind(kind))
        )
    spec = ReconstructionSpec(
        kind=ReconstructionKind(args.kind or kind),
        initial_point=point,
        initial_frame=frame,
        param_range=(start, stop),
        step=config.step,
        kappa=parse_profile(args.kappa),
        tau=parse_profile(args.tau),
        ctorsion=parse_profile(args.ctorsion),
        ambient=ambient,
    )
    result = reconstruct_curve(spec)
    rows = result_rows(spec, result)
    _write_samples(rows, config)
    out: Dict[str, Any] = {
        "kind": spec.kind.value,
        "ambient": ambient.code,
        "steps": len(rows) - 1,
        "drift": result.drift,
        "eps": result.eps,
        "eta": result.eta,
        "final_point": result.points[-1].tolist(),
    }
    if deviation_target is not None:
        reference = np.real(np.asarray(deviation_target.sample(result.params), dtype=float))
        out["compare"] = deviation_target.name
        out["deviation"] = pointwise_deviation(result.points, reference)
    return out


# ---------- surface ----------


def _write_mesh(points: np.ndarray, name: str, config: RunConfig) -> Dict[str, int]:
    if not config.output or config.format in ("csv", "json"):
        return {}
    return write_obj(points, config.output, name)


def _table_target(args: argparse.Namespace, config: RunConfig) -> Optional[str]:
    """Where a sample table goes: ``--csv``, or ``-o`` under ``--format csv``."""
    if getattr(args, "csv", None):
        return args.csv
    return config.output if config.format == "csv" else None


def _curvature_rows(
    geo: GeometryManager, surface: Any, config: RunConfig, args: argparse.Namespace
) -> Dict[str, Any]:
    field = geo.surface_curvature(surface, *config.grid, jobs=config.jobs)
    target = _table_target(args, config)
    if target:
        write_csv(field["rows"], CSV_COLUMNS, target)
    return field


def _surface_named(args: argparse.Namespace, geo: GeometryManager, config: RunConfig) -> Dict[str, Any]:
    surface = geo.surface(args.name, **config.params)
    us, vs = parameter_grid(surface.domain, *config.grid, geo.settings.grid.guard_band)
    mesh = _write_mesh(surface.sample(us, vs), surface.name, config)
    field = _curvature_rows(geo, surface, config, args)
    out: Dict[str, Any] = {
        "surface": surface.name,
        "summary": field["summary"],
        "umbilic": geo.umbilic_report(surface),
        "mesh": mesh,
    }
    try:
        expected = EXPECTED_CURVATURES.get(StandardSurface(args.name))
    except ValueError:
        expected = None
    if expected is not None and not config.params:
        H = np.array([r["H"] for r in field["rows"]], dtype=float)
        K = np.array([r["K"] for r in field["rows"]], dtype=float)
        out["expected"] = expected
        out["K_error"] = float(np.nanmax(np.abs(K - expected["K"])))
        out["H_error"] = float(np.nanmax(np.abs(H - expected["H"])))
    return out


def _surface_weierstrass(args: argparse.Namespace, geo: GeometryManager, config: RunConfig) -> Dict[str, Any]:
    if args.manifest:
        return {"gallery": gallery_manifest()}
    if config.format == "csv":
        raise UsageError("surface weierstrass has no sample table; use --format obj or json")
    if args.data:
        definition = load_json(args.data)
        if not isinstance(definition, dict):
            raise UsageError("--data must hold a JSON object")
        try:
            data = data_from_definition(definition)
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"malformed Weierstrass definition: {e}") from e
    elif args.name:
        data = geo.weierstrass_surface(args.name)
    else:
        raise UsageError("surface weierstrass needs --data, --name or --manifest")
    nu, nv = config.grid
    surface = generate(
        data,
        nu,
        nv,
        first=args.first,
        guard_band=geo.settings.grid.guard_band,
        jobs=config.jobs,
        nodes=geo.settings.integration.gauss_nodes,
    )
    mesh = _write_mesh(surface.points, data.name, config)
    report = surface.regularity
    out: Dict[str, Any] = {
        "surface": data.name,
        "data": data.describe(),
        "regularity": report.to_dict() if report is not None else None,
        "critical": verify_critical(surface, stride=max(1, args.stride)).to_dict(),
        "mesh": mesh,
    }
    if data.name in {k.value for k in NamedSurface} and report is not None:
        closed, _ = named_surface(data.name)
        out["oracle"] = oracle_deviation(surface.points, closed, report.us, report.vs)
    return out


def _surface_bscroll(args: argparse.Namespace, geo: GeometryManager, config: RunConfig) -> Dict[str, Any]:
    alpha = geo.curve(args.curve, **config.params)
    t_range = tuple(parse_floats(args.trange, 2))
    phi_range = tuple(parse_floats(args.range, 2))
    scroll = b_scroll(alpha, t_range)
    scroll.domain = (phi_range, t_range)
    nu, nv = config.grid
    phis, ts = parameter_grid(scroll.domain, nu, nv, geo.settings.grid.guard_band)
    mesh = _write_mesh(scroll.sample(phis, ts), scroll.name, config)
    verification = verify_b_scroll(scroll, phis, ts)
    target = _table_target(args, config)
    if target:
        rows = [s.__dict__ for s in verification.samples]
        write_csv(rows, ("phi", "t", "K", "H", "K_expected", "H_expected", "diagonalizable", "expected_defective"), target)
    return {"surface": scroll.name, "verification": verification.to_dict(), "mesh": mesh}


def _surface_revolution(args: argparse.Namespace, geo: GeometryManager, config: RunConfig) -> Dict[str, Any]:
    ambient = parse_signature(args.ambient)
    kind = RevolutionKind(args.kind)
    profile = constant_curvature_profile(args.K, args.eps, kind, ambient)
    surface = revolution_surface(profile.curve, kind)
    us, vs = parameter_grid(surface.domain, *config.grid, geo.settings.grid.guard_band)
    mesh = _write_mesh(surface.sample(us, vs), surface.name, config)
    field = _curvature_rows(geo, surface, config, args)
    K = np.array([r["K"] for r in field["rows"]], dtype=float)
    return {
        "surface": surface.name,
        "profile_interval": list(profile.interval),
        "summary": field["summary"],
        "K_residual": float(np.nanmax(np.abs(K - args.K))),
        "ode_residual": revolution_ode_residual(profile.curve, args.K, args.eps, kind, us),
        "mesh": mesh,
    }


def _surface_fermi(args: argparse.Namespace, geo: GeometryManager, config: RunConfig) -> Dict[str, Any]:
    surface = geo.surface(args.name, **config.params)
    patch = metric_from_surface(surface)
    start = tuple(parse_floats(args.start, 2))
    direction = tuple(parse_floats(args.direction, 2))
    nu, nv = config.grid
    chart = fermi_chart(patch, start, direction, args.width, args.length, nu, nv)
    target = _table_target(args, config)
    if target:
        rows = [
            {"u": float(u), "v": float(v), "E": float(chart.E[i, j]), "F": float(chart.F[i, j]), "G": float(chart.G[i, j])}
            for i, u in enumerate(chart.us)
            for j, v in enumerate(chart.vs)
        ]
        write_csv(rows, ("u", "v", "E", "F", "G"), target)
    return {
        "surface": surface.name,
        "eps_gamma": chart.eps_gamma,
        "index": chart.nu,
        "diagnostics": chart.diagnostics,
        "G_range": [float(np.min(chart.G)), float(np.max(chart.G))],
    }


SURFACE_ACTIONS: Dict[str, Callable[[argparse.Namespace, GeometryManager, RunConfig], Dict[str, Any]]] = {
    "named": _surface_named,
    "weierstrass": _surface_weierstrass,
    "bscroll": _surface_bscroll,
    "revolution": _surface_revolution,
    "fermi": _surface_fermi,
}


def cmd_surface(args: argparse.Namespace, geo: GeometryManager, config: RunConfig) -> Dict[str, Any]:
    return SURFACE_ACTIONS[args.action](args, geo, config)


# ---------- split ----------


def cmd_split(args: argparse.Namespace, geo: GeometryManager, config: RunConfig) -> Dict[str, Any]:
    fn = geo.split_function(args.name)
    return geo.split_analysis(fn, parse_floats(args.at, 2), args.loop, args.pole)


COMMANDS = {"classify": cmd_classify, "curve": cmd_curve, "surface": cmd_surface, "split": cmd_split}


# ---------- parser ----------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None, help="zero tolerance")
    p.add_argument("--report", default=None, help="also write the JSON report to this path")
    p.add_argument("--format", default=None, help="what -o receives: csv, json or obj")


def _params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--radius", type=float)
    p.add_argument("--height", type=float)
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="extra catalog parameter")


def _grid(p: argparse.ArgumentParser, output_help: str) -> None:
    p.add_argument("--grid", default=None, help="samples per direction, e.g. 64x64")
    p.add_argument("-o", "--output", default=None, help=output_help)
    p.add_argument("--csv", default=None, help="curvature or sample table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minkgeo", description=__doc__.splitlines()[0])
    parser.add_argument("--jobs", type=int, default=None, help="worker pool size (default MINKGEO_JOBS)")
    parser.add_argument("--config", default=None, help="numeric configuration file")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", help="causal classification queries")
    cls_sub = classify.add_subparsers(dest="action", required=True)
    for action in ("vector", "transform", "relation"):
        p = cls_sub.add_parser(action)
        _common(p)
        p.add_argument("--sig", default=None, help="signature n,nu")
        p.add_argument("--file", default=None, help="JSON input")
        if action == "vector":
            p.add_argument("--coords", default=None)
        elif action == "transform":
            p.add_argument("--matrix", default=None, help="inline JSON matrix")
        else:
            p.add_argument("--p", default=None)
            p.add_argument("--q", default=None)

    curve = sub.add_parser("curve", help="curve invariants and reconstruction")
    curve_sub = curve.add_subparsers(dest="action", required=True)
    named = curve_sub.add_parser("named")
    named.add_argument("name")
    named.add_argument("--at", type=float, default=None, help="parameter of the invariants")
    recon = curve_sub.add_parser("reconstruct")
    recon.add_argument("--kind", choices=[k.value for k in ReconstructionKind], default=None)
    recon.add_argument("--kappa", default="const:1")
    recon.add_argument("--tau", default="const:0")
    recon.add_argument("--ctorsion", default="const:0")
    recon.add_argument("--ambient", default="3,1")
    recon.add_argument("--point", default="0,0,0")
    recon.add_argument("--frame", default=None, help="JSON file with the rows T, N, B")
    recon.add_argument("--compare", default=None, help="catalog curve giving initial data and the reference")
    for p in (named, recon):
        _common(p)
        _params(p)
        p.add_argument("--range", default="0,1")
        p.add_argument("--step", type=float, default=None)
        p.add_argument("-o", "--output", default=None, help="CSV samples")

    surface = sub.add_parser("surface", help="surface reports and meshes")
    surf_sub = surface.add_subparsers(dest="action", required=True)
    s_named = surf_sub.add_parser("named")
    s_named.add_argument("name")
    s_weier = surf_sub.add_parser("weierstrass")
    s_weier.add_argument("--data", default=None, help="JSON definition file")
    s_weier.add_argument("--name", default=None, choices=[k.value for k in NamedSurface])
    s_weier.add_argument("--manifest", action="store_true", help="print the gallery manifest")
    s_weier.add_argument("--first", choices=("x", "y"), default="x", help="leg order of the integration path")
    s_weier.add_argument("--stride", type=int, default=1, help="verify every stride-th sample")
    s_scroll = surf_sub.add_parser("bscroll")
    s_scroll.add_argument("--curve", default="gamma2")
    s_scroll.add_argument("--trange", default="-1,1")
    s_scroll.add_argument("--range", default="-1,1")
    s_rev = surf_sub.add_parser("revolution")
    s_rev.add_argument("--K", type=float, required=True)
    s_rev.add_argument("--eps", type=int, choices=(-1, 1), required=True)
    s_rev.add_argument("--kind", choices=[k.value for k in RevolutionKind], default=RevolutionKind.ELLIPTIC_Z.value)
    s_rev.add_argument("--ambient", default="3,1")
    s_fermi = surf_sub.add_parser("fermi")
    s_fermi.add_argument("name")
    s_fermi.add_argument("--start", default="0,0")
    s_fermi.add_argument("--direction", default="0,1")
    s_fermi.add_argument("--width", type=float, default=0.5)
    s_fermi.add_argument("--length", type=float, default=1.0)
    for p in (s_named, s_weier, s_scroll, s_rev, s_fermi):
        _common(p)
        _params(p)
        _grid(p, "OBJ mesh")

    split = sub.add_parser("split", help="derivatives, loop integrals and poles of split-complex functions")
    split.add_argument("name")
    split.add_argument("--at", default="0.5,0.25", help="point x,y")
    split.add_argument("--loop", type=float, default=None, help="side of a square loop starting at the point")
    split.add_argument("--pole", action="store_true", help="report the pole order at the point instead")
    _common(split)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout: TextIO = sys.stdout) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    settings = Settings()
    if args.config:
        settings.config_path = args.config
    configure_logging(args.log_level or settings.log_level, settings.log_json)

    try:
        if Path(settings.config_path).exists():
            settings.load_config()
        config = run_config(args, settings)
        geo = GeometryManager(settings)
        geo.initialize()
        report = COMMANDS[args.command](args, geo, config)
    except (UsageError, ValidationError) as e:
        logger.error("Invalid arguments", command=args.command, error=str(e))
        print(f"minkgeo: error: {e}", file=sys.stderr)
        return USAGE_EXIT
    except GeometryError as e:
        logger.error("Command failed", command=args.command, **e.to_dict())
        print(f"minkgeo: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code

    if args.report:
        write_json(report, args.report)
    if config.output and config.format == "json":
        write_json(report, config.output)
    stdout.write(dumps_json(report) + "\n")
    logger.info("Command finished", command=args.command, action=getattr(args, "action", None))
    return 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
