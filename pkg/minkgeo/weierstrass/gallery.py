"""Named critical surfaces paired with their Weierstrass data."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, List, Tuple

import numpy as np
import structlog

from ..core.errors import PreconditionError
from ..core.jets import cos, cosh, exp, log, sin, sinh, vector
from ..splitcomplex.numbers import H, SplitComplex
from ..surfaces.base import ClosedFormSurface
from .data import Pole, WeierstrassAmbient, WeierstrassData, WeierstrassKind

logger = structlog.get_logger()


class NamedSurface(str, Enum):
    ENNEPER_R3 = "EnneperR3"
    ENNEPER_L3_SPACELIKE = "EnneperL3Spacelike"
    CATALAN_R3 = "CatalanR3"
    CATENOID_L3_SPACELIKE = "CatenoidL3Spacelike"
    HENNEBERG_R3 = "HennebergR3"
    ENNEPER_L3_TIMELIKE = "EnneperL3Timelike"
    CATENOID_L3_TIMELIKE = "CatenoidL3Timelike"


def _enneper_r3(u: Any, v: Any) -> Any:
    return vector(u - u**3 / 3 + u * v * v, -v + v**3 / 3 - u * u * v, u * u - v * v)


def _enneper_l3_spacelike(u: Any, v: Any) -> Any:
    return vector(u + u**3 / 3 - u * v * v, -v - v**3 / 3 + u * u * v, v * v - u * u)


def _catalan(u: Any, v: Any) -> Any:
    return vector(
        u - sin(u) * cosh(v),
        1 - cos(u) * cosh(v),
        -4 * sin(u / 2) * sinh(v / 2),
    )


def _catenoid_l3_spacelike(u: Any, v: Any) -> Any:
    r2 = u * u + v * v
    return vector(u - u / r2, v - v / r2, -log(r2))


def _henneberg(u: Any, v: Any) -> Any:
    return vector(
        2 * sinh(u) * cos(v) - (2.0 / 3.0) * sinh(3 * u) * cos(3 * v),
        2 * sinh(u) * sin(v) + (2.0 / 3.0) * sinh(3 * u) * sin(3 * v),
        2 * cosh(2 * u) * cos(2 * v),
    )


def _enneper_l3_timelike(u: Any, v: Any) -> Any:
    return vector(v - u * u * v - v**3 / 3, 2 * u * v, v + u * u * v + v**3 / 3)


def _catenoid_l3_timelike(u: Any, v: Any) -> Any:
    d = u * u - v * v
    return vector(-u / d - u, log(d), -u / d + u)


def _one(z: Any) -> Any:
    return 1.0 + 0.0 * z


def _identity(z: Any) -> Any:
    return z


def _catalan_F(z: Any) -> Any:
    return 1j * (1 / z - 1 / z**3)


def _catalan_chart(s: Any) -> Any:
    return -exp(-0.5j * s)


def _inverse_square(z: Any) -> Any:
    return 1 / (z * z)


def _henneberg_F(z: Any) -> Any:
    return 1 - 1 / z**4


def _henneberg_chart(s: Any) -> Any:
    return -exp(-s)


def _split_unit(w: SplitComplex) -> SplitComplex:
    return H + 0.0 * w


@dataclass(frozen=True)
class _Entry:
    closed_form: Callable[[Any, Any], Any]
    kind: WeierstrassKind
    ambient: WeierstrassAmbient
    functions: Dict[str, Callable[[Any], Any]]
    formula: str
    basepoint: Tuple[float, float]
    domain: Tuple[Tuple[float, float], Tuple[float, float]]
    mask: str
    poles: Tuple[Pole, ...] = ()
    chart: Any = None
    chart_formula: str = ""


_ENTRIES: Dict[NamedSurface, _Entry] = {
    NamedSurface.ENNEPER_R3: _Entry(
        _enneper_r3, WeierstrassKind.TYPE_I, WeierstrassAmbient.R3,
        {"f": _one, "g": _identity}, "f = 1, g = z",
        (0.0, 0.0), ((-1.5, 1.5), (-1.5, 1.5)), "none",
    ),
    NamedSurface.ENNEPER_L3_SPACELIKE: _Entry(
        _enneper_l3_spacelike, WeierstrassKind.TYPE_I, WeierstrassAmbient.L3_SPACELIKE,
        {"f": _one, "g": _identity}, "f = 1, g = z",
        (0.0, 0.0), ((-1.2, 1.2), (-1.2, 1.2)), "unit circle |z| = 1",
    ),
    NamedSurface.CATALAN_R3: _Entry(
        _catalan, WeierstrassKind.TYPE_II, WeierstrassAmbient.R3,
        {"F": _catalan_F}, "F = i (1/z - 1/z^3)",
        (3.0, 0.0), ((0.5, 5.5), (-1.0, 1.0)), "F = 0 at u = 0 mod 2 pi, v = 0 (outside the domain)",
        (Pole((0.0, 0.0), 3),), _catalan_chart, "z = -exp(-i zeta / 2)",
    ),
    NamedSurface.CATENOID_L3_SPACELIKE: _Entry(
        _catenoid_l3_spacelike, WeierstrassKind.TYPE_II, WeierstrassAmbient.L3_SPACELIKE,
        {"F": _inverse_square}, "F = 1/z^2",
        (1.5, 0.0), ((0.3, 1.8), (-0.8, 0.8)), "unit circle |z| = 1",
        (Pole((0.0, 0.0), 2),),
    ),
    NamedSurface.HENNEBERG_R3: _Entry(
        _henneberg, WeierstrassKind.TYPE_II, WeierstrassAmbient.R3,
        {"F": _henneberg_F}, "F = 1 - 1/z^4",
        (0.6, 0.0), ((0.2, 1.0), (-1.2, 1.2)), "F = 0 on u = 0 (outside the domain)",
        (Pole((0.0, 0.0), 4),), _henneberg_chart, "z = -exp(-zeta)",
    ),
    NamedSurface.ENNEPER_L3_TIMELIKE: _Entry(
        _enneper_l3_timelike, WeierstrassKind.TYPE_II, WeierstrassAmbient.L3_TIMELIKE,
        {"F": _split_unit}, "F = h",
        (0.0, 0.0), ((-1.0, 1.0), (-1.0, 1.0)), "real axis v = 0",
    ),
    NamedSurface.CATENOID_L3_TIMELIKE: _Entry(
        _catenoid_l3_timelike, WeierstrassKind.TYPE_II, WeierstrassAmbient.L3_TIMELIKE,
        {"F": _inverse_square}, "F = 1/w^2",
        (1.5, 0.2), ((1.0, 2.0), (-0.5, 0.5)), "real axis v = 0",
        (Pole((0.0, 0.0), 2),),
    ),
}


def _lookup(kind: str) -> Tuple[NamedSurface, _Entry]:
    try:
        key = NamedSurface(kind)
    except ValueError as e:
        raise PreconditionError(
            f"Unknown named surface: {kind}", known=[k.value for k in NamedSurface]
        ) from e
    return key, _ENTRIES[key]


def weierstrass_data(kind: str) -> WeierstrassData:
    """Generating data of a named surface, its offset pinned to the closed form at the basepoint."""
    key, entry = _lookup(kind)
    offset = np.real(np.asarray(entry.closed_form(*entry.basepoint), dtype=float))
    return WeierstrassData(
        kind=entry.kind,
        ambient=entry.ambient,
        basepoint=entry.basepoint,
        domain=entry.domain,
        poles=list(entry.poles),
        chart=entry.chart,
        offset=tuple(offset),
        name=key.value,
        **entry.functions,
    )


def named_surface(kind: str) -> Tuple[ClosedFormSurface, WeierstrassData]:
    """Closed-form parametrization of a named critical surface and its data."""
    key, entry = _lookup(kind)
    surface = ClosedFormSurface(
        key.value,
        entry.closed_form,
        entry.ambient.signature,
        entry.domain,
        {"data": entry.formula, "chart": entry.chart_formula or None},
    )
    return surface, weierstrass_data(kind)


def gallery_manifest() -> List[Dict[str, Any]]:
    """One record per named surface: data, chart, domain and masked locus."""
    out = []
    for key, entry in _ENTRIES.items():
        record = weierstrass_data(key.value).describe()
        record.update(
            data=entry.formula,
            chart=entry.chart_formula or None,
            mask=entry.mask,
            closed_form=entry.closed_form.__name__.lstrip("_"),
        )
        out.append(record)
    return out



def _square(z: Any) -> Any:
    return z * z


def _cube(z: Any) -> Any:
    return z * z * z


def _exp(z: Any) -> Any:
    return exp(z)


# data functions addressable by name from definition files
DATA_FUNCTIONS: Dict[str, Callable[[Any], Any]] = {
    "one": _one,
    "identity": _identity,
    "square": _square,
    "cube": _cube,
    "exp": _exp,
    "inverse-square": _inverse_square,
    "catalan": _catalan_F,
    "henneberg": _henneberg_F,
    "split-unit": _split_unit,
}

CHARTS: Dict[str, Callable[[Any], Any]] = {
    "catalan": _catalan_chart,
    "henneberg": _henneberg_chart,
}


def _function(name: str, table: Dict[str, Callable[[Any], Any]]) -> Callable[[Any], Any]:
    try:
        return table[name]
    except KeyError as e:
        raise PreconditionError(f"Unknown data function: {name}", known=sorted(table)) from e


def data_from_definition(definition: Dict[str, Any]) -> WeierstrassData:
    """Weierstrass data from a parsed definition file.

    ``{"surface": name}`` selects a gallery entry; otherwise ``kind``,
    ``ambient`` and the catalog names of f and g (type I) or F (type II)
    are required, with optional basepoint, domain, poles, chart and offset.
    """
    if "surface" in definition:
        return weierstrass_data(definition["surface"])
    try:
        kind = WeierstrassKind(definition["kind"])
        ambient = WeierstrassAmbient(definition["ambient"])
    except (KeyError, ValueError) as e:
        raise PreconditionError("definition needs a valid kind and ambient", error=str(e)) from e
    functions = {
        key: _function(definition[key], DATA_FUNCTIONS)
        for key in ("f", "g", "F")
        if key in definition
    }
    options: Dict[str, Any] = {}
    if "basepoint" in definition:
        options["basepoint"] = tuple(float(x) for x in definition["basepoint"])
    if "domain" in definition:
        (a, b), (c, d) = definition["domain"]
        options["domain"] = ((float(a), float(b)), (float(c), float(d)))
    if "offset" in definition:
        options["offset"] = tuple(definition["offset"])
    if "chart" in definition:
        options["chart"] = _function(definition["chart"], CHARTS)
    poles = [
        Pole((float(p["point"][0]), float(p["point"][1])), int(p.get("order", 1)))
        for p in definition.get("poles", [])
    ]
    logger.debug("Parsed Weierstrass definition", kind=kind.value, ambient=ambient.value)
    return WeierstrassData(
        kind=kind,
        ambient=ambient,
        poles=poles,
        name=definition.get("name", "custom"),
        **functions,
        **options,
    )


def oracle_deviation(points: np.ndarray, closed: ClosedFormSurface, us: Any, vs: Any) -> Dict[str, float]:
    """How far generated points differ from the closed form by a constant vector."""
    reference = closed.sample(us, vs)
    diff = np.asarray(points, dtype=float) - reference
    ok = np.all(np.isfinite(diff), axis=2)
    if not ok.any():
        raise PreconditionError("no unmasked samples to compare", surface=closed.name)
    d = diff[ok]
    shift = d.mean(axis=0)
    return {
        "constancy": float(np.max(np.abs(d - shift))),
        "max_offset": float(np.max(np.abs(d))),
        "compared": int(ok.sum()),
    }
