"""File writers for meshes, sample tables and reports.

All numbers are written with 17 significant digits so identical runs give
byte-identical files.
"""

import dataclasses
import json
import math
from enum import Enum
from pathlib import Path
from typing import IO, Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
import structlog
from pydantic import BaseModel

logger = structlog.get_logger()

FLOAT_FORMAT = "%.17g"

Target = Union[str, Path, IO[str]]


def format_float(x: float) -> str:
    return FLOAT_FORMAT % x


def to_jsonable(obj: Any, finite: bool = False) -> Any:
    """Plain dicts, lists, floats and strings from reports, arrays and enums.

    With ``finite`` set, NaN and infinities become None.
    """
    if isinstance(obj, BaseModel):
        return to_jsonable(obj.model_dump(), finite)
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict(), finite)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(dataclasses.asdict(obj), finite)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, finite) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, finite) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist(), finite)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return None if finite and not math.isfinite(x) else x
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _encode(obj: Any) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ", ".join(f"{json.dumps(k)}: {_encode(v)}" for k, v in items) + "}"
    if isinstance(obj, list):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj: Any) -> str:
    """Deterministic JSON: sorted keys, 17 significant digits, NaN as null."""
    return _encode(to_jsonable(obj))


def _open(target: Target):
    if isinstance(target, (str, Path)):
        return open(target, "w", encoding="utf-8", newline="\n")
    return None


def _emit(target: Target, text: str) -> None:
    handle = _open(target)
    if handle is None:
        target.write(text)  # type: ignore[union-attr]
        return
    with handle:
        handle.write(text)


def write_json(obj: Any, target: Target) -> None:
    _emit(target, dumps_json(obj) + "\n")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    return str(value)


def write_csv(rows: Iterable[Dict[str, Any]], columns: Sequence[str], target: Target) -> int:
    """Write ``rows`` under a header in the given column order; returns the row count."""
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(row.get(c)) for c in columns))
    _emit(target, "\n".join(lines) + "\n")
    return len(lines) - 1


def mesh_faces(mask: np.ndarray) -> List[tuple]:
    """Triangles over the (u, v) grid, counterclockwise; masked vertices drop their faces.

    Indices are 0-based into the row-major (u outer, v inner) vertex list.
    """
    nu, nv = mask.shape
    faces = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            a, b = i * nv + j, (i + 1) * nv + j
            c, d = (i + 1) * nv + j + 1, i * nv + j + 1
            for tri in ((a, b, c), (a, c, d)):
                if all(mask.flat[k] for k in tri):
                    faces.append(tri)
    return faces


def write_obj(points: np.ndarray, target: Target, name: Optional[str] = None) -> Dict[str, int]:
    """Write a (nu, nv, 3) grid as a Wavefront OBJ mesh; NaN rows are masked."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 3 or points.shape[2] != 3:
        raise ValueError(f"expected a (nu, nv, 3) grid, got {points.shape}")
    nu, nv, _ = points.shape
    mask = np.all(np.isfinite(points), axis=2)
    index = np.full(nu * nv, -1, dtype=int)
    index[mask.ravel()] = np.arange(1, int(mask.sum()) + 1)

    lines = []
    if name:
        lines.append(f"o {name}")
    for p in points.reshape(-1, 3)[mask.ravel()]:
        lines.append("v " + " ".join(format_float(x) for x in p))
    faces = mesh_faces(mask)
    for tri in faces:
        lines.append("f " + " ".join(str(index[k]) for k in tri))
    _emit(target, "\n".join(lines) + "\n")
    stats = {"vertices": int(mask.sum()), "faces": len(faces), "masked": int((~mask).sum())}
    if stats["masked"]:
        logger.warning("Masked vertices dropped from mesh", **stats)
    return stats
