"""JSON descriptors in, CSV rasters and JSON reports out."""

from __future__ import annotations

import contextlib
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from .errors import ConfigParse, IoFailure, SliceLabError
from .extension import ExtendedFunction, HolomorphicSliceData, extend_from_disk
from .geometry import (
    Phi,
    PhiConstant,
    PhiDistance,
    PhiTable,
    SliceSet,
    complement,
    dumbbell,
    ellipse_book,
    euclidean_ball,
    half_slice,
    intersection,
    ray_complement,
    ray_complement_tilde,
    sigma_ball,
    slice_ball,
    union,
)
from .paths import ComplexPath
from .quaternion import ImaginaryUnit, Quaternion, SlicePoint

__all__ = [
    "RunConfig",
    "load_config",
    "parse_config",
    "parse_unit",
    "parse_quaternion",
    "parse_phi",
    "parse_slice_set",
    "parse_path",
    "parse_holo",
    "parse_function",
    "grid_rows",
    "write_grid_csv",
    "write_extend_csv",
    "dump_json",
    "to_json_text",
    "GRID_HEADER",
    "EXTEND_HEADER",
]

GRID_HEADER = ("unit_x", "unit_y", "unit_z", "x", "y", "member")
EXTEND_HEADER = ("x", "y", "ux", "uy", "uz", "fw", "fx", "fy", "fz")


def _fail(where: str, msg: str) -> ConfigParse:
    return ConfigParse(f"{where}: {msg}")


def _get(d: dict, key: str, where: str) -> Any:
    if not isinstance(d, dict):
        raise _fail(where, f"expected an object, got {type(d).__name__}")
    if key not in d:
        raise _fail(where, f"missing field '{key}'")
    return d[key]


def _num(v: Any, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise _fail(where, f"expected a number, got {v!r}")
    return float(v)


def _vec(v: Any, n: int, where: str) -> list[float]:
    if not isinstance(v, (list, tuple)) or len(v) != n:
        raise _fail(where, f"expected {n} numbers, got {v!r}")
    return [_num(c, f"{where}[{k}]") for k, c in enumerate(v)]


def parse_unit(v: Any, where: str = "unit") -> ImaginaryUnit:
    ux, uy, uz = _vec(v, 3, where)
    if math.hypot(ux, uy, uz) == 0.0:
        raise _fail(where, "zero vector is not a unit")
    return ImaginaryUnit.normalized(ux, uy, uz)


def parse_quaternion(v: Any, where: str = "quaternion") -> Quaternion:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return Quaternion(float(v), 0.0, 0.0, 0.0)
    return Quaternion(*_vec(v, 4, where))


def parse_phi(v: Any, J: ImaginaryUnit, where: str = "phi") -> Phi:
    """A table ``[{unit, value}, ...]`` or ``{"kind": distance|constant|table, ...}``."""
    if isinstance(v, list):
        samples = []
        for k, row in enumerate(v):
            w = f"{where}[{k}]"
            samples.append((parse_unit(_get(row, "unit", w), f"{w}.unit"), _num(_get(row, "value", w), f"{w}.value")))
        try:
            return PhiTable.from_samples(J, samples)
        except ValueError as e:
            raise _fail(where, str(e)) from None
    kind = _get(v, "kind", where)
    if kind == "distance":
        return PhiDistance(parse_unit(v["J"], f"{where}.J") if "J" in v else J)
    if kind == "constant":
        val = _num(_get(v, "value", where), f"{where}.value")
        if not 0.0 <= val <= 1.0:
            raise _fail(f"{where}.value", f"{val} outside [0, 1]")
        return PhiConstant(val)
    if kind == "table":
        base = parse_unit(v["J"], f"{where}.J") if "J" in v else J
        angles = [_num(a, f"{where}.angles") for a in _get(v, "angles", where)]
        values = [_num(a, f"{where}.values") for a in _get(v, "values", where)]
        if len(angles) != len(values) or not angles:
            raise _fail(where, "angles and values must be non-empty and of equal length")
        return PhiTable(base, tuple(angles), tuple(values))
    raise _fail(f"{where}.kind", f"unknown phi kind {kind!r}")


def parse_slice_set(d: Any, where: str = "set") -> SliceSet:
    t = _get(d, "type", where)
    try:
        if t == "EuclideanBall":
            return euclidean_ball(parse_quaternion(_get(d, "center", where), f"{where}.center"), _num(_get(d, "r", where), f"{where}.r"))
        if t == "SliceBall":
            cx, cy = _vec(_get(d, "center", where), 2, f"{where}.center")
            return slice_ball(parse_unit(_get(d, "I", where), f"{where}.I"), complex(cx, cy), _num(_get(d, "r", where), f"{where}.r"))
        if t == "SigmaBall":
            return sigma_ball(parse_quaternion(_get(d, "p", where), f"{where}.p"), _num(_get(d, "r", where), f"{where}.r"))
        if t == "EllipseBook":
            return ellipse_book(parse_unit(_get(d, "I", where), f"{where}.I"))
        if t == "Dumbbell":
            return dumbbell(parse_unit(_get(d, "I", where), f"{where}.I"))
        if t == "HalfSlice":
            return half_slice(parse_unit(_get(d, "I", where), f"{where}.I"))
        if t in ("RayComplement", "RayComplementTilde"):
            J = parse_unit(_get(d, "J", where), f"{where}.J")
            phi = parse_phi(_get(d, "phi", where), J, f"{where}.phi")
            return (ray_complement if t == "RayComplement" else ray_complement_tilde)(phi, J)
        if t == "Complement":
            return complement(parse_slice_set(_get(d, "of", where), f"{where}.of"))
        if t in ("Union", "Intersection"):
            parts = _get(d, "of", where)
            if not isinstance(parts, list) or not parts:
                raise _fail(f"{where}.of", "expected a non-empty list")
            sets = [parse_slice_set(p, f"{where}.of[{k}]") for k, p in enumerate(parts)]
            return (union if t == "Union" else intersection)(*sets)
    except ConfigParse:
        raise
    except SliceLabError as e:
        raise _fail(where, str(e)) from None
    raise _fail(f"{where}.type", f"unknown set type {t!r}")


def parse_path(v: Any, where: str = "path", **kw) -> ComplexPath:
    if isinstance(v, dict):
        v = _get(v, "vertices", where)
    if not isinstance(v, list):
        raise _fail(where, "expected a list of [x, y] vertices")
    pts = tuple(tuple(_vec(p, 2, f"{where}[{k}]")) for k, p in enumerate(v))
    try:
        return ComplexPath(pts, **kw)
    except (SliceLabError, ValueError) as e:
        raise _fail(where, str(e)) from None


def parse_holo(d: Any, where: str = "data") -> HolomorphicSliceData:
    unit = parse_unit(_get(d, "unit", where), f"{where}.unit")
    cx = _num(d.get("center_x", 0.0), f"{where}.center_x")
    cy = _num(d.get("center_y", 0.0), f"{where}.center_y")
    r = _num(_get(d, "radius", where), f"{where}.radius")
    if r <= 0:
        raise _fail(f"{where}.radius", f"{r} <= 0")
    coeffs = _get(d, "coefficients", where)
    if not isinstance(coeffs, list) or not coeffs:
        raise _fail(f"{where}.coefficients", "expected a non-empty list")
    cs = [parse_quaternion(c, f"{where}.coefficients[{k}]") for k, c in enumerate(coeffs)]
    return HolomorphicSliceData.series(unit, complex(cx, cy), r, cs)


def parse_extension(d: Any, where: str = "extension") -> ExtendedFunction:
    h1 = parse_holo(_get(d, "data", where), f"{where}.data")
    if "data2" not in d:
        return extend_from_disk(h1)
    try:
        return ExtendedFunction(h1, parse_holo(d["data2"], f"{where}.data2"))
    except SliceLabError as e:
        raise _fail(where, str(e)) from None


def parse_function(d: Any, where: str = "function"):
    """A SliceRegularModel from ``{"type": polynomial|constant|psi_phi|extension, ...}``."""
    # local imports: pathslice/counterexample sit above io in the layering
    from .counterexample import psi_phi_model
    from .pathslice import constant_model, extension_model, polynomial_model

    t = _get(d, "type", where)
    domain = parse_slice_set(d["domain"], f"{where}.domain") if "domain" in d else None
    if t == "polynomial":
        cs = [parse_quaternion(c, f"{where}.coefficients[{k}]") for k, c in enumerate(_get(d, "coefficients", where))]
        return polynomial_model(cs, domain or euclidean_ball(0.0, 1e300))
    if t == "constant":
        return constant_model(parse_quaternion(_get(d, "value", where), f"{where}.value"), domain or euclidean_ball(0.0, 1e300))
    if t == "psi_phi":
        J = parse_unit(_get(d, "J", where), f"{where}.J")
        phi = parse_phi(d.get("phi", {"kind": "distance"}), J, f"{where}.phi")
        return psi_phi_model(phi, J, bool(d.get("tilde", False)))
    if t == "extension":
        return extension_model(parse_extension(d, where))
    raise _fail(f"{where}.type", f"unknown function type {t!r}")


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    out: Optional[str] = None


def parse_config(text: str, source: str = "<config>") -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigParse(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise ConfigParse(f"{source}: top level must be an object")
    return data


def load_config(path: Optional[str], command: str, seed: Optional[int] = None, out: Optional[str] = None) -> RunConfig:
    data: dict = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ConfigParse(f"{path}: {e.strerror}") from None
        data = parse_config(text, path)
    tol = data.pop("tolerances", {})
    if not isinstance(tol, dict):
        raise ConfigParse("tolerances: expected an object")
    from ._config import Tolerances

    known = set(Tolerances.__dataclass_fields__)
    for k, v in tol.items():
        if k not in known:
            raise ConfigParse(f"tolerances.{k}: unknown tolerance")
        _num(v, f"tolerances.{k}")
    s = data.pop("seed", 0) if seed is None else seed
    if isinstance(s, bool) or not isinstance(s, int):
        raise ConfigParse(f"seed: expected an integer, got {s!r}")
    o = out if out is not None else data.pop("out", None)
    data.pop("out", None)
    return RunConfig(command, s, dict(tol), data, o)


# ---------------------------------------------------------------------------
# writers


def grid_rows(
    S: SliceSet,
    units: Sequence[ImaginaryUnit],
    xs: Sequence[float],
    ys: Sequence[float],
) -> Iterable[tuple]:
    """Rows in unit-major, then x, then y order."""
    for u in units:
        ux, uy, uz = (float(c) for c in u.vec())
        for x in xs:
            for y in ys:
                yield (ux, uy, uz, float(x), float(y), int(S.contains_coords(u, float(x), float(y))))


@contextlib.contextmanager
def _open_out(path: Optional[str]):
    """Writable text handle for ``path``; stdout when ``path`` is None."""
    if path is None:
        yield sys.stdout
        return
    try:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        fh = p.open("w", newline="")
    except OSError as e:
        raise IoFailure(f"{path}: {e.strerror}") from None
    with fh:
        yield fh


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def write_grid_csv(path: Optional[str], rows: Iterable[tuple]) -> int:
    n = 0
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(GRID_HEADER)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
            n += 1
    return n


def write_extend_csv(path: Optional[str], rows: Iterable[tuple[float, float, ImaginaryUnit, Quaternion]]) -> int:
    n = 0
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(EXTEND_HEADER)
        for x, y, u, f in rows:
            w.writerow([_fmt(float(v)) for v in (x, y, *u.vec(), *f)])
            n += 1
    return n


def _jsonable(o):
    if isinstance(o, float):
        if math.isnan(o):
            return "nan"
        if math.isinf(o):
            return "inf" if o > 0 else "-inf"
        return o
    if isinstance(o, SlicePoint):
        return {"unit": [float(c) for c in o.unit.vec()], "x": float(o.x), "y": float(o.y)}
    if isinstance(o, Quaternion):
        return [float(c) for c in o]
    if isinstance(o, dict):
        return {str(k): _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if hasattr(o, "item"):  # numpy scalars
        return _jsonable(o.item())
    return o


def to_json_text(obj: Any) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def dump_json(obj: Any, path: Optional[str] = None) -> str:
    """Write ``obj`` as JSON to ``path`` (stdout when None) and return the text."""
    text = to_json_text(obj)
    with _open_out(path) as fh:
        fh.write(text)
    return text
