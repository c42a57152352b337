"""JSON interchange: algebra files, matrices and reports.  Scalars are stored as strings."""

from __future__ import annotations

import json
from pathlib import Path

from .exactfield import Field, ParseError
from .hopf import HopfData
from .tensorcore import AlgebraData, LegElement, LinMap

__all__ = [
    "SchemaError",
    "dump_algebra",
    "dump_hopf",
    "dump_matrix",
    "load_algebra",
    "load_hopf",
    "load_matrix",
    "read_json",
    "write_json",
]


class SchemaError(ValueError):
    pass


def _fmt(field: Field, x) -> str:
    return field.format(x)


def _vector(field: Field, v: dict, dim: int) -> list[str]:
    return [_fmt(field, v.get(i, 0)) for i in range(dim)]


def dump_algebra(A: AlgebraData, name: str | None = None) -> dict:
    """Multiplication tensor and unit, forcing every lazy product."""
    F = A.field
    mult = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in sorted(A.mul_basis(i, j).items()):
                mult.append([i, j, k, _fmt(F, c)])
    return {
        "name": name if name is not None else A.name,
        "field": {"conductor": F.conductor},
        "dim": A.dim,
        "unit": _vector(F, A.unit, A.dim),
        "mult": mult,
    }


def dump_hopf(H: HopfData, R: LegElement | None = None, ribbon: dict | None = None) -> dict:
    out = dump_algebra(H.algebra, H.name)
    F = H.field
    out["comult"] = [
        [i, j, k, _fmt(F, c)] for i in range(H.dim) for (j, k), c in sorted(H.comult.get(i, {}).items())
    ]
    out["counit"] = _vector(F, H.counit, H.dim)
    out["antipode"] = [[i, j, _fmt(F, c)] for i, row in sorted(H.antipode.rows.items()) for j, c in sorted(row.items())]
    if R is not None:
        out["R"] = [[i, j, _fmt(F, c)] for (i, j), c in sorted(R.items())]
    if ribbon is not None:
        out["ribbon"] = _vector(F, ribbon, H.dim)
    return out


def _scalar(F: Field, s, where: str):
    if not isinstance(s, str):
        raise SchemaError(f"{where}: scalars must be strings, got {s!r}")
    try:
        return F.parse(s)
    except ParseError as e:
        raise SchemaError(f"{where}: {e}") from None


def _index(i, dim: int, where: str) -> int:
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < dim:
        raise SchemaError(f"{where}: index {i!r} out of range 0..{dim - 1}")
    return i


def _read_vector(F: Field, data, dim: int, where: str) -> dict:
    if not isinstance(data, list) or len(data) != dim:
        raise SchemaError(f"{where}: expected a list of {dim} scalars")
    out = {}
    for i, s in enumerate(data):
        c = _scalar(F, s, f"{where}[{i}]")
        if c:
            out[i] = c
    return out


def _read_entries(F: Field, data, arity: int, dim: int, where: str) -> list:
    if not isinstance(data, list):
        raise SchemaError(f"{where}: expected a list")
    out = []
    for n, entry in enumerate(data):
        if not isinstance(entry, list) or len(entry) != arity + 1:
            raise SchemaError(f"{where}[{n}]: expected {arity} indices and a scalar")
        idx = tuple(_index(i, dim, f"{where}[{n}]") for i in entry[:arity])
        out.append((idx, _scalar(F, entry[arity], f"{where}[{n}]")))
    return out


def _header(data) -> tuple[Field, int]:
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    try:
        N = data["field"]["conductor"]
        dim = data["dim"]
    except (KeyError, TypeError):
        raise SchemaError("missing field.conductor or dim") from None
    if not isinstance(N, int) or N < 1 or not isinstance(dim, int) or dim < 1:
        raise SchemaError("conductor and dim must be positive integers")
    return Field(N), dim


def load_algebra(data: dict) -> AlgebraData:
    F, dim = _header(data)
    mult: dict = {}
    for (i, j, k), c in _read_entries(F, data.get("mult", []), 3, dim, "mult"):
        tgt = mult.setdefault((i, j), {})
        tgt[k] = tgt.get(k, 0) + c
    unit = _read_vector(F, data.get("unit"), dim, "unit")
    return AlgebraData(dim, mult, unit, F, name=data.get("name") or "")


def load_hopf(data: dict) -> tuple[HopfData, LegElement | None, dict | None]:
    A = load_algebra(data)
    F, dim = A.field, A.dim
    for key in ("comult", "counit", "antipode"):
        if key not in data:
            raise SchemaError(f"missing {key}")
    comult: dict = {}
    for (i, j, k), c in _read_entries(F, data["comult"], 3, dim, "comult"):
        tgt = comult.setdefault(i, {})
        tgt[j, k] = tgt.get((j, k), 0) + c
    counit = _read_vector(F, data["counit"], dim, "counit")
    rows: dict = {}
    for (i, j), c in _read_entries(F, data["antipode"], 2, dim, "antipode"):
        rows.setdefault(i, {})[j] = rows.get(i, {}).get(j, 0) + c
    H = HopfData(A, comult, counit, LinMap(dim, dim, rows), name=A.name)
    R = None
    if data.get("R") is not None:
        terms: dict = {}
        for (i, j), c in _read_entries(F, data["R"], 2, dim, "R"):
            terms[i, j] = terms.get((i, j), 0) + c
        R = LegElement([A, A], terms)
    ribbon = None
    if data.get("ribbon") is not None:
        ribbon = _read_vector(F, data["ribbon"], dim, "ribbon")
    return H, R, ribbon


def dump_matrix(M: LinMap, field: Field, name: str = "") -> dict:
    return {
        "name": name,
        "field": {"conductor": field.conductor},
        "rows": M.dst_dim,
        "cols": M.src_dim,
        "entries": [[i, j, field.format(c)] for i, row in sorted(M.rows.items()) for j, c in sorted(row.items())],
    }


def load_matrix(data: dict) -> LinMap:
    F = Field(data["field"]["conductor"])
    n, m = data["rows"], data["cols"]
    rows: dict = {}
    for entry in data["entries"]:
        i, j, s = entry
        _index(i, n, "entries")
        _index(j, m, "entries")
        rows.setdefault(i, {})[j] = _scalar(F, s, "entries")
    return LinMap(n, m, rows)


def read_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e})") from None


def write_json(obj, path: str | Path | None = None) -> str:
    text = json.dumps(obj, indent=1) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
