"""JSON polytope files and decomposition dumps.

A polytope file holds one object with a "kind" key:

    {"kind": "std",  "A": [[...], ...], "b": [...]}
    {"kind": "hrep", "Aprime": [["p/q", ...], ...], "bprime": ["p/q", ...]}
    {"kind": "vrep", "vertices": [["p/q", ...], ...]}

Rationals are integers or "p/q" strings; floats are refused.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import PolyvolError
from .linalg import Matrix
from .polytope import PolytopeH, PolytopeStd, PolytopeV
from .simpcone import Decomposition


class ParseError(PolyvolError):
    pass


def _rat(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"{where}: {x!r} is not an exact rational (write it as \"p/q\")")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: cannot read {x!r} as a rational") from None
    raise ParseError(f"{where}: expected a number or \"p/q\" string, got {type(x).__name__}")


def _int(x, where: str) -> int:
    q = _rat(x, where)
    if q.denominator != 1:
        raise ParseError(f"{where}: {x!r} must be an integer")
    return q.numerator


def _vector(data: dict, key: str, conv) -> list:
    if key not in data:
        raise ParseError(f"missing field {key!r}")
    v = data[key]
    if not isinstance(v, list):
        raise ParseError(f"field {key!r} must be an array")
    return [conv(x, f"{key}[{i}]") for i, x in enumerate(v)]


def _matrix(data: dict, key: str, conv) -> list[list]:
    if key not in data:
        raise ParseError(f"missing field {key!r}")
    rows = data[key]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"field {key!r} must be a nonempty array of rows")
    width = len(rows[0])
    out = []
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ParseError(f"{key}[{i}]: row has {len(r)} entries, expected {width}")
        out.append([conv(x, f"{key}[{i}][{j}]") for j, x in enumerate(r)])
    return out


def polytope_from_dict(data: dict) -> PolytopeStd | PolytopeH | PolytopeV:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    kind = data.get("kind")
    if kind == "std":
        return PolytopeStd(Matrix(_matrix(data, "A", _int)), tuple(_vector(data, "b", _int)))
    if kind == "hrep":
        return PolytopeH(Matrix(_matrix(data, "Aprime", _rat)), tuple(_vector(data, "bprime", _rat)))
    if kind == "vrep":
        return PolytopeV([tuple(r) for r in _matrix(data, "vertices", _rat)])
    raise ParseError(f"field 'kind': expected \"std\", \"hrep\" or \"vrep\", got {kind!r}")


def load_polytope(path: str | Path):
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    return polytope_from_dict(data)


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def polytope_to_dict(p) -> dict:
    if isinstance(p, PolytopeStd):
        return {"kind": "std", "A": p.A.to_int_rows(), "b": list(p.b)}
    if isinstance(p, PolytopeH):
        return {
            "kind": "hrep",
            "Aprime": [[_q(x) for x in row] for row in p.A.rows],
            "bprime": [_q(x) for x in p.b],
        }
    if isinstance(p, PolytopeV):
        return {"kind": "vrep", "vertices": [[_q(x) for x in v] for v in p.vertices]}
    raise TypeError(f"not a polytope: {type(p).__name__}")


def decomposition_to_json(dec: Decomposition) -> str:
    data = dec.to_dict()
    if dec.B is not None:
        data["B"] = dec.B.to_int_rows()
    return json.dumps(data, indent=1)


def decomposition_from_json(text: str) -> Decomposition:
    data = json.loads(text)
    dec = Decomposition.from_dict(data)
    if "B" in data:
        dec = Decomposition(dec.cones, dec.invariant_factor_product, dec.n, dec.r, Matrix(data["B"]))
    return dec
