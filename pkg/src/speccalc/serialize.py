"""JSON codecs and the text syntax for functions on the spectrum.

Field elements travel as grammar strings (``"(1 + t)/(2*t^3)"``); spectrum
points as ``"p0"`` (the point 0), ``"p1"``, ``"p2"``, ...
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Callable

from .c0 import OrthoSystem, Vec0
from .field import FieldElem
from .measure import CFunc, Clopen, TaggedPartition, UnknownPoint, indicator
from .operators import OpSY
from .parsing import ParseError, parse_field_expr, parse_poly_expr
from .spectral import Spectrum


def fe_to_json(a: FieldElem) -> str:
    return str(a)


def fe_from_json(value: Any) -> FieldElem:
    if isinstance(value, bool):
        raise ParseError("expected a field expression, got a boolean", 0)
    if isinstance(value, int):
        return FieldElem.const(value)
    if not isinstance(value, str):
        raise ParseError(f"expected a field expression string, got {type(value).__name__}", 0)
    return parse_field_expr(value)


def vec_to_json(v: Vec0) -> dict[str, str]:
    return {str(i): str(a) for i, a in v.entries}


def vec_from_json(data: Any) -> Vec0:
    if not isinstance(data, dict):
        raise ParseError("a vector is an object mapping indices to field expressions", 0)
    items = []
    for key, value in data.items():
        try:
            idx = int(key)
        except ValueError:
            raise ParseError(f"vector index {key!r} is not an integer", 0) from None
        if idx < 1:
            raise ParseError(f"vector index {idx} must be positive", 0)
        items.append((idx, fe_from_json(value)))
    return Vec0.from_mapping(items)


def op_to_json(S: OpSY) -> dict[str, Any]:
    return {"alpha": str(S.alpha), "lambda": [str(v) for v in S.lam]}


def op_from_json(data: Any, system: OrthoSystem) -> OpSY:
    if not isinstance(data, dict) or "lambda" not in data:
        raise ParseError('an operator is {"alpha": ..., "lambda": [...]}', 0)
    lam = [fe_from_json(v) for v in data["lambda"]]
    if len(lam) != len(system):
        raise ParseError(f"lambda has {len(lam)} entries, the system has {len(system)} members", 0)
    return OpSY(fe_from_json(data.get("alpha", "0")), tuple(lam), system)


_POINT = re.compile(r"^p(\d+)$")


def point_id(label: Any) -> int:
    if isinstance(label, int) and not isinstance(label, bool) and label >= 0:
        return label
    m = _POINT.match(str(label))
    if not m:
        raise ParseError(f"bad spectrum point label {label!r} (expected p0, p1, ...)", 0)
    return int(m.group(1))


def point_label(ident: int) -> str:
    return f"p{ident}"


def clopen_to_json(C: Clopen) -> dict[str, Any]:
    return {"includes_zero": C.includes_zero, "points": [point_label(i) for i in sorted(C.points)]}


def clopen_from_json(data: Any) -> Clopen:
    if not isinstance(data, dict):
        raise ParseError('a clopen set is {"includes_zero": bool, "points": [...]}', 0)
    inc = data.get("includes_zero", False)
    if not isinstance(inc, bool):
        raise ParseError("includes_zero must be a boolean", 0)
    ids = {point_id(p) for p in data.get("points", [])}
    return Clopen.from_ids(ids | ({0} if inc else set()))


def cfunc_to_json(f: CFunc) -> dict[str, Any]:
    return {"at_zero": str(f.at_zero), "values": {point_label(k): str(v) for k, v in f.values}}


def partition_to_json(part: TaggedPartition) -> list[dict[str, Any]]:
    return [{"cell": clopen_to_json(c), "tag": point_label(tag)} for c, tag in part.cells]


def partition_from_json(data: Any) -> TaggedPartition:
    if not isinstance(data, list):
        raise ParseError("a tagged partition is a list of {cell, tag} objects", 0)
    cells = []
    for entry in data:
        if not isinstance(entry, dict) or "cell" not in entry or "tag" not in entry:
            raise ParseError("each partition entry needs 'cell' and 'tag'", 0)
        cells.append((clopen_from_json(entry["cell"]), point_id(entry["tag"])))
    return TaggedPartition(tuple(cells))


# ---------------------------------------------------------------------------
# function specifications
# ---------------------------------------------------------------------------

def _split_top(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError("unbalanced brackets", len(text), text)
    parts.append("".join(cur))
    return [x.strip() for x in parts if x.strip()]


def _loose_value(text: str) -> Any:
    if text.startswith("{"):
        return _loose_object(text)
    if text.startswith("["):
        if not text.endswith("]"):
            raise ParseError("unterminated list", len(text), text)
        return [_loose_value(x) for x in _split_top(text[1:-1])]
    if text in ("true", "false"):
        return text == "true"
    return text.strip('"')


def _loose_object(text: str) -> dict:
    """Read ``{points:[p1], includes_zero:false}`` or ``{p1: 1/t}``.

    Keys need no quotes and values may be bare field expressions.
    """
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError("expected an object in braces", 0, text)
    out = {}
    for item in _split_top(text[1:-1]):
        key, sep, value = item.partition(":")
        if not sep:
            raise ParseError(f"entry {item!r} lacks a ':'", text.find(item), text)
        out[key.strip().strip('"')] = _loose_value(value.strip())
    return out


def _lenient_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return _loose_object(text)


@dataclass(frozen=True)
class FuncSpec:
    """A parsed function description, resolved against a spectrum on demand."""

    kind: str  # 'poly', 'table' or 'indicator'
    source: str
    resolve: Callable[[Spectrum], CFunc]

    def __call__(self, sigma: Spectrum) -> CFunc:
        return self.resolve(sigma)


def _table_resolver(at_zero: FieldElem, values: dict[int, FieldElem]):
    def resolve(sigma: Spectrum) -> CFunc:
        for k in values:
            if k > len(sigma.points):
                raise UnknownPoint(f"p{k} is not a point of the spectrum")
        return CFunc.table(at_zero, values)
    return resolve


def _indicator_resolver(C: Clopen):
    def resolve(sigma: Spectrum) -> CFunc:
        C.check_within(sigma)
        return indicator(C, sigma)
    return resolve


def func_spec_from_json(data: Any) -> FuncSpec:
    """Object forms: {"poly": [...]}, {"at_zero": ..., "values": {...}}, {"indicator": clopen}."""
    if isinstance(data, str):
        return parse_func_spec(data)
    if not isinstance(data, dict):
        raise ParseError("a function is a string or an object", 0)
    if "poly" in data:
        from .polyx import PolyX
        poly = PolyX(fe_from_json(c) for c in data["poly"])
        return FuncSpec("poly", json.dumps(data), lambda sigma: CFunc.from_poly(poly, sigma))
    if "indicator" in data:
        return FuncSpec("indicator", json.dumps(data), _indicator_resolver(clopen_from_json(data["indicator"])))
    if "at_zero" in data or "values" in data:
        values = data.get("values", {})
        if not isinstance(values, dict):
            raise ParseError("table 'values' must be an object", 0)
        table = {}
        for k, v in values.items():
            ident = point_id(k)
            if ident == 0:
                raise ParseError("use 'at_zero' for the value at p0", 0)
            table[ident] = fe_from_json(v)
        return FuncSpec("table", json.dumps(data), _table_resolver(fe_from_json(data.get("at_zero", "0")), table))
    raise ParseError("unrecognised function object", 0)


def parse_func_spec(text: str) -> FuncSpec:
    kind, sep, body = text.partition(":")
    kind = kind.strip()
    if not sep or kind not in ("poly", "table", "indicator"):
        raise ParseError("function text must start with 'poly:', 'table:' or 'indicator:'", 0, text)
    offset = text.index(":") + 1 + len(body) - len(body.lstrip())
    body = body.strip()
    if kind == "poly":
        try:
            poly = parse_poly_expr(body)
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" at position", 1)[0], exc.position + offset, text) from None
        return FuncSpec("poly", text, lambda sigma: CFunc.from_poly(poly, sigma))
    obj = _lenient_json(body)
    if kind == "table":
        if not isinstance(obj, dict):
            raise ParseError("table body must be an object", offset, text)
        return FuncSpec("table", text, func_spec_from_json(obj if ("at_zero" in obj or "values" in obj)
                                                              else _flat_table(obj)).resolve)
    return FuncSpec("indicator", text, _indicator_resolver(clopen_from_json(obj)))


def _flat_table(obj: dict) -> dict:
    """{"p0": a, "p1": b, ...} -> {"at_zero": a, "values": {...}}."""
    at_zero = "0"
    values = {}
    for k, v in obj.items():
        if point_id(k) == 0:
            at_zero = v
        else:
            values[k] = v
    return {"at_zero": at_zero, "values": values}


def parse_func_expr(text: str, sigma: Spectrum) -> CFunc:
    """``poly: <expr in x>``, ``table: {...}`` or ``indicator: {clopen}`` -> CFunc."""
    return parse_func_spec(text)(sigma)
