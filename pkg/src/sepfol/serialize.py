"""JSON form of structures and result reports."""
from __future__ import annotations

import dataclasses
import json

from .errors import SchemaError
from .semantics import Structure

SCHEMA = 1


def _key(tup) -> str:
    return json.dumps(list(tup), separators=(",", ":"))


def structure_to_dict(s: Structure) -> dict:
    return {
        "universe": s.universe_size,
        "constants": {c: s.constants[c] for c in sorted(s.constants)},
        "functions": {f: {_key(k): s.functions[f][k] for k in sorted(s.functions[f])}
                      for f in sorted(s.functions)},
        "predicates": {p: [list(t) for t in sorted(s.predicates[p])] for p in sorted(s.predicates)},
    }


def print_structure(s: Structure) -> str:
    return json.dumps(structure_to_dict(s), separators=(", ", ": ")) + "\n"


def _element(v, n, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{where}: element must be an integer, got {v!r}")
    if not 0 <= v < n:
        raise SchemaError(f"{where}: element {v} outside universe 0..{n - 1}")
    return v


def _tuple(raw, n, where):
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: tuple must be a list")
    return tuple(_element(v, n, where) for v in raw)


def structure_from_dict(data) -> Structure:
    if not isinstance(data, dict):
        raise SchemaError("structure must be a JSON object")
    extra = set(data) - {"universe", "constants", "functions", "predicates"}
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}")
    n = data.get("universe")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("universe must be a positive integer")
    consts = {}
    for c, v in (data.get("constants") or {}).items():
        consts[c] = _element(v, n, f"constant {c}")
    funcs = {}
    for f, table in (data.get("functions") or {}).items():
        if not isinstance(table, dict):
            raise SchemaError(f"function {f}: table must be an object")
        parsed = {}
        for k, v in table.items():
            try:
                args = json.loads(k)
            except json.JSONDecodeError:
                raise SchemaError(f"function {f}: bad argument key {k!r}") from None
            parsed[_tuple(args, n, f"function {f}")] = _element(v, n, f"function {f}")
        arities = {len(k) for k in parsed}
        if len(arities) > 1:
            raise SchemaError(f"function {f}: inconsistent arity")
        arity = arities.pop() if arities else 0
        if len(parsed) != n ** arity:
            raise SchemaError(f"function {f}: table is not total")
        funcs[f] = parsed
    preds = {}
    for p, rows in (data.get("predicates") or {}).items():
        if not isinstance(rows, list):
            raise SchemaError(f"predicate {p}: extension must be a list")
        tuples = {_tuple(r, n, f"predicate {p}") for r in rows}
        if len({len(t) for t in tuples}) > 1:
            raise SchemaError(f"predicate {p}: inconsistent arity")
        preds[p] = frozenset(tuples)
    return Structure(n, consts, funcs, preds)


def parse_structure(text: str) -> Structure:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return structure_from_dict(data)


def to_jsonable(obj):
    """Plain JSON data for result records (dataclasses, structures, formulas)."""
    from .bounds import is_overflow
    from .tptp import print_tptp
    from .syntax import Formula
    if is_overflow(obj):
        return "Overflow"
    if isinstance(obj, Structure):
        return structure_to_dict(obj)
    if isinstance(obj, Formula.__args__):
        return print_tptp(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        name = getattr(type(obj), "name", None)
        if isinstance(name, str):
            out = {"verdict": name, **out}
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(v) for v in obj)
    return obj


def print_report(record) -> str:
    """One JSON object with a top-level schema version; keys sorted."""
    data = to_jsonable(record)
    if not isinstance(data, dict):
        data = {"result": data}
    data = {"schema": SCHEMA, **data}
    return json.dumps(data, sort_keys=True, ensure_ascii=False) + "\n"
