"""JSON serialization of catalog records.

The file is a JSON object ``{"format": 1, "records": [...]}``; each record
is a flat object of integers, strings and integer arrays. A JSON Schema is
checked before any record is built, then every record is validated and the
load fails as a whole on the first problem.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

import jsonschema

from ..lattice import Cone
from .record import Factorization, IrreducibleRules, VarietyRecord


class CatalogError(ValueError):
    pass


_INT = {"type": "integer"}
_IVEC = {"type": "array", "items": _INT}
_IMAT = {"type": "array", "items": _IVEC}

RECORD_SCHEMA = {
    "type": "object",
    "required": ["id", "dim", "rank", "basis", "pairing", "nef", "eff", "rays", "minusK", "form", "degree"],
    "additionalProperties": False,
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "name": {"type": "string"},
        "dim": {"enum": [1, 2, 3]},
        "rank": {"type": "integer", "minimum": 1},
        "basis": {"type": "array", "items": {"type": "string"}},
        "curve_basis": {"type": "array", "items": {"type": "string"}},
        "pairing": _IMAT,
        "nef": _IMAT,
        "eff": _IMAT,
        "rays": _IMAT,
        "minusK": _IVEC,
        "form": _IMAT,
        "c2": {"oneOf": [_IVEC, {"type": "null"}]},
        "euler": {"oneOf": [_INT, {"type": "null"}]},
        "h12": {"oneOf": [{"type": "integer", "minimum": 0}, {"type": "null"}]},
        "delta": {"oneOf": [{"type": "integer", "minimum": 0}, {"type": "null"}]},
        "degree": _INT,
        "auto": {"type": "array", "items": _IMAT},
        "irreducible": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"exceptional": _IMAT, "no_multiples": _IMAT},
        },
        "toric": {"oneOf": [_IMAT, {"type": "null"}]},
        "negative_support_free": {"type": "boolean"},
        "products": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["w", "z0", "w_indices", "z0_indices"],
                "additionalProperties": False,
                "properties": {"w": {"type": "string"}, "z0": {"type": "string"},
                               "w_indices": _IVEC, "z0_indices": _IVEC},
            },
        },
        "recipe": {"type": ["object", "null"]},
    },
}

CATALOG_SCHEMA = {
    "type": "object",
    "required": ["records"],
    "additionalProperties": False,
    "properties": {"format": {"const": 1}, "records": {"type": "array", "items": RECORD_SCHEMA}},
}


# compiled once; jsonschema.validate would re-check the schema itself on every call
_RECORD_VALIDATOR = jsonschema.Draft202012Validator(RECORD_SCHEMA)
_CATALOG_VALIDATOR = jsonschema.Draft202012Validator(CATALOG_SCHEMA)


def record_to_json(r: VarietyRecord) -> dict:
    return {
        "id": r.id,
        "name": r.name,
        "dim": r.dim,
        "rank": r.rank,
        "basis": list(r.basis),
        "curve_basis": list(r.curve_basis),
        "pairing": [list(x) for x in r.pairing],
        "nef": [list(g) for g in r.nef.generators],
        "eff": [list(g) for g in r.eff.generators],
        "rays": [list(x) for x in r.rays],
        "minusK": list(r.minus_K),
        "form": [list(k) + [v] for k, v in sorted(r.form.items()) if v],
        "c2": None if r.c2 is None else list(r.c2),
        "euler": r.euler,
        "h12": r.h12,
        "delta": r.delta,
        "degree": r.degree,
        "auto": [[list(row) for row in m] for m in r.automorphisms],
        "irreducible": {"exceptional": [list(v) for v in r.irreducible.exceptional],
                        "no_multiples": [list(v) for v in r.irreducible.no_multiples]},
        "toric": None if r.toric is None else [list(t) for t in r.toric],
        "negative_support_free": r.negative_support_free,
        "products": [{"w": f.w, "z0": f.z0, "w_indices": list(f.w_indices), "z0_indices": list(f.z0_indices)}
                     for f in r.products],
        "recipe": r.recipe,
    }


def record_from_json(d: dict) -> VarietyRecord:
    _RECORD_VALIDATOR.validate(d)
    form = {}
    for entry in d["form"]:
        if len(entry) != d["dim"] + 1:
            raise CatalogError(f"{d['id']}: form entry {entry} has the wrong length")
        form[tuple(sorted(entry[:-1]))] = entry[-1]
    irr = d.get("irreducible") or {}
    try:
        return VarietyRecord(
            id=d["id"], name=d.get("name", d["id"]), dim=d["dim"], rank=d["rank"], basis=tuple(d["basis"]),
            curve_basis=tuple(d.get("curve_basis") or [f"c{i + 1}" for i in range(d["rank"])]),
            pairing=tuple(tuple(r) for r in d["pairing"]), nef=Cone(tuple(map(tuple, d["nef"]))),
            eff=Cone(tuple(map(tuple, d["eff"]))), rays=tuple(tuple(r) for r in d["rays"]),
            minus_K=tuple(d["minusK"]), form=form, degree=d["degree"],
            c2=None if d.get("c2") is None else tuple(d["c2"]), euler=d.get("euler"), h12=d.get("h12"),
            delta=d.get("delta"), automorphisms=tuple(tuple(tuple(r) for r in m) for m in d.get("auto", [])),
            irreducible=IrreducibleRules(tuple(map(tuple, irr.get("exceptional", []))),
                                         tuple(map(tuple, irr.get("no_multiples", [])))),
            toric=None if d.get("toric") is None else tuple(map(tuple, d["toric"])),
            negative_support_free=d.get("negative_support_free", False),
            products=tuple(Factorization(f["w"], f["z0"], tuple(f["w_indices"]), tuple(f["z0_indices"]))
                           for f in d.get("products", [])),
            recipe=d.get("recipe"))
    except ValueError as exc:
        raise CatalogError(f"{d['id']}: {exc}") from exc


def dumps_catalog(records: Iterable[VarietyRecord]) -> str:
    # one record per line keeps diffs of the shipped file readable
    lines = [json.dumps(record_to_json(r), separators=(", ", ": ")) for r in records]
    body = ",\n  ".join(lines)
    return '{"format": 1, "records": [\n  ' + body + "\n]}\n" if lines else '{"format": 1, "records": []}\n'


def dump_catalog(records: Iterable[VarietyRecord], path) -> None:
    Path(path).write_text(dumps_catalog(records))


def parse_catalog(text: str) -> list[VarietyRecord]:
    if not text.strip():
        return []
    try:
        data = json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"not valid JSON: {exc}") from exc
    try:
        _CATALOG_VALIDATOR.validate(data)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise CatalogError(f"schema violation at {path or '<root>'}: {exc.message}") from exc
    records = [record_from_json(d) for d in data["records"]]
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        raise CatalogError("duplicate record ids")
    return records


def _no_float(s):
    raise CatalogError(f"floating point value {s} in catalog; only integers are allowed")
