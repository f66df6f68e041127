"""JSON round-tripping for models."""

from __future__ import annotations

import json
from typing import Any, Union

import jsonschema

from .model import Entity, Model, ModelBuilder, Wrap, entity_key

_REF = {
    "oneOf": [
        {"type": "integer"},
        {
            "type": "object",
            "properties": {"wrap": {"type": "string", "minLength": 1}},
            "required": ["wrap"],
            "additionalProperties": False,
        },
    ]
}
_STRS = {"type": "array", "items": {"type": "string", "minLength": 1}}

SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["nodes"],
    "additionalProperties": False,
    "properties": {
        "nodes": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id"],
                "additionalProperties": False,
                "properties": {"id": {"type": "integer"}, "labels": _STRS, "types": _STRS},
            },
        },
        "attrs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "attr", "to"],
                "additionalProperties": False,
                "properties": {"from": _REF, "attr": {"type": "string", "minLength": 1}, "to": _REF},
            },
        },
        "rels": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "args"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "args": {"type": "array", "minItems": 2, "items": _REF},
                },
            },
        },
        "wrappings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "members"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "labels": _STRS,
                    "types": _STRS,
                    "members": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


class SchemaError(ValueError):
    """A document that does not describe a model."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


def _ref_out(e: Entity) -> Any:
    return {"wrap": e.id} if isinstance(e, Wrap) else e


def _ref_in(x: Any) -> Entity:
    return Wrap(x["wrap"]) if isinstance(x, dict) else x


def serialize(model: Model) -> dict:
    nodes = []
    for v in sorted(model.nodes):
        entry: dict = {"id": v}
        if model.labels_of(v):
            entry["labels"] = sorted(model.labels_of(v))
        if model.types_of(v):
            entry["types"] = sorted(model.types_of(v))
        nodes.append(entry)
    doc: dict = {"nodes": nodes}
    attrs = [
        {"from": _ref_out(s), "attr": a, "to": _ref_out(d)}
        for (s, a), d in sorted(model.attrs.items(), key=lambda kv: (entity_key(kv[0][0]), kv[0][1]))
    ]
    if attrs:
        doc["attrs"] = attrs
    rels = [
        {"name": n, "args": [_ref_out(e) for e in args]}
        for n, args in sorted(model.relations, key=lambda r: (r[0], [entity_key(e) for e in r[1]]))
    ]
    if rels:
        doc["rels"] = rels
    wraps = []
    for w in sorted(model.wrappings):
        entry = {"id": w.id, "members": sorted(model.wrappings[w])}
        if model.labels_of(w):
            entry["labels"] = sorted(model.labels_of(w))
        if model.types_of(w):
            entry["types"] = sorted(model.types_of(w))
        wraps.append(entry)
    if wraps:
        doc["wrappings"] = wraps
    return doc


def _where(err: jsonschema.ValidationError) -> str:
    path = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
    return path or "<root>"


def deserialize(doc: Union[dict, str]) -> Model:
    """Build a model from a parsed document or from JSON text."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError([f"line {exc.lineno} column {exc.colno}: {exc.msg}"]) from None
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        raise SchemaError([f"{_where(e)}: {e.message}" for e in errors])
    b = ModelBuilder()
    try:
        for n in doc["nodes"]:
            b.node(n.get("labels", ()), n.get("types", ()), id=n["id"])
        for w in doc.get("wrappings", ()):
            b.wrapping(w["id"], w["members"], w.get("labels", ()), w.get("types", ()))
        for e in doc.get("attrs", ()):
            b.edge(_ref_in(e["from"]), e["attr"], _ref_in(e["to"]))
        for r in doc.get("rels", ()):
            b.rel(r["name"], *map(_ref_in, r["args"]))
        return b.build()
    except ValueError as exc:
        raise SchemaError([str(exc)]) from None


def dumps(model: Model) -> str:
    return json.dumps(serialize(model), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Model:
    return deserialize(text)


def load(path) -> Model:
    with open(path, encoding="utf-8") as fh:
        return deserialize(fh.read())
