"""FSW data model, validation and serialization."""

from .dot import to_dot
from .jsonio import SchemaError, deserialize, dumps, load, loads, serialize
from .model import (
    BASE,
    COMPLEMENT,
    NODE_VAR,
    WRAP_VAR,
    Entity,
    Model,
    ModelBuilder,
    Signature,
    Wrap,
    WSetRef,
    bare,
    entity_key,
    label_sort,
)
from .validate import Violation, is_valid, validate


def w_set_of(model: Model, node: int) -> WSetRef:
    """Block of the node partition containing ``node``."""
    return model.w_set_of(node)


__all__ = [
    "BASE", "COMPLEMENT", "NODE_VAR", "WRAP_VAR", "Entity", "Model", "ModelBuilder",
    "SchemaError", "Signature", "Violation", "Wrap", "WSetRef", "bare", "deserialize",
    "dumps", "entity_key", "is_valid", "label_sort", "load", "loads", "serialize",
    "to_dot", "validate", "w_set_of",
]
