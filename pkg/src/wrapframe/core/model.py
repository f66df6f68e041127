"""Feature structures with wrappings: signature, model and builder.

Nodes are plain integers.  Wrappings are referenced through :class:`Wrap`,
so the two identifier spaces can never collide.  Labels are strings whose
first character gives their sort:

    @name   base label
    ?name   node variable
    $name   wrapping variable
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

BASE = "@"
NODE_VAR = "?"
WRAP_VAR = "$"
SIGILS = (BASE, NODE_VAR, WRAP_VAR)


def label_sort(label: str) -> str:
    """Return the sigil naming the sort of ``label``."""
    if not label or label[0] not in SIGILS or len(label) < 2:
        raise ValueError(f"label {label!r} lacks a sort sigil (@, ? or $)")
    return label[0]


def bare(label: str) -> str:
    return label[1:] if label and label[0] in SIGILS else label


@dataclass(frozen=True, order=True)
class Wrap:
    """Reference to a wrapping."""

    id: str

    def __str__(self) -> str:
        return f"<{self.id}>"


Entity = Union[int, Wrap]


def entity_key(e: Entity) -> tuple:
    if isinstance(e, Wrap):
        return (1, 0, e.id)
    return (0, e, "")


class _Complement:
    _inst: Optional["_Complement"] = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Complement"

    def __reduce__(self):
        return (_Complement, ())


COMPLEMENT = _Complement()
WSetRef = Union[_Complement, Wrap]


@dataclass(frozen=True)
class Signature:
    types: frozenset = frozenset()
    attributes: frozenset = frozenset()
    relations: Mapping[str, int] = field(default_factory=dict)
    base_labels: frozenset = frozenset()
    node_vars: frozenset = frozenset()
    wrapping_vars: frozenset = frozenset()

    __hash__ = None  # type: ignore[assignment]

    @property
    def labels(self) -> frozenset:
        return self.base_labels | self.node_vars | self.wrapping_vars

    def problems(self) -> list[str]:
        out = []
        pairs = [
            ("base_labels", "node_vars"),
            ("base_labels", "wrapping_vars"),
            ("node_vars", "wrapping_vars"),
        ]
        for a, b in pairs:
            both = getattr(self, a) & getattr(self, b)
            if both:
                out.append(f"{a} and {b} overlap: {sorted(both)}")
        for name, arity in self.relations.items():
            if arity < 2:
                out.append(f"relation {name} has arity {arity} < 2")
        for group in (self.types, self.attributes, self.relations, self.labels):
            if any(not n for n in group):
                out.append("empty symbol name")
        return out

    def union(self, other: "Signature") -> "Signature":
        rels = dict(self.relations)
        for name, arity in other.relations.items():
            if rels.setdefault(name, arity) != arity:
                raise ValueError(f"relation {name} used with arities {rels[name]} and {arity}")
        return Signature(
            self.types | other.types,
            self.attributes | other.attributes,
            rels,
            self.base_labels | other.base_labels,
            self.node_vars | other.node_vars,
            self.wrapping_vars | other.wrapping_vars,
        )

    @classmethod
    def from_labels(cls, labels: Iterable[str], **kw) -> "Signature":
        by_sort: dict[str, set] = {s: set() for s in SIGILS}
        for lab in labels:
            by_sort[label_sort(lab)].add(lab)
        return cls(
            base_labels=frozenset(by_sort[BASE]),
            node_vars=frozenset(by_sort[NODE_VAR]),
            wrapping_vars=frozenset(by_sort[WRAP_VAR]),
            **kw,
        )


@dataclass(frozen=True, eq=False)
class Model:
    """An FSW together with its label interpretation.

    ``attrs`` maps ``(source, attribute)`` to the target entity.  Sources and
    targets may be nodes or wrappings.  ``labels`` and ``types`` map entities to
    nonempty frozensets (entities without labels or types are simply absent).
    """

    nodes: frozenset
    wrappings: Mapping[Wrap, frozenset]
    labels: Mapping[Entity, frozenset]
    types: Mapping[Entity, frozenset]
    attrs: Mapping[tuple, Entity]
    relations: frozenset

    __hash__ = None  # type: ignore[assignment]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Model):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and dict(self.wrappings) == dict(other.wrappings)
            and dict(self.labels) == dict(other.labels)
            and dict(self.types) == dict(other.types)
            and dict(self.attrs) == dict(other.attrs)
            and self.relations == other.relations
        )

    def __repr__(self) -> str:
        return (
            f"Model({len(self.nodes)} nodes, {len(self.wrappings)} wrappings, "
            f"{len(self.attrs)} attrs, {len(self.relations)} rels)"
        )

    # lookups

    @cached_property
    def label_index(self) -> dict[str, Entity]:
        index: dict[str, Entity] = {}
        for ent in sorted(self.labels, key=entity_key):
            for lab in self.labels[ent]:
                index.setdefault(lab, ent)
        return index

    @cached_property
    def _wrapper(self) -> dict[int, Wrap]:
        out: dict[int, Wrap] = {}
        for w in sorted(self.wrappings):
            for v in self.wrappings[w]:
                out.setdefault(v, w)
        return out

    @cached_property
    def _out(self) -> dict[Entity, list[tuple[str, Entity]]]:
        out: dict[Entity, list[tuple[str, Entity]]] = {}
        for (src, a), dst in sorted(self.attrs.items(), key=lambda kv: (entity_key(kv[0][0]), kv[0][1])):
            out.setdefault(src, []).append((a, dst))
        return out

    def entities(self) -> list[Entity]:
        return sorted(self.nodes) + sorted(self.wrappings)

    def lookup(self, label: str) -> Optional[Entity]:
        return self.label_index.get(label)

    def resolve(self, label: str, path: Iterable[str] = ()) -> Optional[Entity]:
        cur = self.lookup(label)
        for a in path:
            if cur is None:
                return None
            cur = self.attrs.get((cur, a))
        return cur

    def wrapper_of(self, node: int) -> Optional[Wrap]:
        return self._wrapper.get(node)

    def w_set_of(self, node: int) -> WSetRef:
        if node not in self.nodes:
            raise KeyError(f"unknown node {node!r}")
        return self._wrapper.get(node, COMPLEMENT)

    def out_edges(self, ent: Entity) -> list[tuple[str, Entity]]:
        return self._out.get(ent, [])

    def labels_of(self, ent: Entity) -> frozenset:
        return self.labels.get(ent, frozenset())

    def types_of(self, ent: Entity) -> frozenset:
        return self.types.get(ent, frozenset())

    def is_wrapped(self, ent: Entity) -> bool:
        return isinstance(ent, int) and ent in self._wrapper

    @property
    def base_interp(self) -> dict[str, Entity]:
        return {k: e for k, e in self.label_index.items() if k[0] == BASE}

    @property
    def node_assign(self) -> dict[str, Entity]:
        return {k: e for k, e in self.label_index.items() if k[0] == NODE_VAR}

    @property
    def wrap_assign(self) -> dict[str, Entity]:
        return {k: e for k, e in self.label_index.items() if k[0] == WRAP_VAR}

    def all_labels(self) -> set[str]:
        return set(self.label_index)

    def signature(self) -> Signature:
        types = set()
        for ts in self.types.values():
            types |= ts
        rels: dict[str, int] = {}
        for name, args in self.relations:
            rels[name] = len(args)
        return Signature.from_labels(
            self.all_labels(),
            types=frozenset(types),
            attributes=frozenset(a for (_, a) in self.attrs),
            relations=rels,
        )

    def reachable_from(self, sources: Iterable[Entity]) -> set[Entity]:
        seen = set(sources)
        todo = deque(seen)
        while todo:
            cur = todo.popleft()
            for _, nxt in self.out_edges(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    def to_builder(self) -> "ModelBuilder":
        b = ModelBuilder()
        b.nodes = set(self.nodes)
        b.wrappings = {w: set(ms) for w, ms in self.wrappings.items()}
        b.labels = {e: set(ls) for e, ls in self.labels.items()}
        b.types = {e: set(ts) for e, ts in self.types.items()}
        b.attrs = dict(self.attrs)
        b.relations = set(self.relations)
        b._next = max(self.nodes, default=-1) + 1
        return b


class ModelBuilder:
    """Single-owner mutable assembly area for a :class:`Model`."""

    def __init__(self) -> None:
        self.nodes: set[int] = set()
        self.wrappings: dict[Wrap, set[int]] = {}
        self.labels: dict[Entity, set[str]] = {}
        self.types: dict[Entity, set[str]] = {}
        self.attrs: dict[tuple, Entity] = {}
        self.relations: set[tuple] = set()
        self._next = 0

    def node(self, labels: Iterable[str] = (), types: Iterable[str] = (), id: Optional[int] = None) -> int:
        if id is None:
            id = self._next
        if id in self.nodes:
            raise ValueError(f"duplicate node id {id}")
        self.nodes.add(id)
        self._next = max(self._next, id + 1)
        self.tag(id, labels, types)
        return id

    def wrapping(
        self,
        id: str,
        members: Iterable[int] = (),
        labels: Iterable[str] = (),
        types: Iterable[str] = (),
    ) -> Wrap:
        w = Wrap(id)
        if w in self.wrappings:
            raise ValueError(f"duplicate wrapping id {id!r}")
        self.wrappings[w] = set(members)
        self.tag(w, labels, types)
        return w

    def tag(self, ent: Entity, labels: Iterable[str] = (), types: Iterable[str] = ()) -> None:
        for lab in labels:
            self.labels.setdefault(ent, set()).add(lab)
        for t in types:
            self.types.setdefault(ent, set()).add(t)

    def edge(self, src: Entity, attr: str, dst: Entity) -> None:
        old = self.attrs.get((src, attr))
        if old is not None and old != dst:
            raise ValueError(f"attribute {attr} of {src} already points to {old}")
        self.attrs[(src, attr)] = dst

    def rel(self, name: str, *args: Entity) -> None:
        self.relations.add((name, tuple(args)))

    def build(self) -> Model:
        known = set(self.nodes) | set(self.wrappings)
        for (src, _), dst in self.attrs.items():
            for e in (src, dst):
                if e not in known:
                    raise ValueError(f"edge mentions unknown entity {e!r}")
        for name, args in self.relations:
            for e in args:
                if e not in known:
                    raise ValueError(f"relation {name} mentions unknown entity {e!r}")
        for w, ms in self.wrappings.items():
            for v in ms:
                if v not in self.nodes:
                    raise ValueError(f"wrapping {w.id} lists unknown node {v!r}")
        for ent in list(self.labels) + list(self.types):
            if ent not in known:
                raise ValueError(f"labels/types attached to unknown entity {ent!r}")
        return Model(
            nodes=frozenset(self.nodes),
            wrappings={w: frozenset(ms) for w, ms in self.wrappings.items()},
            labels={e: frozenset(ls) for e, ls in self.labels.items() if ls},
            types={e: frozenset(ts) for e, ts in self.types.items() if ts},
            attrs=dict(self.attrs),
            relations=frozenset(self.relations),
        )


