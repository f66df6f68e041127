"""Homomorphisms, subsumption, isomorphism, juxtaposition and unification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .avl.atoms import Atom, EqAtom, atom_labels, atom_size
from .core.model import Entity, Model, ModelBuilder, Signature, Wrap
from .minmodel.build import ModelConstructionError, model_from_factset, model_to_atoms
from .minmodel.factset import SaturationBudget, deduce


class SignatureMismatch(ValueError):
    pass


class LabelOverlapError(ValueError):
    pass


@dataclass(frozen=True)
class Homomorphism:
    node_map: Mapping[int, Entity]
    wrap_map: Mapping[Wrap, Wrap]

    def __call__(self, e: Entity) -> Entity:
        return self.wrap_map[e] if isinstance(e, Wrap) else self.node_map[e]

    def as_dict(self) -> dict:
        return {**self.node_map, **self.wrap_map}


def is_homomorphism(src: Model, dst: Model, h: Mapping[Entity, Entity]) -> bool:
    """Check the homomorphism conditions for an explicit entity map."""
    for e in src.entities():
        if e not in h:
            return False
        img = h[e]
        if isinstance(e, Wrap) and not isinstance(img, Wrap):
            return False
        if isinstance(e, int) and img not in dst.nodes and img not in dst.wrappings:
            return False
        if not src.types_of(e) <= dst.types_of(img):
            return False
        if not src.labels_of(e) <= dst.labels_of(img):
            return False
    for (s, a), d in src.attrs.items():
        if dst.attrs.get((h[s], a)) != h[d]:
            return False
    for name, args in src.relations:
        if (name, tuple(h[x] for x in args)) not in dst.relations:
            return False
    for w, members in src.wrappings.items():
        for v in members:
            img = h[v]
            if not isinstance(img, int) or img not in dst.wrappings[h[w]]:
                return False
    return True


def _check_signature(src: Model, dst: Model, signature: Optional[Signature]) -> None:
    if signature is None:
        return
    for m in (src, dst):
        s = m.signature()
        extra = (
            (s.types - signature.types)
            | (s.attributes - signature.attributes)
            | (set(s.relations) - set(signature.relations))
            | (s.labels - signature.labels)
        )
        if extra:
            raise SignatureMismatch(f"symbols outside the signature: {', '.join(sorted(extra))}")


def find_homomorphism(
    src: Model, dst: Model, signature: Optional[Signature] = None
) -> Optional[Homomorphism]:
    """The unique homomorphism ``src -> dst`` if there is one.

    The map is forced: labelled entities go to the entity carrying the same
    label, attribute edges push the map forward, and a wrapping goes to the
    wrapping of its members' images.
    """
    _check_signature(src, dst, signature)
    h: dict[Entity, Entity] = {}

    def assign(e: Entity, img: Optional[Entity]) -> bool:
        if img is None:
            return False
        if e in h:
            return h[e] == img
        h[e] = img
        todo.append(e)
        return True

    todo: list[Entity] = []
    for k, e in sorted(src.label_index.items()):
        if not assign(e, dst.lookup(k)):
            return None
    while True:
        while todo:
            e = todo.pop()
            for a, d in src.out_edges(e):
                if not assign(d, dst.attrs.get((h[e], a))):
                    return None
        # wrappings not reached otherwise follow their members
        progress = False
        for w in sorted(src.wrappings):
            if w in h:
                continue
            for v in sorted(src.wrappings[w]):
                if v in h:
                    img = h[v]
                    if not isinstance(img, int) or dst.wrapper_of(img) is None:
                        return None
                    assign(w, dst.wrapper_of(img))
                    progress = True
                    break
        if not progress:
            break
    if len(h) != len(src.nodes) + len(src.wrappings):
        return None
    if not is_homomorphism(src, dst, h):
        return None
    return Homomorphism(
        {v: h[v] for v in sorted(src.nodes)},
        {w: h[w] for w in sorted(src.wrappings)},
    )


def subsumes(a: Model, b: Model) -> bool:
    """``a`` subsumes ``b``: there is a homomorphism from ``a`` to ``b``."""
    return find_homomorphism(a, b) is not None


def is_isomorphic(a: Model, b: Model) -> bool:
    return subsumes(a, b) and subsumes(b, a)


def juxtapose(models: Sequence[Model]) -> Model:
    """Disjoint union of models with pairwise disjoint label sets."""
    seen: dict[str, int] = {}
    for i, m in enumerate(models):
        for k in m.all_labels():
            if k in seen:
                raise LabelOverlapError(
                    f"label {k} occurs in models {seen[k]} and {i}; use unify to merge shared labels"
                )
            seen[k] = i
    if len(models) == 1:
        return models[0]
    b = ModelBuilder()
    used: set = set()
    for m in models:
        ren: dict[Entity, Entity] = {}
        for v in sorted(m.nodes):
            ren[v] = b.node(m.labels_of(v), m.types_of(v))
        for w in sorted(m.wrappings):
            wid = w.id
            while wid in used:
                wid += "'"
            used.add(wid)
            ren[w] = b.wrapping(wid, (ren[v] for v in m.wrappings[w]), m.labels_of(w), m.types_of(w))
        for (s, a), d in m.attrs.items():
            b.edge(ren[s], a, ren[d])
        for name, args in m.relations:
            b.rel(name, *(ren[x] for x in args))
    return b.build()


@dataclass(frozen=True)
class UnifyResult:
    model: Optional[Model]
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.model is not None


# atoms only reach a wrapping through a wrapping variable, so unlabelled
# wrappings get a temporary one for the duration of a unification
_TEMP = "$_"


def _name_wrappings(m: Model, tag: str) -> Model:
    anon = [w for w in m.wrappings if not m.labels_of(w)]
    if not anon:
        return m
    b = m.to_builder()
    for w in anon:
        b.tag(w, labels=[f"{_TEMP}{tag}{w.id}"])
    return b.build()


def _strip_names(m: Model) -> Model:
    if not any(k.startswith(_TEMP) for k in m.all_labels()):
        return m
    b = m.to_builder()
    for e in list(b.labels):
        b.labels[e] = {k for k in b.labels[e] if not k.startswith(_TEMP)}
    return b.build()


def unify_explain(a: Model, b: Model, eqs: Iterable[Atom] = ()) -> UnifyResult:
    eqs = frozenset(eqs)
    for e in eqs:
        if not isinstance(e, EqAtom):
            raise TypeError(f"only path equations may be added, got {e!r}")
    try:
        atoms = model_to_atoms(_name_wrappings(a, "a")) | model_to_atoms(_name_wrappings(b, "b")) | eqs
    except ValueError as exc:
        return UnifyResult(None, str(exc))
    labels = set()
    for x in atoms:
        labels |= atom_labels(x)
    c0 = len(labels) + sum(atom_size(x) for x in atoms)
    u = deduce(atoms, SaturationBudget(c0))
    if u.contradictory:
        return UnifyResult(None, u.reason)
    problem = u.shape_problem()
    if problem:
        return UnifyResult(None, problem)
    try:
        return UnifyResult(_strip_names(model_from_factset(u)))
    except ModelConstructionError as exc:
        return UnifyResult(None, str(exc))


def unify(a: Model, b: Model, eqs: Iterable[Atom] = ()) -> Optional[Model]:
    """Least upper bound of ``a`` and ``b`` under the equations, or None."""
    return unify_explain(a, b, eqs).model

