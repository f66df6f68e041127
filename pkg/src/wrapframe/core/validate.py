"""Well-formedness checks for models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .model import BASE, NODE_VAR, SIGILS, WRAP_VAR, Entity, Model, Wrap


@dataclass(frozen=True)
class Violation:
    invariant: str
    subject: Union[Entity, str, None]
    detail: str

    def __str__(self) -> str:
        return f"{self.invariant}: {self.detail}"


def validate(model: Model) -> list[Violation]:
    """Return every broken model invariant (empty when the model is valid)."""
    out: list[Violation] = []
    if not model.nodes:
        out.append(Violation("nonempty", None, "the model has no nodes"))

    seen: dict[int, Wrap] = {}
    for w in sorted(model.wrappings):
        members = model.wrappings[w]
        if not members:
            out.append(Violation("wrapping-nonempty", w, f"wrapping {w.id} is empty"))
        for v in sorted(members):
            if v not in model.nodes:
                out.append(Violation("wrapping-members", w, f"wrapping {w.id} lists unknown node {v}"))
            elif v in seen:
                out.append(
                    Violation("wrapping-disjoint", v, f"node {v} lies in {seen[v].id} and {w.id}")
                )
            else:
                seen[v] = w

    owner: dict[str, Entity] = {}
    for ent in model.entities():
        for lab in sorted(model.labels_of(ent)):
            if lab in owner:
                out.append(
                    Violation("label-function", lab, f"{lab} names both {owner[lab]} and {ent}")
                )
            owner.setdefault(lab, ent)
            if not lab or lab[0] not in SIGILS:
                out.append(Violation("label-sort", lab, f"{lab} has no sort sigil"))
            elif lab[0] == WRAP_VAR and not isinstance(ent, Wrap):
                out.append(Violation("label-sort", lab, f"wrapping variable {lab} names node {ent}"))
            elif lab[0] in (BASE, NODE_VAR) and isinstance(ent, Wrap):
                out.append(Violation("label-sort", lab, f"{lab} names wrapping {ent.id}"))

    for (src, a), dst in model.attrs.items():
        w = seen.get(src) if isinstance(src, int) else None
        if w is None:
            continue
        if not isinstance(dst, int) or seen.get(dst) != w:
            out.append(
                Violation(
                    "non-escapability",
                    src,
                    f"attribute {a} leaves wrapping {w.id} from node {src} to {dst}",
                )
            )

    # reachability: from labelled nodes of the same w-set
    blocks: dict[object, list[int]] = {}
    for v in model.nodes:
        blocks.setdefault(seen.get(v), []).append(v)
    for block, members in blocks.items():
        sources = [v for v in members if model.labels_of(v)]
        reach = model.reachable_from(sources)
        for v in sorted(members):
            if v not in reach:
                where = "the complement" if block is None else f"wrapping {block.id}"
                out.append(
                    Violation(
                        "reachability",
                        v,
                        f"node {v} is not reachable from a labelled node of {where}",
                    )
                )
    return out


def is_valid(model: Model) -> bool:
    return not validate(model)
