"""Quantified complexes and the free-fragment scope solver."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Optional

from ..core.model import Entity, Model, ModelBuilder, Wrap, entity_key
from .constraints import HOLE, SCOPE

log = logging.getLogger(__name__)


class ComplexError(ValueError):
    """The model is not a well-formed quantified complex."""


@dataclass(frozen=True)
class Fragment:
    root: Entity
    holes: tuple

    def __str__(self) -> str:
        return str(self.root) if isinstance(self.root, Wrap) else f"n{self.root}"


class QuantifiedComplex:
    """Read the scope structure off a model.

    Holes are the nodes typed ``hole``.  A dominance edge is a ``scope``
    relation leaving a hole.  A fragment is rooted at a wrapping or at a
    non-hole node; its holes are the ones it reaches by an attribute or by a
    ``scope`` relation (the latter is how connectives own their arguments).
    """

    def __init__(self, model: Model):
        self.model = model
        self.holes = frozenset(v for v in model.nodes if HOLE in model.types_of(v))
        dom = set()
        owner: dict[int, Entity] = {}
        for name, args in model.relations:
            if name != SCOPE or len(args) != 2:
                continue
            src, dst = args
            if src in self.holes:
                if dst in self.holes:
                    raise ComplexError(f"scope edge between two holes n{src} and n{dst}")
                dom.add((src, dst))
            elif dst in self.holes:
                self._own(owner, dst, src)
        for (src, _), dst in model.attrs.items():
            if dst in self.holes and src not in self.holes:
                self._own(owner, dst, src)
        self.dominance = frozenset(dom)
        self.owner = owner
        roots = {d for _, d in dom} | set(owner.values())
        by_root: dict[Entity, list] = {r: [] for r in roots}
        for h, r in owner.items():
            by_root[r].append(h)
        self.fragments = {
            r: Fragment(r, tuple(sorted(hs))) for r, hs in sorted(by_root.items(), key=lambda kv: entity_key(kv[0]))
        }
        tops = sorted(self.holes - set(owner))
        if len(tops) > 1:
            raise ComplexError(f"several top holes: {', '.join(f'n{h}' for h in tops)}")
        self.top = tops[0] if tops else None

    @staticmethod
    def _own(owner: dict, hole: int, root: Entity) -> None:
        if owner.get(hole, root) != root:
            raise ComplexError(f"hole n{hole} belongs to two fragments")
        owner[hole] = root

    @cached_property
    def _targets(self) -> dict:
        out: dict[int, set] = {}
        for h, x in self.dominance:
            out.setdefault(h, set()).add(x)
        return out

    def targets(self, hole: int) -> set:
        return self._targets.get(hole, set())

    def children(self, root: Entity, within: Iterable[Entity]) -> set:
        within = set(within)
        out = set()
        for h in self.fragments[root].holes:
            out |= self.targets(h) & within
        return out

    def free_fragments(self, within: Optional[Iterable[Entity]] = None) -> list[Fragment]:
        """Fragments with no ingoing dominance edge from inside ``within``."""
        s = set(self.fragments) if within is None else set(within)
        hit = set()
        for r in s:
            hit |= self.children(r, s)
        return [self.fragments[r] for r in sorted(s - hit, key=entity_key)]

    def components(self, within: Iterable[Entity]) -> list[frozenset]:
        s = set(within)
        adj: dict[Entity, set] = {r: set() for r in s}
        for r in s:
            for c in self.children(r, s):
                adj[r].add(c)
                adj[c].add(r)
        seen: set = set()
        out = []
        for r in sorted(s, key=entity_key):
            if r in seen:
                continue
            comp, todo = set(), [r]
            while todo:
                x = todo.pop()
                if x in comp:
                    continue
                comp.add(x)
                todo.extend(adj[x] - comp)
            seen |= comp
            out.append(frozenset(comp))
        return out


@dataclass(frozen=True)
class Reading:
    """One tree-shaped resolution of a complex."""

    model: Model
    root: Optional[Entity]
    plugs: Mapping[int, Entity]
    choices: tuple
    source: Model = field(repr=False, compare=False)

    @cached_property
    def complex(self) -> QuantifiedComplex:
        return QuantifiedComplex(self.source)

    def children(self, root: Entity) -> list[Entity]:
        frag = self.complex.fragments.get(root)
        return [self.plugs[h] for h in frag.holes] if frag else []

    def below(self, root: Entity) -> set:
        """Fragments in the subtree of ``root`` (itself included)."""
        out, todo = set(), [root]
        while todo:
            x = todo.pop()
            if x not in out:
                out.add(x)
                todo.extend(self.children(x))
        return out

    def outscopes(self, a: Entity, b: Entity) -> bool:
        """``a`` lies strictly above ``b``."""
        return a != b and b in self.below(a)

    def provenance(self) -> list[str]:
        return [str(self.complex.fragments[r]) for r in self.choices]


def _solve(qc: QuantifiedComplex, s: frozenset, memo: dict) -> list[tuple]:
    if s in memo:
        return memo[s]
    out: list[tuple] = []
    for frag in qc.free_fragments(s):
        rest = s - {frag.root}
        comps = qc.components(rest)
        under: dict[int, set] = {h: set() for h in frag.holes}
        ok = True
        for comp in comps:
            hs = [h for h in frag.holes if qc.targets(h) & comp]
            if len(hs) != 1:
                ok = False
                break
            under[hs[0]] |= comp
        if not ok or any(not under[h] for h in frag.holes):
            continue
        subs = [_solve(qc, frozenset(under[h]), memo) for h in frag.holes]
        if any(not x for x in subs):
            continue
        for combo in product(*subs):
            plugs: dict[int, Entity] = {}
            choices = [frag.root]
            for h, (sub_root, sub_plugs, sub_choices) in zip(frag.holes, combo):
                plugs[h] = sub_root
                plugs.update(sub_plugs)
                choices.extend(sub_choices)
            out.append((frag.root, plugs, tuple(choices)))
    memo[s] = out
    return out


def plug(model: Model, plugs: Mapping[int, Entity]) -> Model:
    """Merge every plugged hole into the entity filling it."""
    f = {e: plugs.get(e, e) for e in model.entities()}
    b = ModelBuilder()
    for v in sorted(model.nodes):
        if v not in plugs:
            b.node(id=v)
    for w in sorted(model.wrappings):
        b.wrapping(w.id, model.wrappings[w])
    for e in model.entities():
        b.tag(f[e], model.labels_of(e), model.types_of(e))
    for (s, a), d in model.attrs.items():
        b.edge(f[s], a, f[d])
    for name, args in model.relations:
        b.rel(name, *(f[x] for x in args))
    return b.build()


def solve(model: Model, max_readings: Optional[int] = None) -> list[Reading]:
    """Every reading of the complex, deduplicated up to isomorphism."""
    from ..morphism import is_isomorphic

    qc = QuantifiedComplex(model)
    if not qc.fragments:
        if qc.top is not None:
            return []
        return [Reading(model, None, {}, (), model)]
    raw = _solve(qc, frozenset(qc.fragments), {})
    log.debug("%d raw solutions", len(raw))
    out: list[Reading] = []
    for root, plugs, choices in raw:
        plugs = dict(plugs)
        if qc.top is not None:
            plugs[qc.top] = root
        m = plug(model, plugs)
        if any(is_isomorphic(m, r.model) for r in out):
            continue
        out.append(Reading(m, root, plugs, choices, model))
        if max_readings is not None and len(out) >= max_readings:
            break
    return out


def free_fragments(model: Model) -> list[Fragment]:
    return QuantifiedComplex(model).free_fragments()
