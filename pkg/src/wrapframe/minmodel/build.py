"""Turning fact-sets into models and models back into atoms.

The builder below deliberately does not reuse :class:`Closure`; it follows
the four construction steps directly on an atom set, so the two code paths
check each other in the tests.
"""

from __future__ import annotations

from typing import Iterable, Union

from ..avl.atoms import (
    Atom,
    EqAtom,
    In,
    InWr,
    PathTop,
    PathType,
    RelAtom,
    Wr,
    eq,
    term_key,
)
from ..core.model import WRAP_VAR, Entity, Model, ModelBuilder, Wrap, bare, entity_key
from ..core.validate import validate
from .factset import FactSet


class ModelConstructionError(RuntimeError):
    """The atoms do not describe a valid model (a saturation bug upstream)."""


class NoLabelledContent(ValueError):
    """The fact-set mentions no label, so there is nothing to build."""


class _Graph:
    def __init__(self) -> None:
        self.parent: list[int] = []
        self.edges: list[dict[str, int]] = []
        self.at_label: dict[str, int] = {}

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def fresh(self) -> int:
        self.parent.append(len(self.parent))
        self.edges.append({})
        return len(self.parent) - 1

    def label(self, k: str) -> int:
        if k not in self.at_label:
            self.at_label[k] = self.fresh()
        return self.find(self.at_label[k])

    def walk(self, k: str, path) -> int:
        x = self.label(k)
        for a in path:
            if a not in self.edges[x]:
                self.edges[x][a] = self.fresh()
            x = self.find(self.edges[x][a])
        return x

    def merge(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            x, y = (self.find(z) for z in pending.pop())
            if x == y:
                continue
            self.parent[y] = x
            for attr, t in self.edges[y].items():
                if attr in self.edges[x]:
                    pending.append((self.edges[x][attr], t))
                else:
                    self.edges[x][attr] = t
            self.edges[y] = {}


def _terms_of(a: Atom) -> list:
    if isinstance(a, (PathTop, PathType)):
        return [(a.label, a.path)]
    if isinstance(a, EqAtom):
        return [(a.left, a.lpath), (a.right, a.rpath)]
    if isinstance(a, RelAtom):
        return list(a.args)
    if isinstance(a, In):
        return [(a.label, ()), (a.wrap, ())]
    return [(a.label, ())]


def model_from_atoms(atoms: Iterable[Atom]) -> Model:
    atoms = list(atoms)
    g = _Graph()
    # step 1: a node per label, then the paths
    for a in atoms:
        for k, p in _terms_of(a):
            g.walk(k, p)
    if not g.at_label:
        raise NoLabelledContent("no labelled content: a model needs at least one node")
    # step 2: equalities
    for a in atoms:
        if isinstance(a, EqAtom):
            g.merge(g.walk(a.left, a.lpath), g.walk(a.right, a.rpath))
    # step 3: types and relations
    types: dict[int, set] = {}
    rels: set = set()
    for a in atoms:
        if isinstance(a, PathType):
            types.setdefault(g.walk(a.label, a.path), set()).add(a.type)
        elif isinstance(a, RelAtom):
            rels.add((a.name, tuple(g.walk(k, p) for k, p in a.args)))
    # step 4: wrappings
    is_wrap: set = set()
    member_of: dict[int, int] = {}
    inwr: set = set()
    for k in g.at_label:
        if k.startswith(WRAP_VAR):
            is_wrap.add(g.label(k))
    for a in atoms:
        if isinstance(a, Wr):
            is_wrap.add(g.label(a.label))
        elif isinstance(a, InWr):
            inwr.add(g.label(a.label))
        elif isinstance(a, In):
            v, w = g.label(a.label), g.label(a.wrap)
            is_wrap.add(w)
            if member_of.get(v, w) != w:
                raise ModelConstructionError(f"{a.label} is asked to lie in two wrappings")
            member_of[v] = w
    anon: dict[int, int] = {}
    for v in sorted(inwr):
        if v not in member_of:
            anon[v] = len(anon)
            member_of[v] = -1 - anon[v]
    # anonymous wrappings reached from one another are the same wrapping
    alias: dict[int, int] = {}

    def home(w: int) -> int:
        while w in alias:
            w = alias[w]
        return w

    todo = list(member_of)
    while todo:
        v = todo.pop()
        for t in g.edges[v].values():
            t = g.find(t)
            if t in is_wrap:
                raise ModelConstructionError("an attribute leads from a wrapped node to a wrapping")
            if t not in member_of:
                member_of[t] = member_of[v]
                todo.append(t)
                continue
            a, b = home(member_of[t]), home(member_of[v])
            if a == b:
                continue
            if a >= 0 and b >= 0:
                raise ModelConstructionError("an attribute crosses a wrapping boundary")
            if a < 0:
                alias[a] = b
            else:
                alias[b] = a
            todo.append(t)
    member_of = {v: home(w) for v, w in member_of.items()}

    # numbering: classes ordered by their shortest access term
    labels: dict[int, set] = {}
    for k in g.at_label:
        labels.setdefault(g.label(k), set()).add(k)
    order: dict[int, tuple] = {}
    layer = sorted(((k, ()) for k in g.at_label), key=term_key)
    for k, p in layer:
        order.setdefault(g.label(k), term_key((k, p)))
    frontier = [(k, ()) for k, _ in layer]
    while frontier:
        nxt = []
        for k, p in frontier:
            x = g.walk(k, p)
            for attr in sorted(g.edges[x]):
                y = g.find(g.edges[x][attr])
                if y not in order:
                    order[y] = term_key((k, p + (attr,)))
                    nxt.append((k, p + (attr,)))
        frontier = sorted(nxt, key=term_key)
    classes = sorted({g.find(x) for x in range(len(g.parent))} & set(order), key=lambda x: order[x])

    b = ModelBuilder()
    ent: dict[int, Entity] = {}
    used: set = set()
    for x in classes:
        if x in is_wrap:
            names = sorted(bare(k) for k in labels.get(x, ()))
            wid = names[0] if names else f"_w{len(used)}"
            while wid in used:
                wid += "'"
            used.add(wid)
            ent[x] = b.wrapping(wid, (), labels.get(x, ()), types.get(x, ()))
        else:
            ent[x] = b.node(labels.get(x, ()), types.get(x, ()))
    anon_wraps: dict[int, Wrap] = {}
    for v, w in member_of.items():
        if v in is_wrap:
            raise ModelConstructionError("a wrapping is asked to lie inside a wrapping")
        if w < 0:
            if w not in anon_wraps:
                wid = f"_a{-1 - w}"
                while wid in used:
                    wid += "'"
                used.add(wid)
                anon_wraps[w] = b.wrapping(wid)
            b.wrappings[anon_wraps[w]].add(ent[v])
        else:
            b.wrappings[ent[w]].add(ent[v])
    for x in classes:
        for attr, y in g.edges[x].items():
            b.edge(ent[x], attr, ent[g.find(y)])
    for name, args in rels:
        b.rel(name, *(ent[g.find(y)] for y in args))
    return b.build()


def model_from_factset(u: Union[FactSet, Iterable[Atom]]) -> Model:
    """Build the model described by a non-contradictory fact-set."""
    if isinstance(u, FactSet):
        if u.contradictory:
            raise ModelConstructionError(f"contradictory fact-set: {u.reason}")
        atoms: Iterable[Atom] = u.generators
    else:
        atoms = u
    m = model_from_atoms(atoms)
    problems = validate(m)
    if problems:
        raise ModelConstructionError("; ".join(map(str, problems)))
    return m


def access_terms(m: Model) -> dict[Entity, tuple]:
    """Shortest access term (label, path) of every reachable entity."""
    canon: dict[Entity, tuple] = {}
    for k in sorted(m.label_index, key=lambda k: term_key((k, ()))):
        canon.setdefault(m.label_index[k], (k, ()))
    frontier = sorted(canon.values(), key=term_key)
    while frontier:
        found: dict[Entity, tuple] = {}
        for k, p in frontier:
            e = m.resolve(k, p)
            for attr, d in m.out_edges(e):
                if d in canon:
                    continue
                t = (k, p + (attr,))
                if d not in found or term_key(t) < term_key(found[d]):
                    found[d] = t
        canon.update(found)
        frontier = sorted(found.values(), key=term_key)
    return canon


def model_to_atoms(m: Model) -> frozenset:
    """A fact presentation of ``m`` from which ``model_from_atoms`` rebuilds it."""
    canon = access_terms(m)
    out: set = set()
    for ent in m.entities():
        if ent not in canon:
            if isinstance(ent, Wrap) and not any(
                m.labels_of(v) for v in m.wrappings[ent]
            ):
                raise ValueError(f"wrapping {ent.id} has no labelled member")
            if isinstance(ent, int):
                raise ValueError(f"node {ent} is not accessible from any label")
            continue
        k, p = canon[ent]
        for lab in m.labels_of(ent):
            out.add(eq(lab, (), k, p))
        for t in m.types_of(ent):
            out.add(PathType(k, p, t))
        for attr, d in m.out_edges(ent):
            out.add(eq(k, p + (attr,), *canon[d]))
    for name, args in m.relations:
        out.add(RelAtom(name, tuple(canon[a] for a in args)))
    for w, members in m.wrappings.items():
        wlabels = m.labels_of(w)
        if not wlabels and w in canon:
            raise ValueError(f"unlabelled wrapping {w.id} is attribute-accessible; atoms cannot name it")
        for lab in wlabels:
            out.add(Wr(lab))
        for v in members:
            for lab in m.labels_of(v):
                out.add(InWr(lab))
                for wl in wlabels:
                    out.add(In(lab, wl))
    return frozenset(out)


def describe(m: Model) -> list[str]:
    """Short human description, one entity per line (debug aid)."""
    lines = []
    for e in sorted(m.entities(), key=entity_key):
        labs = ",".join(sorted(m.labels_of(e)))
        types = ",".join(sorted(m.types_of(e)))
        lines.append(f"{e} [{labs}] {types}".rstrip())
    return lines

