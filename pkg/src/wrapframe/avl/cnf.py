"""Rewriting formulas into clause sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .atoms import CNF, Atom, Clause, In, InWr, PathTop, PathType, RelAtom, Wr, eq
from .syntax import (
    And,
    At,
    DAnd,
    DAttr,
    Desc,
    DLabel,
    DOr,
    DTop,
    DType,
    Formula,
    Not,
    PathEq,
    Rel,
    Top,
    Wrapped,
    attr_occurrences,
)

# a small propositional layer over atoms


@dataclass(frozen=True)
class PAtom:
    atom: Atom


@dataclass(frozen=True)
class PNot:
    body: "Prop"


@dataclass(frozen=True)
class PAnd:
    parts: tuple


@dataclass(frozen=True)
class POr:
    parts: tuple


@dataclass(frozen=True)
class PConst:
    value: bool


Prop = Union[PAtom, PNot, PAnd, POr, PConst]


def _desc_prop(d: Desc, label: str, path: tuple) -> Prop:
    if isinstance(d, DTop):
        return PAtom(PathTop(label, path))
    if isinstance(d, DType):
        return PAtom(PathType(label, path, d.name))
    if isinstance(d, DLabel):
        return PAtom(eq(label, path, d.label, ()))
    if isinstance(d, DAttr):
        return _desc_prop(d.body, label, path + (d.attr,))
    if isinstance(d, DAnd):
        return PAnd((_desc_prop(d.left, label, path), _desc_prop(d.right, label, path)))
    if isinstance(d, DOr):
        return POr((_desc_prop(d.left, label, path), _desc_prop(d.right, label, path)))
    raise TypeError(f"not a description: {d!r}")


def to_prop(f: Formula) -> Prop:
    """Flatten ``f`` into a boolean combination of atoms."""
    if isinstance(f, Top):
        return PConst(True)
    if isinstance(f, At):
        return PAnd(
            (
                PNot(PAtom(InWr(f.label))),
                PNot(PAtom(Wr(f.label))),
                _desc_prop(f.desc, f.label, ()),
            )
        )
    if isinstance(f, Wrapped):
        return PAnd((PAtom(In(f.nvar, f.wvar)), _desc_prop(f.desc, f.nvar, ())))
    if isinstance(f, PathEq):
        return PAtom(eq(f.left, f.lpath, f.right, f.rpath))
    if isinstance(f, Rel):
        return PAtom(RelAtom(f.name, tuple((k, tuple(p)) for k, p in f.args)))
    if isinstance(f, And):
        return PAnd((to_prop(f.left), to_prop(f.right)))
    if isinstance(f, Not):
        return PNot(to_prop(f.body))
    raise TypeError(f"not a formula: {f!r}")


def nnf(p: Prop, positive: bool = True) -> Prop:
    if isinstance(p, PConst):
        return PConst(p.value == positive)
    if isinstance(p, PAtom):
        return p if positive else PNot(p)
    if isinstance(p, PNot):
        return nnf(p.body, not positive)
    parts = tuple(nnf(q, positive) for q in p.parts)
    if isinstance(p, PAnd):
        return PAnd(parts) if positive else POr(parts)
    return POr(parts) if positive else PAnd(parts)


# clauses as (sigma, delta) pairs of frozensets while distributing

_Pair = tuple


def _clauses(p: Prop) -> set:
    if isinstance(p, PConst):
        return set() if p.value else {(frozenset(), frozenset())}
    if isinstance(p, PAtom):
        return {(frozenset(), frozenset([p.atom]))}
    if isinstance(p, PNot):
        return {(frozenset([p.body.atom]), frozenset())}
    if isinstance(p, PAnd):
        out: set = set()
        for q in p.parts:
            out |= _clauses(q)
        return out
    acc: set = {(frozenset(), frozenset())}
    for q in p.parts:
        sub = _clauses(q)
        acc = {(s1 | s2, d1 | d2) for s1, d1 in acc for s2, d2 in sub}
    return acc


def simplify(pairs: set) -> frozenset:
    """Drop tautologies and subsumed clauses."""
    live = [(s, d) for s, d in pairs if not (s & d)]
    live.sort(key=lambda c: len(c[0]) + len(c[1]))
    kept: list = []
    for s, d in live:
        if any(ks <= s and kd <= d for ks, kd in kept):
            continue
        kept.append((s, d))
    return frozenset(Clause(s, d) for s, d in kept)


def to_cnf(f: Formula) -> CNF:
    return CNF(simplify(_clauses(nnf(to_prop(f)))), attr_occurrences(f))


def prop_holds(p: Prop, truth) -> bool:
    """Evaluate ``p`` with ``truth(atom) -> bool``."""
    if isinstance(p, PConst):
        return p.value
    if isinstance(p, PAtom):
        return truth(p.atom)
    if isinstance(p, PNot):
        return not prop_holds(p.body, truth)
    if isinstance(p, PAnd):
        return all(prop_holds(q, truth) for q in p.parts)
    return any(prop_holds(q, truth) for q in p.parts)
