"""Satisfaction of formulas, atoms and clause sets in a model."""

from __future__ import annotations

from typing import Optional

from ..core.model import Entity, Model, Wrap
from .atoms import CNF, Atom, EqAtom, In, InWr, PathTop, PathType, RelAtom, Wr
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
)


def _desc_holds(m: Model, ent: Optional[Entity], d: Desc) -> bool:
    if ent is None:
        return False
    if isinstance(d, DTop):
        return True
    if isinstance(d, DType):
        return d.name in m.types_of(ent)
    if isinstance(d, DLabel):
        return m.lookup(d.label) == ent
    if isinstance(d, DAttr):
        return _desc_holds(m, m.attrs.get((ent, d.attr)), d.body)
    if isinstance(d, DAnd):
        return _desc_holds(m, ent, d.left) and _desc_holds(m, ent, d.right)
    if isinstance(d, DOr):
        return _desc_holds(m, ent, d.left) or _desc_holds(m, ent, d.right)
    raise TypeError(f"not a description: {d!r}")


def satisfies(m: Model, f: Formula) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, At):
        v = m.lookup(f.label)
        if not isinstance(v, int) or m.is_wrapped(v):
            return False
        return _desc_holds(m, v, f.desc)
    if isinstance(f, Wrapped):
        w, v = m.lookup(f.wvar), m.lookup(f.nvar)
        if not isinstance(w, Wrap) or not isinstance(v, int) or v not in m.wrappings[w]:
            return False
        return _desc_holds(m, v, f.desc)
    if isinstance(f, PathEq):
        a = m.resolve(f.left, f.lpath)
        return a is not None and a == m.resolve(f.right, f.rpath)
    if isinstance(f, Rel):
        args = tuple(m.resolve(k, p) for k, p in f.args)
        return None not in args and (f.name, args) in m.relations
    if isinstance(f, And):
        return satisfies(m, f.left) and satisfies(m, f.right)
    if isinstance(f, Not):
        return not satisfies(m, f.body)
    raise TypeError(f"not a formula: {f!r}")


def holds(m: Model, a: Atom) -> bool:
    """Flat atom semantics."""
    if isinstance(a, PathTop):
        return m.resolve(a.label, a.path) is not None
    if isinstance(a, PathType):
        e = m.resolve(a.label, a.path)
        return e is not None and a.type in m.types_of(e)
    if isinstance(a, EqAtom):
        e = m.resolve(a.left, a.lpath)
        return e is not None and e == m.resolve(a.right, a.rpath)
    if isinstance(a, RelAtom):
        args = tuple(m.resolve(k, p) for k, p in a.args)
        return None not in args and (a.name, args) in m.relations
    if isinstance(a, InWr):
        return m.is_wrapped(m.lookup(a.label))
    if isinstance(a, In):
        v, w = m.lookup(a.label), m.lookup(a.wrap)
        return isinstance(w, Wrap) and isinstance(v, int) and v in m.wrappings[w]
    if isinstance(a, Wr):
        return isinstance(m.lookup(a.label), Wrap)
    raise TypeError(f"not an atom: {a!r}")


def satisfies_cnf(m: Model, cnf: CNF) -> bool:
    for c in cnf.clauses:
        if all(holds(m, a) for a in c.sigma) and not any(holds(m, a) for a in c.delta):
            return False
    return True
