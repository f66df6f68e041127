"""A small first-order AST with two printers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

WR = "WR"
IN = "IN"


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple


@dataclass(frozen=True)
class Equal:
    left: str
    right: str


@dataclass(frozen=True)
class FTrue:
    pass


@dataclass(frozen=True)
class FFalse:
    pass


@dataclass(frozen=True)
class FNot:
    body: "Fol"


@dataclass(frozen=True)
class FAnd:
    parts: tuple


@dataclass(frozen=True)
class FOr:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    left: "Fol"
    right: "Fol"


@dataclass(frozen=True)
class Exists:
    vars: tuple
    body: "Fol"


@dataclass(frozen=True)
class Forall:
    vars: tuple
    body: "Fol"


Fol = Union[Pred, Equal, FTrue, FFalse, FNot, FAnd, FOr, Implies, Exists, Forall]


def pred(name: str, *args: str) -> Pred:
    return Pred(name, tuple(args))


def land(*parts: Fol) -> Fol:
    flat = []
    for p in parts:
        if isinstance(p, FTrue):
            continue
        if isinstance(p, FFalse):
            return p
        flat.extend(p.parts if isinstance(p, FAnd) else (p,))
    if not flat:
        return FTrue()
    return flat[0] if len(flat) == 1 else FAnd(tuple(flat))


def lor(*parts: Fol) -> Fol:
    flat = []
    for p in parts:
        if isinstance(p, FFalse):
            continue
        if isinstance(p, FTrue):
            return p
        flat.extend(p.parts if isinstance(p, FOr) else (p,))
    if not flat:
        return FFalse()
    return flat[0] if len(flat) == 1 else FOr(tuple(flat))


def exists(vars: Iterable[str], body: Fol) -> Fol:
    vars = tuple(vars)
    return Exists(vars, body) if vars else body


def forall(vars: Iterable[str], body: Fol) -> Fol:
    vars = tuple(vars)
    return Forall(vars, body) if vars else body


@lru_cache(maxsize=None)
def free_vars(f: Fol) -> frozenset:
    if isinstance(f, Pred):
        return frozenset(f.args)
    if isinstance(f, Equal):
        return frozenset((f.left, f.right))
    if isinstance(f, (FTrue, FFalse)):
        return frozenset()
    if isinstance(f, FNot):
        return free_vars(f.body)
    if isinstance(f, (FAnd, FOr)):
        out: frozenset = frozenset()
        for p in f.parts:
            out |= free_vars(p)
        return out
    if isinstance(f, Implies):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - frozenset(f.vars)
    raise TypeError(f"not a first-order formula: {f!r}")


def predicates(f: Fol, out: dict | None = None) -> dict:
    """Predicate symbols of ``f`` with their arities."""
    out = {} if out is None else out
    if isinstance(f, Pred):
        out[f.name] = len(f.args)
    elif isinstance(f, FNot):
        predicates(f.body, out)
    elif isinstance(f, (FAnd, FOr)):
        for p in f.parts:
            predicates(p, out)
    elif isinstance(f, Implies):
        predicates(f.left, out)
        predicates(f.right, out)
    elif isinstance(f, (Exists, Forall)):
        predicates(f.body, out)
    return out


def to_text(f: Fol) -> str:
    """Readable infix form, e.g. ``exists u0. (t(u0) & P(u0, u1))``."""
    if isinstance(f, Pred):
        return f"{f.name}({', '.join(f.args)})"
    if isinstance(f, Equal):
        return f"{f.left} = {f.right}"
    if isinstance(f, FTrue):
        return "true"
    if isinstance(f, FFalse):
        return "false"
    if isinstance(f, FNot):
        return f"~{_wrap(f.body)}"
    if isinstance(f, FAnd):
        return " & ".join(_wrap(p) for p in f.parts)
    if isinstance(f, FOr):
        return " | ".join(_wrap(p) for p in f.parts)
    if isinstance(f, Implies):
        return f"{_wrap(f.left)} -> {_wrap(f.right)}"
    if isinstance(f, Exists):
        return f"exists {', '.join(f.vars)}. {_wrap(f.body)}"
    if isinstance(f, Forall):
        return f"forall {', '.join(f.vars)}. {_wrap(f.body)}"
    raise TypeError(f"not a first-order formula: {f!r}")


def _wrap(f: Fol) -> str:
    if isinstance(f, (Pred, Equal, FTrue, FFalse, FNot)):
        return to_text(f)
    return f"({to_text(f)})"


def to_sexpr(f: Fol) -> str:
    """Prefix notation; predicate names are written verbatim."""
    if isinstance(f, Pred):
        return f"({f.name} {' '.join(f.args)})"
    if isinstance(f, Equal):
        return f"(= {f.left} {f.right})"
    if isinstance(f, FTrue):
        return "true"
    if isinstance(f, FFalse):
        return "false"
    if isinstance(f, FNot):
        return f"(not {to_sexpr(f.body)})"
    if isinstance(f, FAnd):
        return f"(and {' '.join(map(to_sexpr, f.parts))})"
    if isinstance(f, FOr):
        return f"(or {' '.join(map(to_sexpr, f.parts))})"
    if isinstance(f, Implies):
        return f"(=> {to_sexpr(f.left)} {to_sexpr(f.right)})"
    if isinstance(f, (Exists, Forall)):
        q = "exists" if isinstance(f, Exists) else "forall"
        return f"({q} ({' '.join(f.vars)}) {to_sexpr(f.body)})"
    raise TypeError(f"not a first-order formula: {f!r}")
