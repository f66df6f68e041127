"""Abstract syntax of extended AVL and its printer.

Paths are tuples of attribute names; the empty tuple is the empty path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

Path = tuple  # tuple[str, ...]


# descriptions


@dataclass(frozen=True)
class DAttr:
    attr: str
    body: "Desc"


@dataclass(frozen=True)
class DType:
    name: str


@dataclass(frozen=True)
class DLabel:
    label: str


@dataclass(frozen=True)
class DAnd:
    left: "Desc"
    right: "Desc"


@dataclass(frozen=True)
class DOr:
    left: "Desc"
    right: "Desc"


@dataclass(frozen=True)
class DTop:
    pass


Desc = Union[DAttr, DType, DLabel, DAnd, DOr, DTop]


# formulas


@dataclass(frozen=True)
class At:
    """``k . phi``"""

    label: str
    desc: Desc


@dataclass(frozen=True)
class PathEq:
    """``k.p == l.q``"""

    left: str
    lpath: Path
    right: str
    rpath: Path


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple  # of (label, path)


@dataclass(frozen=True)
class Wrapped:
    """``T:[x . phi]``"""

    wvar: str
    nvar: str
    desc: Desc


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Top:
    pass


Formula = Union[At, PathEq, Rel, Wrapped, And, Not, Top]


def conj(*parts: Formula) -> Formula:
    """Left-nested conjunction; Top for no arguments."""
    out: Formula = Top()
    for i, p in enumerate(parts):
        out = p if i == 0 else And(out, p)
    return out


def dconj(*parts: Desc) -> Desc:
    out: Desc = DTop()
    for i, p in enumerate(parts):
        out = p if i == 0 else DAnd(out, p)
    return out


# traversal


def iter_desc(d: Desc) -> Iterator[Desc]:
    yield d
    if isinstance(d, DAttr):
        yield from iter_desc(d.body)
    elif isinstance(d, (DAnd, DOr)):
        yield from iter_desc(d.left)
        yield from iter_desc(d.right)


def iter_formula(f: Formula) -> Iterator[Union[Formula, Desc]]:
    yield f
    if isinstance(f, (At, Wrapped)):
        yield from iter_desc(f.desc)
    elif isinstance(f, And):
        yield from iter_formula(f.left)
        yield from iter_formula(f.right)
    elif isinstance(f, Not):
        yield from iter_formula(f.body)


def formula_labels(f: Formula) -> set[str]:
    out: set[str] = set()
    for node in iter_formula(f):
        if isinstance(node, At):
            out.add(node.label)
        elif isinstance(node, Wrapped):
            out.update((node.wvar, node.nvar))
        elif isinstance(node, PathEq):
            out.update((node.left, node.right))
        elif isinstance(node, Rel):
            out.update(k for k, _ in node.args)
        elif isinstance(node, DLabel):
            out.add(node.label)
    return out


def attr_occurrences(f: Formula) -> int:
    """Number of attribute symbols written in ``f``."""
    n = 0
    for node in iter_formula(f):
        if isinstance(node, DAttr):
            n += 1
        elif isinstance(node, PathEq):
            n += len(node.lpath) + len(node.rpath)
        elif isinstance(node, Rel):
            n += sum(len(p) for _, p in node.args)
    return n


def formula_symbols(f: Formula) -> tuple[set, set, dict]:
    """Types, attributes and relation arities used by ``f``."""
    types: set = set()
    attrs: set = set()
    rels: dict = {}
    for node in iter_formula(f):
        if isinstance(node, DType):
            types.add(node.name)
        elif isinstance(node, DAttr):
            attrs.add(node.attr)
        elif isinstance(node, PathEq):
            attrs.update(node.lpath)
            attrs.update(node.rpath)
        elif isinstance(node, Rel):
            rels[node.name] = len(node.args)
            for _, p in node.args:
                attrs.update(p)
    return types, attrs, rels


# printing


def path_text(label: str, path: Path) -> str:
    return label + "".join("." + a for a in path)


def desc_text(d: Desc) -> str:
    if isinstance(d, DTop):
        return "TOP"
    if isinstance(d, DType):
        return d.name
    if isinstance(d, DLabel):
        return "#" + d.label
    if isinstance(d, DAttr):
        body = desc_text(d.body)
        if isinstance(d.body, (DAnd, DOr)):
            body = f"({body})"
        return f"{d.attr}:{body}"
    if isinstance(d, DAnd):
        left = desc_text(d.left)
        if isinstance(d.left, DOr):
            left = f"({left})"
        right = desc_text(d.right)
        if isinstance(d.right, (DAnd, DOr)):
            right = f"({right})"
        return f"{left} & {right}"
    if isinstance(d, DOr):
        right = desc_text(d.right)
        if isinstance(d.right, DOr):
            right = f"({right})"
        return f"{desc_text(d.left)} | {right}"
    raise TypeError(f"not a description: {d!r}")


def to_text(f: Formula) -> str:
    """Concrete syntax accepted by :func:`wrapframe.avl.parse`."""
    if isinstance(f, Top):
        return "TOP"
    if isinstance(f, At):
        body = desc_text(f.desc)
        if isinstance(f.desc, (DAnd, DOr)):
            body = f"({body})"
        return f"{f.label} . {body}"
    if isinstance(f, PathEq):
        return f"{path_text(f.left, f.lpath)} == {path_text(f.right, f.rpath)}"
    if isinstance(f, Rel):
        return f"{f.name}(" + ", ".join(path_text(k, p) for k, p in f.args) + ")"
    if isinstance(f, Wrapped):
        return f"{f.wvar}:[{f.nvar} . {desc_text(f.desc)}]"
    if isinstance(f, And):
        right = to_text(f.right)
        if isinstance(f.right, And):
            right = f"({right})"
        return f"{to_text(f.left)} & {right}"
    if isinstance(f, Not):
        return f"!({to_text(f.body)})"
    raise TypeError(f"not a formula: {f!r}")
