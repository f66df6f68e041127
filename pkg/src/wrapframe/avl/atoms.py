"""Flat atoms, clauses and clause sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .syntax import Path, path_text

Term = tuple  # (label, path)


@dataclass(frozen=True)
class PathTop:
    label: str
    path: Path = ()


@dataclass(frozen=True)
class PathType:
    label: str
    path: Path
    type: str


@dataclass(frozen=True)
class EqAtom:
    """Path equality; build through :func:`eq` to get the normal orientation."""

    left: str
    lpath: Path
    right: str
    rpath: Path

    @property
    def terms(self) -> tuple[Term, Term]:
        return (self.left, self.lpath), (self.right, self.rpath)


@dataclass(frozen=True)
class RelAtom:
    name: str
    args: tuple  # of terms


@dataclass(frozen=True)
class InWr:
    label: str


@dataclass(frozen=True)
class In:
    label: str
    wrap: str


@dataclass(frozen=True)
class Wr:
    label: str


Atom = Union[PathTop, PathType, EqAtom, RelAtom, InWr, In, Wr]


def term_key(t: Term) -> tuple:
    return (len(t[1]), t[0], t[1])


def eq(k: str, p: Path, l: str, q: Path) -> Atom:
    """Normalized equality; a reflexive equality is just a definedness atom."""
    a, b = (k, tuple(p)), (l, tuple(q))
    if a == b:
        return PathTop(k, tuple(p))
    if term_key(b) < term_key(a):
        a, b = b, a
    return EqAtom(a[0], a[1], b[0], b[1])


def atom_labels(a: Atom) -> set[str]:
    if isinstance(a, (PathTop, PathType, InWr, Wr)):
        return {a.label}
    if isinstance(a, EqAtom):
        return {a.left, a.right}
    if isinstance(a, In):
        return {a.label, a.wrap}
    return {k for k, _ in a.args}


def atom_size(a: Atom) -> int:
    """Number of attribute symbols in ``a``."""
    if isinstance(a, (PathTop, PathType)):
        return len(a.path)
    if isinstance(a, EqAtom):
        return len(a.lpath) + len(a.rpath)
    if isinstance(a, RelAtom):
        return sum(len(p) for _, p in a.args)
    return 0


_ORDER = {PathTop: 0, PathType: 1, EqAtom: 2, RelAtom: 3, InWr: 4, In: 5, Wr: 6}


def atom_key(a: Atom) -> tuple:
    if isinstance(a, PathTop):
        body: tuple = (a.label, a.path)
    elif isinstance(a, PathType):
        body = (a.label, a.path, a.type)
    elif isinstance(a, EqAtom):
        body = (a.left, a.lpath, a.right, a.rpath)
    elif isinstance(a, RelAtom):
        body = (a.name, a.args)
    elif isinstance(a, In):
        body = (a.label, a.wrap)
    else:
        body = (a.label,)
    return (_ORDER[type(a)], body)


def atom_text(a: Atom) -> str:
    if isinstance(a, PathTop):
        return f"{path_text(a.label, a.path)}:TOP"
    if isinstance(a, PathType):
        return f"{path_text(a.label, a.path)}:{a.type}"
    if isinstance(a, EqAtom):
        return f"{path_text(a.left, a.lpath)} == {path_text(a.right, a.rpath)}"
    if isinstance(a, RelAtom):
        return f"{a.name}(" + ", ".join(path_text(k, p) for k, p in a.args) + ")"
    if isinstance(a, InWr):
        return f"INWR({a.label})"
    if isinstance(a, In):
        return f"IN({a.label}, {a.wrap})"
    return f"WR({a.label})"


def atoms_text(atoms: Iterable[Atom]) -> str:
    """Debug form: one atom per line in canonical order."""
    return "".join(atom_text(a) + "\n" for a in sorted(atoms, key=atom_key))


@dataclass(frozen=True)
class Clause:
    """``AND(sigma) -> OR(delta)``"""

    sigma: frozenset
    delta: frozenset

    @property
    def is_horn(self) -> bool:
        return len(self.delta) <= 1

    @property
    def is_integrity(self) -> bool:
        return not self.delta

    def key(self) -> tuple:
        return (
            sorted(map(atom_key, self.sigma)),
            sorted(map(atom_key, self.delta)),
        )

    def __str__(self) -> str:
        lhs = ", ".join(atom_text(a) for a in sorted(self.sigma, key=atom_key))
        rhs = " | ".join(atom_text(a) for a in sorted(self.delta, key=atom_key))
        return f"{{{lhs}}} => {{{rhs}}}"


def clause(sigma: Iterable[Atom] = (), delta: Iterable[Atom] = ()) -> Clause:
    return Clause(frozenset(sigma), frozenset(delta))


@dataclass(frozen=True)
class CNF:
    """A clause set plus the attribute-symbol count of its source formula."""

    clauses: frozenset
    weight: int = 0

    def ordered(self) -> list[Clause]:
        return sorted(self.clauses, key=Clause.key)

    def labels(self) -> set[str]:
        out: set[str] = set()
        for c in self.clauses:
            for a in c.sigma | c.delta:
                out |= atom_labels(a)
        return out

    def atoms(self) -> set:
        out: set = set()
        for c in self.clauses:
            out |= c.sigma | c.delta
        return out

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.ordered())

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.ordered())


def cnf_from_atoms(atoms: Iterable[Atom]) -> CNF:
    """Unit clauses for a set of positive atoms."""
    atoms = set(atoms)
    return CNF(frozenset(clause((), (a,)) for a in atoms), sum(map(atom_size, atoms)))
