"""Fact-sets, the size bound and deduction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from ..avl.atoms import CNF, Atom, atom_key, atom_size, atoms_text
from .closure import Closure


@dataclass(frozen=True)
class SaturationBudget:
    c0: int

    def __post_init__(self):
        if self.c0 < 0:
            raise ValueError("the size bound must be nonnegative")


def c0_bound(cnf: CNF) -> SaturationBudget:
    """Labels of the clause set plus attribute symbols of its source formula."""
    return SaturationBudget(len(cnf.labels()) + cnf.weight)


class FactSet:
    """A deductively closed set of positive atoms.

    Membership (``atom in fs``) means the atom is entailed and has at most
    ``c0`` attribute symbols.  :attr:`atoms` materializes the whole set and is
    meant for small inputs, tests and debug output.
    """

    def __init__(self, closure: Closure, budget: SaturationBudget, seed: frozenset):
        self._closure = closure
        self.budget = budget
        self.seed = seed

    @property
    def closure(self) -> Closure:
        return self._closure

    @property
    def contradictory(self) -> bool:
        return self._closure.contradiction is not None

    @property
    def reason(self) -> Optional[str]:
        return self._closure.contradiction

    def holds(self, a: Atom) -> bool:
        return self._closure.holds(a)

    def __contains__(self, a: Atom) -> bool:
        return atom_size(a) <= self.budget.c0 and self._closure.holds(a)

    @cached_property
    def generators(self) -> frozenset:
        return self._closure.generators()

    @cached_property
    def atoms(self) -> frozenset:
        return self._closure.materialize(self.budget.c0)

    def key(self) -> frozenset:
        """Identifies the fact-set: equal keys mean equal atom sets."""
        return self.generators

    def issubset(self, other: "FactSet") -> bool:
        return all(a in other for a in self.generators)

    def __le__(self, other: "FactSet") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "FactSet") -> bool:
        return self.issubset(other) and not other.issubset(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactSet):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def extend(self, atoms: Iterable[Atom]) -> "FactSet":
        atoms = frozenset(atoms)
        if self.contradictory:
            return FactSet(self._closure, self.budget, self.seed | atoms)
        c = self._closure.copy()
        for a in sorted(atoms, key=atom_key):
            c.add(a)
        c.normalize()
        return FactSet(c, self.budget, self.seed | atoms)

    def shape_problem(self) -> Optional[str]:
        return self._closure.shape_problem()

    def text(self) -> str:
        return atoms_text(self.atoms)

    def sort_key(self) -> list:
        return sorted(map(atom_key, self.generators))

    def __repr__(self) -> str:
        state = "contradictory" if self.contradictory else f"{len(self.generators)} generators"
        return f"FactSet(c0={self.budget.c0}, {state})"


def deduce(facts: Iterable[Atom], budget: SaturationBudget) -> FactSet:
    """Close ``facts`` under the deduction schemata."""
    c = Closure()
    facts = frozenset(facts)
    for a in sorted(facts, key=atom_key):
        c.add(a)
    c.normalize()
    return FactSet(c, budget, facts)
