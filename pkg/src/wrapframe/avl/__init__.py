"""Extended attribute-value logic: syntax, semantics and clausal form."""

from .atoms import (
    CNF,
    Atom,
    Clause,
    EqAtom,
    In,
    InWr,
    PathTop,
    PathType,
    RelAtom,
    Wr,
    atom_key,
    atom_labels,
    atom_size,
    atom_text,
    atoms_text,
    clause,
    cnf_from_atoms,
    eq,
)
from .cnf import to_cnf
from .parser import AvlSyntaxError, UnknownSymbolError, parse, parse_document
from .semantics import holds, satisfies, satisfies_cnf
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
    conj,
    dconj,
    desc_text,
    formula_labels,
    to_text,
)

__all__ = [name for name in dir() if not name.startswith("_")]
