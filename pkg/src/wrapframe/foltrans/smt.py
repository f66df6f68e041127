"""SMT-LIB style export, for checking with an external solver.

Best effort: every element lives in one uninterpreted sort ``E`` and every
predicate becomes a Boolean function.  Names are written as quoted symbols.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .syntax import Equal, Exists, FAnd, FFalse, FNot, Fol, FOr, Forall, FTrue, Implies, Pred, predicates
from .translate import FolStructure, element_name


def _sym(name: str) -> str:
    if name.replace("_", "").isalnum() and not name[0].isdigit():
        return name
    return "|" + name.replace("|", "_").replace("\\", "_") + "|"


def smt_term(f: Fol) -> str:
    if isinstance(f, Pred):
        return f"({_sym(f.name)} {' '.join(map(_sym, f.args))})"
    if isinstance(f, Equal):
        return f"(= {_sym(f.left)} {_sym(f.right)})"
    if isinstance(f, FTrue):
        return "true"
    if isinstance(f, FFalse):
        return "false"
    if isinstance(f, FNot):
        return f"(not {smt_term(f.body)})"
    if isinstance(f, FAnd):
        return f"(and {' '.join(map(smt_term, f.parts))})"
    if isinstance(f, FOr):
        return f"(or {' '.join(map(smt_term, f.parts))})"
    if isinstance(f, Implies):
        return f"(=> {smt_term(f.left)} {smt_term(f.right)})"
    if isinstance(f, (Exists, Forall)):
        q = "exists" if isinstance(f, Exists) else "forall"
        binds = " ".join(f"({_sym(v)} E)" for v in f.vars)
        return f"({q} ({binds}) {smt_term(f.body)})"
    raise TypeError(f"not a first-order formula: {f!r}")


def to_smtlib(
    formulas: Iterable[Fol],
    structure: Optional[FolStructure] = None,
    check: bool = True,
) -> str:
    """A script asserting ``formulas`` (and the facts of ``structure``)."""
    formulas = list(formulas)
    arities: dict = {}
    for f in formulas:
        predicates(f, arities)
    if structure is not None:
        for name, args in structure.iter_facts():
            arities[name] = len(args)
    lines = ["(set-logic UF)", "(declare-sort E 0)"]
    for name in sorted(arities):
        lines.append(f"(declare-fun {_sym(name)} ({' '.join(['E'] * arities[name])}) Bool)")
    if structure is not None:
        names = [element_name(e) for e in structure.domain]
        for n in names:
            lines.append(f"(declare-const {_sym(n)} E)")
        if len(names) > 1:
            lines.append(f"(assert (distinct {' '.join(map(_sym, names))}))")
        for name, args in structure.iter_facts():
            lines.append(f"(assert ({_sym(name)} {' '.join(_sym(element_name(a)) for a in args)}))")
    for f in formulas:
        lines.append(f"(assert {smt_term(f)})")
    if check:
        lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
