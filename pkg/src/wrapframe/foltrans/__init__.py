"""First-order translation of formulas, signatures and models."""

from .evaluate import UnboundVariable, fol_eval
from .smt import smt_term, to_smtlib
from .syntax import (
    IN,
    WR,
    Equal,
    Exists,
    FAnd,
    FFalse,
    FNot,
    Fol,
    FOr,
    Forall,
    FTrue,
    Implies,
    Pred,
    free_vars,
    predicates,
    to_sexpr,
    to_text,
)
from .translate import (
    Axiom,
    FolStructure,
    Fresh,
    element_name,
    formula_signature,
    path_formula,
    theory_axioms,
    translate_description,
    translate_formula,
    translate_model,
)

__all__ = [
    "Axiom",
    "Equal",
    "Exists",
    "FAnd",
    "FFalse",
    "FNot",
    "FOr",
    "FTrue",
    "Fol",
    "FolStructure",
    "Forall",
    "Fresh",
    "IN",
    "Implies",
    "Pred",
    "UnboundVariable",
    "WR",
    "element_name",
    "fol_eval",
    "formula_signature",
    "free_vars",
    "path_formula",
    "predicates",
    "smt_term",
    "theory_axioms",
    "to_sexpr",
    "to_smtlib",
    "to_text",
    "translate_description",
    "translate_formula",
    "translate_model",
]
