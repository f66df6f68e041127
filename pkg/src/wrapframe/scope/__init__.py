"""Quantified complexes: constraints, scope solving and transcription."""

from .complex import ComplexError, Fragment, QuantifiedComplex, Reading, free_fragments, plug, solve
from .constraints import (
    DEFAULT_RULES,
    Cond,
    ConstraintLoop,
    ConstraintSet,
    ConstraintSyntaxError,
    Rule,
    apply_constraints,
    default_constraints,
    parse_constraints,
)
from .instance import InstanceError, check_instance
from .transcribe import TranscriptionError, UnsupportedQuantifier, facts, to_gqt, transcribe

__all__ = [
    "ComplexError",
    "Cond",
    "ConstraintLoop",
    "ConstraintSet",
    "ConstraintSyntaxError",
    "DEFAULT_RULES",
    "Fragment",
    "InstanceError",
    "QuantifiedComplex",
    "Reading",
    "Rule",
    "TranscriptionError",
    "UnsupportedQuantifier",
    "apply_constraints",
    "check_instance",
    "default_constraints",
    "facts",
    "free_fragments",
    "parse_constraints",
    "plug",
    "solve",
    "to_gqt",
    "transcribe",
]
