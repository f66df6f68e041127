"""Saturation, fact-sets and minimal model construction."""

from .build import (
    ModelConstructionError,
    NoLabelledContent,
    access_terms,
    describe,
    model_from_atoms,
    model_from_factset,
    model_to_atoms,
)
from .closure import Closure
from .factset import FactSet, SaturationBudget, c0_bound, deduce
from .mms import minimal_model_set, model_sort_key
from .saturate import antichain_reduce, saturate

__all__ = [
    "Closure",
    "FactSet",
    "ModelConstructionError",
    "NoLabelledContent",
    "SaturationBudget",
    "access_terms",
    "antichain_reduce",
    "c0_bound",
    "deduce",
    "describe",
    "minimal_model_set",
    "model_from_atoms",
    "model_from_factset",
    "model_sort_key",
    "model_to_atoms",
    "saturate",
]
