"""Minimal model sets."""

from __future__ import annotations

from typing import Optional, Sequence

from ..avl.atoms import CNF, Clause
from ..avl.cnf import to_cnf
from ..avl.syntax import Formula
from ..core.model import Model
from .build import model_from_factset
from .factset import SaturationBudget
from .saturate import antichain_reduce, saturate


def model_sort_key(m: Model) -> tuple:
    from ..core.jsonio import dumps

    return (len(m.nodes) + len(m.wrappings), dumps(m))


def minimal_model_set(
    phi: "Formula | CNF",
    budget: Optional[SaturationBudget] = None,
    reduce: bool = True,
    order: Optional[Sequence[Clause]] = None,
) -> list[Model]:
    """Models of the minimal fact-sets of ``phi``, deduplicated up to isomorphism.

    ``order`` is handed to :func:`saturate`; the result does not depend on it.
    """
    from ..morphism import is_isomorphic, subsumes

    cnf = phi if isinstance(phi, CNF) else to_cnf(phi)
    factsets = saturate(cnf, budget, order)
    if reduce:
        factsets = antichain_reduce(factsets)
    models = [model_from_factset(u) for u in factsets]
    if reduce:
        # a model strictly subsumed by another one adds nothing
        models = [
            m
            for m in models
            if not any(n is not m and subsumes(n, m) and not subsumes(m, n) for n in models)
        ]
    out: list[Model] = []
    for m in sorted(models, key=model_sort_key):
        if not any(is_isomorphic(m, n) for n in out):
            out.append(m)
    return out
