"""Branching saturation of clause sets into fact-sets."""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from ..avl.atoms import CNF, Clause
from .factset import FactSet, SaturationBudget, c0_bound, deduce

log = logging.getLogger(__name__)


def _dedup(factsets) -> list[FactSet]:
    seen: dict = {}
    for u in factsets:
        seen.setdefault(u.key(), u)
    return list(seen.values())


def saturate(
    cnf: CNF,
    budget: Optional[SaturationBudget] = None,
    order: Optional[Sequence[Clause]] = None,
) -> list[FactSet]:
    """Saturate ``cnf`` into non-contradictory fact-sets.

    Passes over the clauses repeat until nothing changes.  A fact-set that
    does not meet a clause's premises is carried over, and one that already
    satisfies a clause is not branched again.  ``order`` fixes the clause
    order (the default is canonical).
    """
    budget = budget or c0_bound(cnf)
    clauses = list(order) if order is not None else cnf.ordered()
    frontier = [deduce((), budget)]
    passes = 0
    changed = True
    while changed and frontier:
        changed = False
        passes += 1
        for c in clauses:
            nxt: list[FactSet] = []
            for u in frontier:
                if not all(a in u for a in c.sigma) or any(a in u for a in c.delta):
                    nxt.append(u)
                    continue
                changed = True
                for rho in sorted(c.delta, key=str):
                    v = u.extend([rho])
                    if not v.contradictory:
                        nxt.append(v)
            frontier = _dedup(nxt)
    log.debug("saturation took %d passes, %d fact-sets", passes, len(frontier))
    out = [u for u in frontier if u.shape_problem() is None]
    return sorted(out, key=FactSet.sort_key)


def antichain_reduce(factsets: Sequence[FactSet]) -> list[FactSet]:
    """Drop every fact-set that strictly contains another one."""
    uniq = _dedup(factsets)
    keep = [u for u in uniq if not any(v is not u and v < u for v in uniq)]
    return sorted(keep, key=FactSet.sort_key)
