"""Direct evaluation of first-order formulas over finite structures."""

from __future__ import annotations

from itertools import product
from typing import Mapping, Optional

from .syntax import Equal, Exists, FAnd, FFalse, FNot, Fol, FOr, Forall, FTrue, Implies, Pred, free_vars
from .translate import FolStructure


class UnboundVariable(KeyError):
    pass


def fol_eval(s: FolStructure, f: Fol, env: Optional[Mapping[str, object]] = None) -> bool:
    """Truth of ``f`` in ``s`` under ``env``; quantifiers range over the domain.

    Results of subformulas are memoized on the values of their free
    variables, which keeps nested path chains polynomial.
    """
    memo: dict = {}

    def ev(g: Fol, env: dict) -> bool:
        fv = free_vars(g)
        try:
            key = (id(g), tuple(env[v] for v in sorted(fv)))
        except KeyError as exc:
            raise UnboundVariable(str(exc)) from None
        if key in memo:
            return memo[key]
        r = _ev(g, env)
        memo[key] = r
        return r

    def _ev(g: Fol, env: dict) -> bool:
        if isinstance(g, Pred):
            return s.holds(g.name, *(env[a] for a in g.args))
        if isinstance(g, Equal):
            return env[g.left] == env[g.right]
        if isinstance(g, FTrue):
            return True
        if isinstance(g, FFalse):
            return False
        if isinstance(g, FNot):
            return not ev(g.body, env)
        if isinstance(g, FAnd):
            return all(ev(p, env) for p in g.parts)
        if isinstance(g, FOr):
            return any(ev(p, env) for p in g.parts)
        if isinstance(g, Implies):
            return not ev(g.left, env) or ev(g.right, env)
        if isinstance(g, (Exists, Forall)):
            want = isinstance(g, Exists)
            for vals in product(s.domain, repeat=len(g.vars)):
                inner = dict(env)
                inner.update(zip(g.vars, vals))
                if ev(g.body, inner) == want:
                    return want
            return not want
        raise TypeError(f"not a first-order formula: {g!r}")

    # keep ``id`` keys stable: every visited subformula stays referenced by ``f``
    return ev(f, dict(env or {}))
