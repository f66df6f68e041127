"""Transcription of solved readings into first-order formulas."""

from __future__ import annotations

from typing import Iterable

from ..avl.atoms import PathTop, PathType, RelAtom, eq, term_key
from ..core.model import BASE, NODE_VAR, Entity, Model, Wrap, bare
from ..foltrans.syntax import Equal, FNot, Fol, Implies, exists, forall, land, pred, to_text
from .complex import Reading

UNIVERSAL = ("every", "univ-quant")
EXISTENTIAL = ("some", "a", "exist-quant")
NEGATIVE = ("no",)
CONJUNCTION = ("conj",)
UNSUPPORTED = ("most", "the", "always", "neg")
_GQT_NAMES = ("every", "some", "a", "no", "most", "the", "always", "neg", "conj")


class TranscriptionError(ValueError):
    pass


class UnsupportedQuantifier(TranscriptionError):
    pass


def _order(m: Model, block: set) -> list[tuple[int, tuple]]:
    """Nodes of ``block`` with their access terms from labelled members.

    Roots without an ingoing edge come first, then breadth-first order.
    """
    incoming = {d for (s, _), d in m.attrs.items() if s in block and d in block}
    starts = []
    for v in block:
        for k in m.labels_of(v):
            starts.append((v in incoming, term_key((k, ())), v, k))
    canon: dict[int, tuple] = {}
    order: list[int] = []
    frontier: list[tuple[int, tuple]] = []
    for _, _, v, k in sorted(starts):
        if v not in canon:
            canon[v] = (k, ())
            order.append(v)
            frontier.append((v, (k, ())))
    while frontier:
        nxt = []
        for v, (k, p) in frontier:
            for a, d in m.out_edges(v):
                if d in block and d not in canon:
                    canon[d] = (k, p + (a,))
                    order.append(d)
                    nxt.append((d, canon[d]))
        frontier = nxt
    missing = block - set(canon)
    if missing:
        raise TranscriptionError(f"nodes {sorted(missing)} are not reachable from a labelled member")
    return [(v, canon[v]) for v in order]


def facts(m: Model, block: Iterable[int]) -> list:
    """A sufficient fact-set describing the nodes of ``block``.

    Each node is named by its access term; edges whose target carries no
    other atom show up as existence atoms, converging edges as equations.
    """
    block = set(block)
    order = _order(m, block)
    canon = dict(order)
    out: list = []
    described = set()
    for v, t in order:
        for lab in sorted(m.labels_of(v)):
            if (lab, ()) != t:
                out.append(eq(lab, (), *t))
        for ty in sorted(m.types_of(v)):
            out.append(PathType(t[0], t[1], ty))
        if m.types_of(v) or m.labels_of(v):
            described.add(v)
    for v, (k, p) in order:
        for a, d in m.out_edges(v):
            if d not in block:
                continue
            if canon[d] == (k, p + (a,)):
                if d not in described and not any(x in block for _, x in m.out_edges(d)):
                    out.append(PathTop(k, p + (a,)))
            else:
                out.append(eq(k, p + (a,), *canon[d]))
    for name, args in sorted(m.relations, key=lambda r: (r[0], [str(x) for x in r[1]])):
        if all(x in block for x in args):
            out.append(RelAtom(name, tuple(canon[x] for x in args)))
    return out


class _Ctx:
    def __init__(self, reading: Reading):
        self.r = reading
        self.m = reading.source
        taken = {bare(k) for k in self.m.all_labels()}
        self.taken = taken
        self.n = 0

    def fresh(self, base: str = "u") -> str:
        while True:
            name = base if self.n == 0 and base == "u" else f"{base}{self.n}"
            self.n += 1
            if name not in self.taken:
                self.taken.add(name)
                return name

    def kind(self, e: Entity) -> str:
        ts = self.m.types_of(e)
        bad = sorted(ts & set(UNSUPPORTED))
        if bad:
            raise UnsupportedQuantifier(f"unsupported quantifier: no transcription rule for {', '.join(bad)}")
        for group, name in (
            (UNIVERSAL, "every"),
            (NEGATIVE, "no"),
            (EXISTENTIAL, "some"),
            (CONJUNCTION, "conj"),
        ):
            if ts & set(group):
                return name
        raise UnsupportedQuantifier(f"node n{e} has no quantifier type")

    def attr(self, e: Entity, a: str) -> Entity:
        d = self.m.attrs.get((e, a))
        if d is None:
            raise TranscriptionError(f"quantifier n{e} has no {a}")
        return d

    def hole_child(self, e: Entity, a: str) -> Entity:
        h = self.attr(e, a)
        if h not in self.r.plugs:
            raise TranscriptionError(f"unresolved hole n{h}")
        return self.r.plugs[h]


def _block_form(ctx: _Ctx, block: set, gamma: dict) -> Fol:
    m = ctx.m
    order = _order(m, block)
    var: dict[int, str] = {}
    for v, _ in order:
        nvars = sorted(bare(k) for k in m.labels_of(v) if k[0] == NODE_VAR)
        var[v] = nvars[0] if nvars else ctx.fresh("v")
    parts: list[Fol] = []
    for v, _ in order:
        for ty in sorted(m.types_of(v)):
            parts.append(pred(ty, var[v]))
        for k in sorted(m.labels_of(v)):
            if k[0] == BASE:
                parts.append(pred(k, var[v]))
        for a, d in m.out_edges(v):
            if d in block:
                parts.append(pred(a, var[v], var[d]))
    for name, args in sorted(m.relations, key=lambda r: (r[0], [str(x) for x in r[1]])):
        if not any(x in block for x in args):
            continue
        names = [var.get(x) or gamma.get(x) for x in args]
        if all(names):
            parts.append(pred(name, *names))
    for v, _ in order:
        if v in gamma:
            parts.append(Equal(var[v], gamma[v]))
    return exists([var[v] for v, _ in order], land(*parts))


def _form(ctx: _Ctx, x: Entity, gamma: dict) -> Fol:
    m = ctx.m
    if isinstance(x, Wrap):
        return _block_form(ctx, set(m.wrappings[x]), gamma)
    kind = ctx.kind(x)
    if kind == "conj":
        holes = ctx.r.complex.fragments[x].holes
        shared = [a[1] for n, a in sorted(m.relations, key=lambda r: str(r)) if n == "var" and a[0] == x]
        g = dict(gamma)
        known = [g[v] for v in shared if v in g]
        name = known[0] if known else ctx.fresh()
        for v in shared:
            g[v] = name
        body = land(*(_form(ctx, ctx.r.plugs[h], g) for h in holes))
        return body if known or not shared else exists([name], body)
    u = ctx.fresh()
    g1 = {**gamma, ctx.attr(x, "rvar"): u}
    g2 = {**gamma, ctx.attr(x, "nsvar"): u}
    restr = _form(ctx, ctx.hole_child(x, "restr"), g1)
    scope = _form(ctx, ctx.hole_child(x, "nscope"), g2)
    if kind == "every":
        return forall([u], Implies(restr, scope))
    if kind == "some":
        return exists([u], land(restr, scope))
    return FNot(exists([u], land(restr, scope)))


def transcribe(r: Reading) -> Fol:
    """The first-order formula of a solved reading."""
    ctx = _Ctx(r)
    if r.root is None:
        block = {v for v in r.model.nodes if not r.model.is_wrapped(v)}
        if r.model.wrappings:
            raise TranscriptionError("a reading with wrappings needs a top hole")
        return _block_form(ctx, block, {})
    return _form(ctx, r.root, {})


def _gqt(ctx: _Ctx, x: Entity, gamma: dict) -> str:
    m = ctx.m
    if isinstance(x, Wrap):
        return to_text(_block_form(ctx, set(m.wrappings[x]), gamma))
    ts = m.types_of(x)
    name = next((t for t in _GQT_NAMES if t in ts), None) or min(ts, default="op")
    if name == "conj":
        holes = ctx.r.complex.fragments[x].holes
        shared = [a[1] for n, a in sorted(m.relations, key=lambda r: str(r)) if n == "var" and a[0] == x]
        g = dict(gamma)
        known = [g[v] for v in shared if v in g]
        u = known[0] if known else ctx.fresh()
        for v in shared:
            g[v] = u
        return "and(" + ", ".join(_gqt(ctx, ctx.r.plugs[h], g) for h in holes) + ")"
    if (x, "restr") in m.attrs:
        u = ctx.fresh()
        g1 = {**gamma, ctx.attr(x, "rvar"): u}
        g2 = {**gamma, ctx.attr(x, "nsvar"): u}
        return f"{name}({u}, {_gqt(ctx, ctx.hole_child(x, 'restr'), g1)}, {_gqt(ctx, ctx.hole_child(x, 'nscope'), g2)})"
    inner = ctx.hole_child(x, "SCOPE")
    var = m.attrs.get((x, "VAR"))
    if var is not None:
        u = ctx.fresh("e")
        return f"{name}({u}, {_gqt(ctx, inner, {**gamma, var: u})})"
    return f"{'not' if name == 'neg' else name}({_gqt(ctx, inner, gamma)})"


def to_gqt(r: Reading) -> str:
    """Generalized-quantifier rendering, e.g. ``every(u, R, S)``."""
    ctx = _Ctx(r)
    if r.root is None:
        return to_text(transcribe(r))
    return _gqt(ctx, r.root, {})

