"""Translation of descriptions, formulas, signatures and models into FOL."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Iterator, Mapping, Optional

from ..avl.syntax import (
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
    formula_labels,
    formula_symbols,
)
from ..core.model import Entity, Model, Signature, Wrap
from .syntax import (
    IN,
    WR,
    Equal,
    FFalse,
    FNot,
    Fol,
    FTrue,
    Implies,
    exists,
    forall,
    land,
    lor,
    pred,
)


class Fresh:
    """Supply of variable names ``u0, u1, ...``."""

    def __init__(self, prefix: str = "u") -> None:
        self._n = count()
        self.prefix = prefix

    def __call__(self) -> str:
        return f"{self.prefix}{next(self._n)}"


def _reserved(name: str) -> None:
    if name in (WR, IN):
        raise ValueError(f"{name} is reserved for wrappings and cannot name a symbol")


def path_formula(start: str, path, end: str, fresh: Fresh) -> Fol:
    """``p0...p(m-1)(start, end)``: the chain of attribute steps."""
    if not path:
        return Equal(start, end)
    for a in path:
        _reserved(a)
    mids = [fresh() for _ in path[:-1]]
    chain = [start, *mids, end]
    steps = [pred(a, chain[i], chain[i + 1]) for i, a in enumerate(path)]
    return exists(mids, land(*steps))


def translate_description(d: Desc, var: str, fresh: Optional[Fresh] = None) -> Fol:
    fresh = fresh or Fresh("w")
    if isinstance(d, DTop):
        return FTrue()
    if isinstance(d, DType):
        _reserved(d.name)
        return pred(d.name, var)
    if isinstance(d, DLabel):
        return pred(d.label, var)
    if isinstance(d, DAttr):
        _reserved(d.attr)
        w = fresh()
        return exists([w], land(pred(d.attr, var, w), translate_description(d.body, w, fresh)))
    if isinstance(d, DAnd):
        return land(translate_description(d.left, var, fresh), translate_description(d.right, var, fresh))
    if isinstance(d, DOr):
        return lor(translate_description(d.left, var, fresh), translate_description(d.right, var, fresh))
    raise TypeError(f"not a description: {d!r}")


def translate_formula(f: Formula, fresh: Optional[Fresh] = None) -> Fol:
    fresh = fresh or Fresh()
    if isinstance(f, Top):
        return FTrue()
    if isinstance(f, At):
        u, w = fresh(), fresh()
        return exists(
            [u],
            land(
                FNot(pred(WR, u)),
                forall([w], FNot(pred(IN, u, w))),
                pred(f.label, u),
                translate_description(f.desc, u, fresh),
            ),
        )
    if isinstance(f, PathEq):
        u, u2, w = fresh(), fresh(), fresh()
        return exists(
            [u, u2, w],
            land(
                pred(f.left, u),
                pred(f.right, u2),
                path_formula(u, f.lpath, w, fresh),
                path_formula(u2, f.rpath, w, fresh),
            ),
        )
    if isinstance(f, Rel):
        _reserved(f.name)
        us = [fresh() for _ in f.args]
        ws = [fresh() for _ in f.args]
        parts = []
        for (k, p), u, w in zip(f.args, us, ws):
            parts += [pred(k, u), path_formula(u, p, w, fresh)]
        return exists(us + ws, land(*parts, pred(f.name, *ws)))
    if isinstance(f, Wrapped):
        u, w = fresh(), fresh()
        return exists(
            [u, w],
            land(
                pred(IN, u, w),
                pred(f.wvar, w),
                pred(f.nvar, u),
                translate_description(f.desc, u, fresh),
            ),
        )
    if isinstance(f, And):
        return land(translate_formula(f.left, fresh), translate_formula(f.right, fresh))
    if isinstance(f, Not):
        return FNot(translate_formula(f.body, fresh))
    raise TypeError(f"not a formula: {f!r}")


def formula_signature(f: Formula) -> Signature:
    types, attrs, rels = formula_symbols(f)
    return Signature.from_labels(formula_labels(f), types=frozenset(types), attributes=frozenset(attrs), relations=rels)


@dataclass(frozen=True)
class Axiom:
    family: str
    formula: Fol

    def __str__(self) -> str:
        from .syntax import to_text

        return f"[{self.family}] {to_text(self.formula)}"


def _reach_chain(src: str, dst: str, attrs: list[str], depth: int, fresh: Fresh) -> Fol:
    """``src`` reaches ``dst`` in at most ``depth`` attribute steps."""
    if depth == 0 or not attrs:
        return Equal(src, dst)
    nxt = fresh()
    step = lor(*(pred(a, src, nxt) for a in attrs))
    return lor(Equal(src, dst), exists([nxt], land(step, _reach_chain(nxt, dst, attrs, depth - 1, fresh))))


def theory_axioms(sig: Signature, depth: int = 4) -> list[Axiom]:
    """The axiom schemata instantiated over ``sig``.

    Reachability is read with the labelled node as the source of the path and
    ranges over the non-wrapping elements, with paths of at most ``depth``
    steps.
    """
    attrs = sorted(sig.attributes)
    for a in attrs:
        _reserved(a)
    out: list[Axiom] = []
    for a in attrs:
        out.append(
            Axiom(
                "attribute functionality",
                forall(["u", "w", "w'"], Implies(land(pred(a, "u", "w"), pred(a, "u", "w'")), Equal("w", "w'"))),
            )
        )
    for k in sorted(sig.labels):
        out.append(
            Axiom(
                "labelling uniqueness",
                forall(["u", "u'"], Implies(land(pred(k, "u"), pred(k, "u'")), Equal("u", "u'"))),
            )
        )
    out.append(
        Axiom(
            "wrapping non-embeddedness",
            forall(["u", "w"], Implies(land(pred(IN, "u", "w"), pred(WR, "u")), FFalse())),
        )
    )
    out.append(Axiom("wrapping non-emptiness", forall(["w"], Implies(pred(WR, "w"), exists(["u"], pred(IN, "u", "w"))))))
    out.append(
        Axiom(
            "wrapping disjointedness",
            forall(["u", "w", "w'"], Implies(land(pred(IN, "u", "w"), pred(IN, "u", "w'")), Equal("w", "w'"))),
        )
    )
    out.append(Axiom("WR and IN connection", forall(["u", "w"], Implies(pred(IN, "u", "w"), pred(WR, "w")))))
    fresh = Fresh("r")
    node_labels = sorted(sig.base_labels | sig.node_vars)
    out.append(
        Axiom(
            "reachability",
            forall(
                ["u", "w"],
                Implies(
                    FNot(pred(WR, "u")),
                    exists(
                        ["u'"],
                        land(
                            lor(*(pred(k, "u'") for k in node_labels)),
                            Implies(pred(IN, "u", "w"), pred(IN, "u'", "w")),
                            _reach_chain("u'", "u", attrs, depth, fresh),
                        ),
                    ),
                ),
            ),
        )
    )
    for a in attrs:
        out.append(
            Axiom(
                "non-escapability",
                forall(
                    ["u", "u'", "w"],
                    Implies(land(pred(IN, "u", "w"), pred(a, "u", "u'")), pred(IN, "u'", "w")),
                ),
            )
        )
    return out


@dataclass(frozen=True)
class FolStructure:
    """A finite structure: a domain and the extension of every predicate."""

    domain: tuple
    preds: Mapping[str, frozenset] = field(default_factory=dict)

    def holds(self, name: str, *args) -> bool:
        return tuple(args) in self.preds.get(name, frozenset())

    def extension(self, name: str) -> frozenset:
        return self.preds.get(name, frozenset())

    def iter_facts(self) -> Iterator[tuple]:
        for name in sorted(self.preds):
            for args in sorted(self.preds[name], key=lambda t: tuple(map(element_name, t))):
                yield (name, args)

    def text(self) -> str:
        lines = [f"domain: {', '.join(map(element_name, self.domain))}"]
        for name, args in self.iter_facts():
            lines.append(f"{name}({', '.join(map(element_name, args))})")
        return "\n".join(lines)


def element_name(e: Entity) -> str:
    return f"W:{e.id}" if isinstance(e, Wrap) else f"n{e}"


def translate_model(m: Model) -> FolStructure:
    preds: dict[str, set] = {WR: set(), IN: set()}
    for e in m.entities():
        for t in m.types_of(e):
            preds.setdefault(t, set()).add((e,))
        for k in m.labels_of(e):
            preds.setdefault(k, set()).add((e,))
    for (s, a), d in m.attrs.items():
        preds.setdefault(a, set()).add((s, d))
    for name, args in m.relations:
        preds.setdefault(name, set()).add(tuple(args))
    for w, members in m.wrappings.items():
        preds[WR].add((w,))
        for v in members:
            preds[IN].add((v, w))
    return FolStructure(tuple(m.entities()), {k: frozenset(v) for k, v in preds.items()})
