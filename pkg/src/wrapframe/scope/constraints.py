"""Horn constraints over nodes: type hierarchy, cascades, incompatibilities.

Rules are written one per line::

    every -> univ-quant
    quant & restr:TOP -> restr:hole
    ext & logical -> FALSE
    activity & motion -> actor == mover
    option wrappingization
    option scope-transitivity

The body is a conjunction of types (``t``), attribute existence (``A:TOP``)
and attribute target types (``A:t``).  The head is one such item, an
attribute equation ``A == B`` or ``FALSE``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..avl.atoms import eq
from ..core.model import Entity, Model, ModelBuilder, Wrap

TOP = "TOP"
HOLE = "hole"
SCOPE = "scope"

_ITEM = re.compile(r"^([A-Za-z_][\w\-']*)\s*(?::\s*([A-Za-z_][\w\-']*))?$")
_EQ = re.compile(r"^([A-Za-z_][\w\-']*)\s*==\s*([A-Za-z_][\w\-']*)$")


class ConstraintSyntaxError(ValueError):
    def __init__(self, msg: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {msg}")


class ConstraintLoop(RuntimeError):
    """Cascades kept creating nodes past the configured limit."""


@dataclass(frozen=True)
class Cond:
    """``t`` (attr None), ``A:TOP`` (type None) or ``A:t``."""

    attr: Optional[str]
    type: Optional[str]

    def __str__(self) -> str:
        if self.attr is None:
            return self.type or TOP
        return f"{self.attr}:{self.type or TOP}"


@dataclass(frozen=True)
class Rule:
    body: tuple
    head: object  # Cond, ("==", A, B) or None for falsity

    def __str__(self) -> str:
        body = " & ".join(map(str, self.body)) or TOP
        if self.head is None:
            head = "FALSE"
        elif isinstance(self.head, tuple):
            head = f"{self.head[1]} == {self.head[2]}"
        else:
            head = str(self.head)
        return f"{body} -> {head}"


@dataclass(frozen=True)
class ConstraintSet:
    rules: tuple = ()
    wrappingization: bool = False
    scope_transitivity: bool = False
    max_new_nodes: int = 1000

    def supertypes(self, t: str) -> set:
        """``t`` with everything the single-type rules lift it to."""
        up = {t}
        todo = [t]
        while todo:
            cur = todo.pop()
            for r in self.rules:
                if (
                    len(r.body) == 1
                    and r.body[0] == Cond(None, cur)
                    and isinstance(r.head, Cond)
                    and r.head.attr is None
                    and r.head.type not in up
                ):
                    up.add(r.head.type)
                    todo.append(r.head.type)
        return up

    def text(self) -> str:
        lines = [str(r) for r in self.rules]
        if self.wrappingization:
            lines.append("option wrappingization")
        if self.scope_transitivity:
            lines.append("option scope-transitivity")
        return "\n".join(lines) + "\n"

    def __add__(self, other: "ConstraintSet") -> "ConstraintSet":
        return ConstraintSet(
            self.rules + other.rules,
            self.wrappingization or other.wrappingization,
            self.scope_transitivity or other.scope_transitivity,
            max(self.max_new_nodes, other.max_new_nodes),
        )


def _item(text: str, n: int) -> Cond:
    m = _ITEM.match(text.strip())
    if not m:
        raise ConstraintSyntaxError(f"cannot read {text.strip()!r}", n)
    name, target = m.groups()
    if target is None:
        if name == TOP:
            raise ConstraintSyntaxError("TOP alone is not a condition", n)
        return Cond(None, name)
    return Cond(name, None if target == TOP else target)


def parse_constraints(text: str) -> ConstraintSet:
    rules = []
    opts: set = set()
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("option "):
            opt = line[len("option "):].strip()
            if opt not in ("wrappingization", "scope-transitivity"):
                raise ConstraintSyntaxError(f"unknown option {opt!r}", n)
            opts.add(opt)
            continue
        if "->" not in line:
            raise ConstraintSyntaxError("a rule needs '->'", n)
        lhs, rhs = (s.strip() for s in line.split("->", 1))
        body = tuple(_item(p, n) for p in lhs.split("&")) if lhs != TOP else ()
        if rhs in ("FALSE", "⊥"):
            head: object = None
        elif _EQ.match(rhs):
            a, b = _EQ.match(rhs).groups()
            head = ("==", a, b)
        else:
            head = _item(rhs, n)
        rules.append(Rule(body, head))
    return ConstraintSet(
        tuple(rules),
        wrappingization="wrappingization" in opts,
        scope_transitivity="scope-transitivity" in opts,
    )


DEFAULT_RULES = """\
% logical type hierarchy
some -> exist-quant
exist-quant -> quant
every -> univ-quant
univ-quant -> quant
quant -> logical
conj -> conn
conn -> logical
hole -> logical
% determiners and operators beyond the core hierarchy
a -> exist-quant
no -> quant
most -> quant
the -> quant
always -> quant
neg -> conn
% cascades
quant & restr:TOP -> restr:hole
quant & nscope:TOP -> nscope:hole
% instance and complex nodes never merge
ext & logical -> FALSE
"""


def default_constraints() -> ConstraintSet:
    return parse_constraints(DEFAULT_RULES)


class _State:
    def __init__(self, model: Model, cs: ConstraintSet):
        self.b = model.to_builder()
        self.cs = cs
        self.created = 0

    def wrapper(self, e: Entity) -> Optional[Wrap]:
        if isinstance(e, Wrap):
            return None
        for w, ms in self.b.wrappings.items():
            if e in ms:
                return w
        return None

    def cond(self, e: Entity, c: Cond) -> bool:
        if c.attr is None:
            return c.type in self.b.types.get(e, ())
        d = self.b.attrs.get((e, c.attr))
        if d is None:
            return False
        return c.type is None or c.type in self.b.types.get(d, ())

    def ensure(self, e: Entity, c: Cond) -> bool:
        """Make ``c`` hold at ``e``; report whether anything changed."""
        if self.cond(e, c):
            return False
        if c.attr is None:
            self.b.tag(e, types=[c.type])
            return True
        d = self.b.attrs.get((e, c.attr))
        if d is None:
            self.created += 1
            if self.created > self.cs.max_new_nodes:
                raise ConstraintLoop(f"more than {self.cs.max_new_nodes} nodes created")
            d = self.b.node()
            w = self.wrapper(e)
            if w is not None:
                self.b.wrappings[w].add(d)
            self.b.edge(e, c.attr, d)
        if c.type is not None:
            self.b.tag(d, types=[c.type])
        return True


def _merge_attrs(m: Model, e: Entity, a: str, b: str) -> Optional[Model]:
    from ..minmodel.build import access_terms
    from ..morphism import unify

    k, p = access_terms(m)[e]
    return unify(m, m, {eq(k, p + (a,), k, p + (b,))})


def apply_constraints(m: Model, cs: Optional[ConstraintSet] = None) -> Optional[Model]:
    """Close ``m`` under ``cs``; None when an incompatibility fires."""
    cs = cs or default_constraints()
    hole_up = cs.supertypes(HOLE)
    while True:
        st = _State(m, cs)
        pending_eq = None
        changed = True
        while changed and pending_eq is None:
            changed = False
            ents = sorted(st.b.nodes) + sorted(st.b.wrappings)
            for e in ents:
                for r in cs.rules:
                    if not all(st.cond(e, c) for c in r.body):
                        continue
                    if r.head is None:
                        return None
                    if isinstance(r.head, tuple):
                        _, x, y = r.head
                        dx, dy = st.b.attrs.get((e, x)), st.b.attrs.get((e, y))
                        if dx is not None and dx == dy:
                            continue
                        if dx is None and dy is None:
                            st.ensure(e, Cond(x, None))
                            dx = st.b.attrs[(e, x)]
                        if dx is None:
                            st.b.edge(e, x, dy)
                        elif dy is None:
                            st.b.edge(e, y, dx)
                        else:
                            pending_eq = (e, x, y)
                            break
                        changed = True
                    elif st.ensure(e, r.head):
                        changed = True
                if pending_eq is not None:
                    break
            if cs.scope_transitivity and pending_eq is None:
                changed |= _close_scope(st.b)
        if cs.wrappingization:
            for w in st.b.wrappings:
                if set(st.b.types.get(w, ())) - hole_up:
                    return None
        m = st.b.build()
        if pending_eq is None:
            return m
        merged = _merge_attrs(m, *pending_eq)
        if merged is None:
            return None
        m = merged


def _close_scope(b: ModelBuilder) -> bool:
    """Dominance through fragments: scope(h, F) and a hole h2 of F with
    scope(h2, G) give scope(h, G)."""
    holes = {e for e, ts in b.types.items() if HOLE in ts}
    dom = {(args[0], args[1]) for name, args in b.relations if name == SCOPE and len(args) == 2 and args[0] in holes}
    owned: dict = {}
    for (s, _), d in b.attrs.items():
        if d in holes and s not in holes:
            owned.setdefault(s, set()).add(d)
    for name, args in b.relations:
        if name == SCOPE and len(args) == 2 and args[0] not in holes and args[1] in holes:
            owned.setdefault(args[0], set()).add(args[1])
    new = set()
    for h, f in dom:
        for h2 in owned.get(f, ()):
            for h3, g in dom:
                if h3 == h2 and (h, g) not in dom:
                    new.add((h, g))
    for h, g in new:
        b.rel(SCOPE, h, g)
    return bool(new)
