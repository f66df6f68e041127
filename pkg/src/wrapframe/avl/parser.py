"""Recursive-descent parser for the ``.avl`` text syntax.

Bare names are classified by position: ``NAME :`` is an attribute, a name
after ``.`` in a path is an attribute, ``NAME (`` at formula level is a
relation, and every other name is a type.  Comments run from ``%`` to the
end of the line.  An optional preamble may declare the vocabulary::

    types: t, walking
    attrs: P, AGENT
    rels: r/2, scope/2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..core.model import NODE_VAR, WRAP_VAR, Signature
from .syntax import (
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
    formula_symbols,
)


class AvlSyntaxError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.msg, self.line, self.col = msg, line, col
        super().__init__(f"{line}:{col}: {msg}" if line else msg)


class UnknownSymbolError(AvlSyntaxError):
    pass


@dataclass(frozen=True)
class Tok:
    kind: str  # LABEL NAME TOP EQ PUNCT END
    text: str
    line: int
    col: int


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<LABEL>[@?$][A-Za-z0-9_']+)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_'\-]*)
  | (?P<EQ>==)
  | (?P<PUNCT>[.:&|!()\[\],\#])
    """,
    re.VERBOSE,
)

_PREAMBLE = re.compile(r"^\s*(types|attrs|rels)\s*:(.*)$")


def tokenize(text: str, first_line: int = 1) -> list[Tok]:
    toks = []
    pos, line, lstart = 0, first_line, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise AvlSyntaxError(f"unexpected character {text[pos]!r}", line, pos - lstart + 1)
        kind = m.lastgroup
        if kind != "ws":
            word = m.group()
            if kind == "NAME" and word == "TOP":
                kind = "TOP"
            toks.append(Tok(kind, word, line, pos - lstart + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            lstart = pos + chunk.rfind("\n") + 1
        pos = m.end()
    toks.append(Tok("END", "", line, pos - lstart + 1))
    return toks


def split_preamble(text: str) -> tuple[Optional[Signature], frozenset, str, int]:
    """Strip leading declaration lines; return the declared signature."""
    lines = text.split("\n")
    decl: dict[str, set] = {}
    rels: dict[str, int] = {}
    i = 0
    while i < len(lines):
        raw = lines[i].split("%", 1)[0]
        if not raw.strip():
            i += 1
            continue
        m = _PREAMBLE.match(raw)
        if not m:
            break
        key, rest = m.group(1), m.group(2)
        items = [s.strip() for s in rest.split(",") if s.strip()]
        if key == "rels":
            for it in items:
                name, _, arity = it.partition("/")
                if not arity.strip().isdigit():
                    raise AvlSyntaxError(f"relation declaration {it!r} needs name/arity", i + 1, 1)
                rels[name.strip()] = int(arity)
            decl.setdefault("rels", set())
        else:
            decl.setdefault(key, set()).update(items)
        i += 1
    if not decl:
        return None, frozenset(), text, 1
    sig = Signature(
        types=frozenset(decl.get("types", ())),
        attributes=frozenset(decl.get("attrs", ())),
        relations=rels,
    )
    return sig, frozenset(decl), "\n".join(lines[i:]), i + 1


class _Parser:
    def __init__(self, toks: list[Tok]):
        self.toks = toks
        self.i = 0

    @property
    def cur(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.cur.kind in ("PUNCT", "EQ") and self.cur.text == text

    def fail(self, msg: str, tok: Optional[Tok] = None):
        tok = tok or self.cur
        shown = tok.text or "end of input"
        raise AvlSyntaxError(f"{msg} (found {shown!r})", tok.line, tok.col)

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        tok = self.cur
        self.i += 1
        return tok

    def label(self, sort: Optional[str] = None) -> str:
        tok = self.cur
        if tok.kind != "LABEL":
            self.fail("expected a label")
        if sort and tok.text[0] != sort:
            kind = {NODE_VAR: "node variable", WRAP_VAR: "wrapping variable"}[sort]
            self.fail(f"expected a {kind}")
        self.i += 1
        return tok.text

    def path(self) -> tuple:
        out = []
        while self.at(".") and self.peek().kind == "NAME":
            self.i += 1
            out.append(self.cur.text)
            self.i += 1
        return tuple(out)

    # formulas

    def formula(self) -> Formula:
        f = self.term()
        while self.at("&"):
            self.i += 1
            f = And(f, self.term())
        return f

    def term(self) -> Formula:
        tok = self.cur
        if tok.kind == "TOP":
            self.i += 1
            return Top()
        if self.at("!"):
            self.i += 1
            return Not(self.term())
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind == "NAME":
            if self.peek().text != "(":
                self.fail("expected a formula; relations need an argument list")
            return self.relation()
        if tok.kind == "LABEL":
            if self.peek().text == ":" and self.peek(2).text == "[":
                return self.wrapped()
            return self.labelled()
        self.fail("expected a formula")

    def relation(self) -> Rel:
        name = self.cur.text
        self.i += 2
        args = [(self.label(), self.path())]
        while self.at(","):
            self.i += 1
            args.append((self.label(), self.path()))
        self.expect(")")
        if len(args) < 2:
            self.fail(f"relation {name} needs at least two arguments", self.toks[self.i - 1])
        return Rel(name, tuple(args))

    def wrapped(self) -> Wrapped:
        w = self.label(WRAP_VAR)
        self.expect(":")
        self.expect("[")
        x = self.label(NODE_VAR)
        self.expect(".")
        d = self.desc(nested=True)
        self.expect("]")
        return Wrapped(w, x, d)

    def labelled(self) -> Formula:
        k = self.label()
        save = self.i
        p = self.path()
        if self.at("=="):
            self.i += 1
            lab = self.label()
            return PathEq(k, p, lab, self.path())
        self.i = save
        self.expect(".")
        return At(k, self.desc(nested=False))

    # descriptions

    def desc(self, nested: bool) -> Desc:
        d = self.dconj(nested)
        while self.at("|"):
            self.i += 1
            d = DOr(d, self.dconj(nested))
        return d

    def _ends_description(self) -> bool:
        nxt = self.peek()
        if nxt.kind in ("LABEL", "TOP") or nxt.text in ("!", "("):
            return True
        return nxt.kind == "NAME" and self.peek(2).text == "("

    def dconj(self, nested: bool) -> Desc:
        d = self.unary()
        while self.at("&"):
            if not nested and self._ends_description():
                break
            self.i += 1
            d = DAnd(d, self.unary())
        return d

    def unary(self) -> Desc:
        tok = self.cur
        if tok.kind == "TOP":
            self.i += 1
            return DTop()
        if self.at("!"):
            self.fail("negation is only allowed at formula level")
        if self.at("#"):
            self.i += 1
            return DLabel(self.label())
        if tok.kind == "LABEL":
            self.i += 1
            return DLabel(tok.text)
        if self.at("("):
            self.i += 1
            d = self.desc(nested=True)
            self.expect(")")
            return d
        if tok.kind == "NAME":
            chain = [tok.text]
            j = 1
            while self.peek(j).kind == "NAME":
                chain.append(self.peek(j).text)
                j += 1
            if self.peek(j).text == ":":
                self.i += j + 1
                body = self.unary()
                for a in reversed(chain):
                    body = DAttr(a, body)
                return body
            if len(chain) > 1:
                self.fail("attribute chain must end with ':'", self.peek(j))
            self.i += 1
            return DType(tok.text)
        self.fail("expected a description")


_ALL = frozenset({"types", "attrs", "rels"})


def _check(f: Formula, sig: Signature, declared: frozenset = _ALL) -> None:
    types, attrs, rels = formula_symbols(f)
    if "types" in declared:
        bad = sorted(types - sig.types)
        if bad:
            raise UnknownSymbolError(f"undeclared type(s): {', '.join(bad)}")
    if "attrs" in declared:
        bad = sorted(attrs - sig.attributes)
        if bad:
            raise UnknownSymbolError(f"undeclared attribute(s): {', '.join(bad)}")
    if "rels" in declared:
        for name, arity in sorted(rels.items()):
            if name not in sig.relations:
                raise UnknownSymbolError(f"undeclared relation {name}")
            if sig.relations[name] != arity:
                raise UnknownSymbolError(
                    f"relation {name} used with {arity} arguments, declared /{sig.relations[name]}"
                )


def parse_document(text: str, signature: Optional[Signature] = None) -> tuple[Formula, Optional[Signature]]:
    declared, cats, body, first = split_preamble(text)
    toks = tokenize(body, first)
    if toks[0].kind == "END":
        raise AvlSyntaxError("empty formula", toks[0].line, toks[0].col)
    p = _Parser(toks)
    f = p.formula()
    if p.cur.kind != "END":
        p.fail("unexpected trailing input")
    if declared is not None:
        _check(f, declared, cats)
    if signature is not None:
        _check(f, signature)
    return f, declared


def parse(text: str, signature: Optional[Signature] = None) -> Formula:
    """Parse a formula, optionally checking its symbols against ``signature``."""
    return parse_document(text, signature)[0]
