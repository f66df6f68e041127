"""Congruence closure over label/path terms.

A fact-set is kept in solved form: a union-find over term classes with a
successor map per class (so attribute functionality and congruence come for
free), the types and labels of each class, the relation tuples, and the
wrapping data (``wr`` marks a wrapping, ``home`` points to the wrapping class
a node lives in).  Every deduction schema on atoms is a consequence of this
representation plus the home propagation in :meth:`Closure.normalize`.
"""

from __future__ import annotations

from typing import Iterable, Optional

from ..avl.atoms import (
    Atom,
    EqAtom,
    In,
    InWr,
    PathTop,
    PathType,
    RelAtom,
    Term,
    Wr,
    atom_size,
    eq,
    term_key,
)
from ..core.model import BASE, NODE_VAR, WRAP_VAR


class Closure:
    def __init__(self) -> None:
        self.parent: list[int] = []
        self.succ: list[dict[str, int]] = []
        self.types: list[set] = []
        self.labels: list[set] = []
        self.wr: list[bool] = []
        self.inwr: list[bool] = []
        self.home: list[Optional[int]] = []
        self.rels: set = set()
        self.label_cls: dict[str, int] = {}
        self.contradiction: Optional[str] = None

    def copy(self) -> "Closure":
        c = Closure()
        c.parent = list(self.parent)
        c.succ = [dict(s) for s in self.succ]
        c.types = [set(t) for t in self.types]
        c.labels = [set(l) for l in self.labels]
        c.wr = list(self.wr)
        c.inwr = list(self.inwr)
        c.home = list(self.home)
        c.rels = set(self.rels)
        c.label_cls = dict(self.label_cls)
        c.contradiction = self.contradiction
        return c

    # classes

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def _new(self) -> int:
        i = len(self.parent)
        self.parent.append(i)
        self.succ.append({})
        self.types.append(set())
        self.labels.append(set())
        self.wr.append(False)
        self.inwr.append(False)
        self.home.append(None)
        return i

    def roots(self) -> list[int]:
        return [c for c in range(len(self.parent)) if self.parent[c] == c]

    def label_class(self, k: str, create: bool = True) -> Optional[int]:
        c = self.label_cls.get(k)
        if c is not None:
            return self.find(c)
        if not create:
            return None
        c = self._new()
        self.label_cls[k] = c
        self.labels[c].add(k)
        if k.startswith(WRAP_VAR):
            self.wr[c] = True
        return c

    def term(self, k: str, path: Iterable[str], create: bool = True) -> Optional[int]:
        c = self.label_class(k, create)
        for a in path:
            if c is None:
                return None
            nxt = self.succ[c].get(a)
            if nxt is None:
                if not create:
                    return None
                nxt = self._new()
                self.succ[c][a] = nxt
            c = self.find(nxt)
        return c

    def union(self, a: int, b: int) -> None:
        todo = [(a, b)]
        while todo:
            x, y = todo.pop()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            self.parent[y] = x
            for attr, t in self.succ[y].items():
                if attr in self.succ[x]:
                    todo.append((self.succ[x][attr], t))
                else:
                    self.succ[x][attr] = t
            self.succ[y] = {}
            self.types[x] |= self.types[y]
            self.labels[x] |= self.labels[y]
            self.wr[x] = self.wr[x] or self.wr[y]
            self.inwr[x] = self.inwr[x] or self.inwr[y]
            hx, hy = self.home[x], self.home[y]
            if hx is None:
                self.home[x] = hy
            elif hy is not None:
                todo.append((hx, hy))

    def set_home(self, c: int, h: int) -> None:
        c, h = self.find(c), self.find(h)
        self.inwr[c] = True
        self.wr[h] = True
        if self.home[c] is None:
            self.home[c] = h
        else:
            self.union(self.home[c], h)

    # facts

    def add(self, a: Atom) -> None:
        if isinstance(a, PathTop):
            self.term(a.label, a.path)
        elif isinstance(a, PathType):
            self.types[self.term(a.label, a.path)].add(a.type)
        elif isinstance(a, EqAtom):
            self.union(self.term(a.left, a.lpath), self.term(a.right, a.rpath))
        elif isinstance(a, RelAtom):
            self.rels.add((a.name, tuple(self.term(k, p) for k, p in a.args)))
        elif isinstance(a, InWr):
            self.inwr[self.label_class(a.label)] = True
        elif isinstance(a, In):
            self.set_home(self.label_class(a.label), self.label_class(a.wrap))
        elif isinstance(a, Wr):
            self.wr[self.label_class(a.label)] = True
        else:
            raise TypeError(f"not an atom: {a!r}")

    def normalize(self) -> None:
        """Run home propagation to a fixpoint and look for contradictions."""
        while True:
            changed = False
            for c in self.roots():
                if self.find(c) != c:
                    continue
                h = self.home[c]
                if h is None:
                    continue
                for t in list(self.succ[c].values()):
                    t = self.find(t)
                    if not self.inwr[t]:
                        self.inwr[t] = True
                        changed = True
                    th = self.home[t]
                    if th is None:
                        self.home[t] = self.find(h)
                        changed = True
                    elif self.find(th) != self.find(self.home[self.find(c)]):
                        self.union(th, self.home[self.find(c)])
                        changed = True
            if not changed:
                for c in self.roots():
                    if self.inwr[c] and self.home[c] is None and not self.wr[c]:
                        anon = self._new()
                        self.wr[anon] = True
                        self.home[c] = anon
                        changed = True
            if not changed:
                break
        self.rels = {(n, tuple(self.find(x) for x in args)) for n, args in self.rels}
        for c in self.roots():
            if self.home[c] is not None:
                self.home[c] = self.find(self.home[c])
        self.contradiction = self._find_contradiction()

    def _find_contradiction(self) -> Optional[str]:
        for c in self.roots():
            labs = sorted(self.labels[c])
            if self.wr[c] and self.inwr[c]:
                what = ", ".join(labs) or "an unlabelled wrapping"
                return f"wrapping non-embeddedness: {what} is both a wrapping and wrapped"
            if self.wr[c]:
                bad = [k for k in labs if k[0] in (BASE, NODE_VAR)]
                if bad:
                    return f"syntactic sort: node label {bad[0]} names a wrapping"
            h = self.home[c]
            if h is not None and h == c:
                return "wrapping non-embeddedness: a wrapping contains itself"
        return None

    def shape_problem(self) -> Optional[str]:
        """Why no valid model can realize this closure, if that is so.

        Unlike contradictions this is not monotone (adding a member fixes an
        empty wrapping), so it is only consulted once saturation is over.
        """
        roots = self.roots()
        members: dict[int, list[int]] = {}
        for c in roots:
            if self.home[c] is not None:
                members.setdefault(self.home[c], []).append(c)
        for c in roots:
            if self.wr[c] and not any(
                any(k[0] != WRAP_VAR for k in self.labels[m]) for m in members.get(c, ())
            ):
                what = ", ".join(sorted(self.labels[c])) or "an anonymous wrapping"
                return f"wrapping non-emptiness: {what} has no labelled member"
        blocks: dict[Optional[int], list[int]] = {}
        for c in roots:
            if not self.wr[c]:
                blocks.setdefault(self.home[c], []).append(c)
        for block in blocks.values():
            seen = {c for c in block if any(k[0] != WRAP_VAR for k in self.labels[c])}
            todo = list(seen)
            while todo:
                c = todo.pop()
                for d in self.succ[c].values():
                    d = self.find(d)
                    if d not in seen:
                        seen.add(d)
                        todo.append(d)
            missing = [c for c in block if c not in seen]
            if missing:
                return "reachability: a node is only accessible through a wrapping from outside its w-set"
        return None

    # queries

    def resolve(self, t: Term) -> Optional[int]:
        return self.term(t[0], t[1], create=False)

    def holds(self, a: Atom) -> bool:
        """Is ``a`` entailed (ignoring the size bound)?"""
        if isinstance(a, PathTop):
            return self.resolve((a.label, a.path)) is not None
        if isinstance(a, PathType):
            c = self.resolve((a.label, a.path))
            return c is not None and a.type in self.types[c]
        if isinstance(a, EqAtom):
            c = self.resolve((a.left, a.lpath))
            return c is not None and c == self.resolve((a.right, a.rpath))
        if isinstance(a, RelAtom):
            args = tuple(self.resolve(t) for t in a.args)
            return None not in args and (a.name, args) in self.rels
        if isinstance(a, InWr):
            c = self.label_class(a.label, create=False)
            return c is not None and self.inwr[c]
        if isinstance(a, In):
            c = self.label_class(a.label, create=False)
            w = self.label_class(a.wrap, create=False)
            return c is not None and w is not None and self.home[c] is not None and self.find(self.home[c]) == w
        if isinstance(a, Wr):
            c = self.label_class(a.label, create=False)
            return c is not None and self.wr[c]
        raise TypeError(f"not an atom: {a!r}")

    def canonical_terms(self) -> dict[int, Term]:
        """Shortest access term per reachable class, ties broken lexicographically."""
        canon: dict[int, Term] = {}
        layer: list[Term] = []
        for k in sorted(self.label_cls):
            c = self.label_class(k)
            t = (k, ())
            if c not in canon or term_key(t) < term_key(canon[c]):
                canon[c] = t
        layer = sorted(canon.values(), key=term_key)
        while layer:
            found: dict[int, Term] = {}
            for k, p in layer:
                c = self.resolve((k, p))
                for attr in sorted(self.succ[c]):
                    d = self.find(self.succ[c][attr])
                    if d in canon:
                        continue
                    t = (k, p + (attr,))
                    if d not in found or term_key(t) < term_key(found[d]):
                        found[d] = t
            canon.update(found)
            layer = sorted(found.values(), key=term_key)
        return canon

    def generators(self) -> frozenset:
        """A finite atom set entailing exactly what this closure entails."""
        canon = self.canonical_terms()
        out: set = set()
        for k in self.label_cls:
            c = self.label_class(k)
            out.add(eq(k, (), *canon[c]))
            if self.inwr[c]:
                out.add(InWr(k))
            if self.wr[c]:
                out.add(Wr(k))
            h = self.home[c]
            if h is not None:
                for w in self.labels[h]:
                    out.add(In(k, w))
        for c, (k, p) in canon.items():
            for attr, d in self.succ[c].items():
                out.add(eq(k, p + (attr,), *canon[self.find(d)]))
            for t in self.types[c]:
                out.add(PathType(k, p, t))
        for name, args in self.rels:
            out.add(RelAtom(name, tuple(canon[a] for a in args)))
        return frozenset(out)

    def terms(self, c0: int, limit: int = 200_000) -> dict[int, list[Term]]:
        """All terms with at most ``c0`` attribute symbols, grouped by class."""
        out: dict[int, list[Term]] = {}
        frontier = [(k, ()) for k in sorted(self.label_cls)]
        count = 0
        while frontier:
            nxt = []
            for k, p in frontier:
                c = self.resolve((k, p))
                out.setdefault(c, []).append((k, p))
                count += 1
                if count > limit:
                    raise OverflowError(f"more than {limit} terms within the size bound {c0}")
                if len(p) < c0:
                    nxt.extend((k, p + (a,)) for a in sorted(self.succ[c]))
            frontier = nxt
        return out

    def materialize(self, c0: int, limit: int = 200_000) -> frozenset:
        """Every entailed atom with at most ``c0`` attribute symbols."""
        groups = self.terms(c0, limit)
        out: set = set()
        for c, ts in groups.items():
            for t in ts:
                out.add(PathTop(*t))
                for ty in self.types[c]:
                    out.add(PathType(t[0], t[1], ty))
            ts = sorted(ts, key=term_key)
            for i, a in enumerate(ts):
                for b in ts[i + 1:]:
                    if len(a[1]) + len(b[1]) <= c0:
                        out.add(eq(a[0], a[1], b[0], b[1]))
                    if len(out) > limit:
                        raise OverflowError(f"more than {limit} atoms within the size bound {c0}")
        for name, args in self.rels:
            choices: list[tuple] = [((), 0)]
            for a in args:
                choices = [
                    (prefix + (t,), size + len(t[1]))
                    for prefix, size in choices
                    for t in groups.get(a, [])
                    if size + len(t[1]) <= c0
                ]
                if len(choices) > limit:
                    raise OverflowError("relation atoms exceed the materialization limit")
            for combo, _ in choices:
                out.add(RelAtom(name, combo))
        for k in self.label_cls:
            c = self.label_class(k)
            if self.inwr[c]:
                out.add(InWr(k))
            if self.wr[c]:
                out.add(Wr(k))
            h = self.home[c]
            if h is not None:
                for w in self.labels[h]:
                    out.add(In(k, w))
        assert all(atom_size(a) <= c0 for a in out)
        return frozenset(out)
