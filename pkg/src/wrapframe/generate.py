"""Random valid models and small formulas for property testing."""

from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Optional

from .avl.syntax import (
    And,
    At,
    DAnd,
    DAttr,
    DLabel,
    DOr,
    DTop,
    DType,
    Formula,
    Not,
    PathEq,
    Rel,
    Wrapped,
    to_text,
)
from .core.jsonio import dumps
from .core.model import Model, ModelBuilder

TYPES = ("t", "s", "u")
ATTRS = ("P", "Q", "R")
RELS = ("r",)


def random_model(rng: random.Random, max_nodes: int = 6, n_wrappings: Optional[int] = None) -> Model:
    """A valid model with at most ``max_nodes`` nodes.

    Every block of the partition gets a labelled first node and each later
    node of the block hangs off an earlier one, so reachability holds.  Edges
    leaving a wrapped node stay in its wrapping.
    """
    n = rng.randint(1, max_nodes)
    k = rng.randint(0, min(2, n)) if n_wrappings is None else min(n_wrappings, n)
    order = list(range(n))
    rng.shuffle(order)
    # block 0 is the complement, blocks 1..k are wrappings
    home = {v: i + 1 for i, v in enumerate(order[:k])}
    for v in order[k:]:
        home[v] = rng.randint(0, k)
    blocks = [[v for v in order if home[v] == i] for i in range(k + 1)]
    wrapped = blocks[1:]
    outside = blocks[0]
    b = ModelBuilder()
    for v in range(n):
        b.node(id=v)
    block_of: dict[int, int] = {}
    wraps = []
    for i, blk in enumerate(wrapped):
        w = b.wrapping(f"T{i}", blk, labels=[f"$T{i}"] if rng.random() < 0.8 else [])
        wraps.append(w)
        for v in blk:
            block_of[v] = i
    parts = [outside] + wrapped
    base_n = var_n = 0
    for blk in parts:
        if not blk:
            continue
        first = blk[0]
        if first in block_of or rng.random() < 0.5:
            b.tag(first, labels=[f"?x{var_n}"])
            var_n += 1
        else:
            b.tag(first, labels=[f"@b{base_n}"])
            base_n += 1
        for j, v in enumerate(blk[1:], 1):
            src = blk[rng.randrange(j)]
            free = [a for a in ATTRS if (src, a) not in b.attrs]
            if not free:
                src, free = blk[0], [a for a in ATTRS if (blk[0], a) not in b.attrs]
            if not free:
                b.tag(v, labels=[f"?x{var_n}"])
                var_n += 1
                continue
            b.edge(src, rng.choice(free), v)
    for v in range(n):
        if rng.random() < 0.4:
            b.tag(v, types=[rng.choice(TYPES)])
        if rng.random() < 0.15:
            if v in block_of or rng.random() < 0.5:
                b.tag(v, labels=[f"?x{var_n}"])
                var_n += 1
            else:
                b.tag(v, labels=[f"@b{base_n}"])
                base_n += 1
    for _ in range(rng.randint(0, 3)):
        s = rng.randrange(n)
        a = rng.choice(ATTRS)
        if (s, a) in b.attrs:
            continue
        if s in block_of:
            d = rng.choice(wrapped[block_of[s]])
        else:
            targets = list(range(n)) + wraps
            d = rng.choice(targets)
        b.edge(s, a, d)
    if rng.random() < 0.3:
        ents = list(range(n)) + wraps
        b.rel(rng.choice(RELS), rng.choice(ents), rng.choice(ents))
    return b.build()


def _desc(rng: random.Random, labels: list[str], depth: int) -> object:
    r = rng.random()
    if depth <= 0 or r < 0.35:
        return DType(rng.choice(TYPES)) if rng.random() < 0.8 else DTop()
    if r < 0.65:
        return DAttr(rng.choice(ATTRS), _desc(rng, labels, depth - 1))
    if r < 0.75 and labels:
        return DAttr(rng.choice(ATTRS), DLabel(rng.choice(labels)))
    if r < 0.9:
        return DAnd(_desc(rng, labels, depth - 1), _desc(rng, labels, depth - 1))
    return DOr(_desc(rng, labels, depth - 1), _desc(rng, labels, depth - 1))


def random_formula(rng: random.Random, size: int = 3, negation: bool = True, wrappings: bool = True) -> Formula:
    """A small formula over two base labels, two node variables and a wrapping."""
    base = ["@b0", "@b1"]
    nvars = ["?x0", "?x1"]
    parts: list[Formula] = []
    for _ in range(rng.randint(1, size)):
        r = rng.random()
        if r < 0.45:
            parts.append(At(rng.choice(base), _desc(rng, base, 2)))
        elif r < 0.6 and wrappings:
            parts.append(Wrapped("$T0", rng.choice(nvars), _desc(rng, [], 2)))
        elif r < 0.75:
            k, l = rng.choice(base), rng.choice(base)
            p = tuple(rng.choice(ATTRS) for _ in range(rng.randint(0, 2)))
            q = tuple(rng.choice(ATTRS) for _ in range(rng.randint(0, 2)))
            parts.append(PathEq(k, p, l, q))
        elif r < 0.85:
            parts.append(Rel(rng.choice(RELS), ((rng.choice(base), ()), (rng.choice(base), (rng.choice(ATTRS),)))))
        elif negation:
            parts.append(Not(At(rng.choice(base), _desc(rng, base, 1))))
        else:
            parts.append(At(rng.choice(base), DType(rng.choice(TYPES))))
    f = parts[0]
    for p in parts[1:]:
        f = And(f, p)
    return f


def write_corpus(directory, seed: int = 0, models: int = 50, formulas: int = 50) -> list[Path]:
    """Dump a reproducible corpus of random models and formulas."""
    rng = random.Random(seed)
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for i in range(models):
        p = out / f"model_{i:03d}.json"
        p.write_text(dumps(random_model(rng)) + "\n")
        written.append(p)
    for i in range(formulas):
        p = out / f"formula_{i:03d}.avl"
        p.write_text(to_text(random_formula(rng)) + "\n")
        written.append(p)
    (out / "corpus.json").write_text(json.dumps({"seed": seed, "models": models, "formulas": formulas}) + "\n")
    return written
