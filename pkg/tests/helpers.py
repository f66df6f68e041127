"""Independent oracles shared by the test modules.

Nothing here calls into the code under test beyond building models, so
the results can be compared against the library without circularity.
"""

from __future__ import annotations

from itertools import product

from wrapframe.core import Model, ModelBuilder, Wrap
from wrapframe.foltrans.syntax import Equal, Exists, FAnd, FFalse, FNot, FOr, Forall, FTrue, Implies, Pred


def all_homomorphisms(src: Model, dst: Model) -> list[dict]:
    """Every map satisfying the homomorphism conditions.

    Plain backtracking over all candidate images; partial maps are pruned
    only by conditions that are already decidable, never by label anchoring
    or edge propagation, so the search does not share the library's logic.
    """
    ents = src.entities()
    node_targets = list(dst.nodes) + list(dst.wrappings)
    wrap_targets = list(dst.wrappings)
    out: list[dict] = []
    h: dict = {}

    def local_ok(e) -> bool:
        img = h[e]
        if not src.types_of(e) <= dst.types_of(img) or not src.labels_of(e) <= dst.labels_of(img):
            return False
        for (s, a), d in src.attrs.items():
            if s in h and d in h and dst.attrs.get((h[s], a)) != h[d]:
                return False
        return True

    def go(i: int) -> None:
        if i == len(ents):
            if _is_hom(src, dst, h):
                out.append(dict(h))
            return
        e = ents[i]
        for img in wrap_targets if isinstance(e, Wrap) else node_targets:
            h[e] = img
            if local_ok(e):
                go(i + 1)
            del h[e]

    go(0)
    return out


def brute_isomorphic(a: Model, b: Model) -> bool:
    """A bijective homomorphism whose inverse is a homomorphism too."""
    if len(a.nodes) != len(b.nodes) or len(a.wrappings) != len(b.wrappings):
        return False
    for h in all_homomorphisms(a, b):
        if len(set(h.values())) != len(h):
            continue
        inv = {v: k for k, v in h.items()}
        if set(inv) == set(b.entities()) and _is_hom(b, a, inv):
            return True
    return False


def renumber(m: Model, rng) -> Model:
    """The same model with shuffled node ids and renamed wrappings."""
    ids = list(range(100, 100 + len(m.nodes)))
    rng.shuffle(ids)
    ren = dict(zip(sorted(m.nodes), ids))
    for i, w in enumerate(sorted(m.wrappings)):
        ren[w] = Wrap(f"R{i}")
    f = lambda e: ren[e]
    b = ModelBuilder()
    for v in sorted(m.nodes):
        b.node(m.labels_of(v), m.types_of(v), id=ren[v])
    for w in sorted(m.wrappings):
        b.wrapping(ren[w].id, [ren[v] for v in m.wrappings[w]], m.labels_of(w), m.types_of(w))
    for (s, a), d in m.attrs.items():
        b.edge(f(s), a, f(d))
    for name, args in m.relations:
        b.rel(name, *map(f, args))
    return b.build()


def extend(m: Model, rng, types=("t", "s", "u", "v")) -> Model:
    """A model carrying at least the information of ``m``."""
    b = m.to_builder()
    ents = m.entities()
    for _ in range(rng.randint(1, 3)):
        r = rng.random()
        e = rng.choice(ents)
        if r < 0.6:
            b.tag(e, types=[rng.choice(types)])
        else:
            b.rel("r", e, rng.choice(ents))
    return b.build()


def _is_hom(src: Model, dst: Model, h: dict) -> bool:
    for e in src.entities():
        img = h[e]
        if not src.types_of(e) <= dst.types_of(img):
            return False
        if not src.labels_of(e) <= dst.labels_of(img):
            return False
    for (s, a), d in src.attrs.items():
        if dst.attrs.get((h[s], a)) != h[d]:
            return False
    for name, args in src.relations:
        if (name, tuple(h[x] for x in args)) not in dst.relations:
            return False
    for w, ms in src.wrappings.items():
        for v in ms:
            if not isinstance(h[v], int) or h[v] not in dst.wrappings[h[w]]:
                return False
    return True


def weakenings(m: Model):
    """Every model obtained by dropping one type, one attribute edge,
    one relation, one label or by splitting a multiply labelled node."""
    b0 = m.to_builder
    for e, ts in m.types.items():
        for t in ts:
            b = b0()
            b.types[e] = set(ts) - {t}
            yield f"drop type {t} of {e}", b.build()
    for key in m.attrs:
        b = b0()
        del b.attrs[key]
        yield f"drop edge {key}", b.build()
    for r in m.relations:
        b = b0()
        b.relations.discard(r)
        yield f"drop relation {r}", b.build()
    for e, ls in m.labels.items():
        if len(ls) < 2 or isinstance(e, Wrap):
            continue
        for k in sorted(ls):
            b = b0()
            b.labels[e] = set(ls) - {k}
            fresh = b.node([k])
            w = m.wrapper_of(e)
            if w is not None:
                b.wrappings[w].add(fresh)
            yield f"split {k} off {e}", b.build()


def alpha_equal(f, g) -> bool:
    """Structural equality of first-order formulas up to bound-variable names."""

    def go(a, b, env_a, env_b, depth):
        if type(a) is not type(b):
            return False
        if isinstance(a, Pred):
            return a.name == b.name and len(a.args) == len(b.args) and all(
                env_a.get(x, ("free", x)) == env_b.get(y, ("free", y)) for x, y in zip(a.args, b.args)
            )
        if isinstance(a, Equal):
            return env_a.get(a.left, ("free", a.left)) == env_b.get(b.left, ("free", b.left)) and env_a.get(
                a.right, ("free", a.right)
            ) == env_b.get(b.right, ("free", b.right))
        if isinstance(a, (FTrue, FFalse)):
            return True
        if isinstance(a, FNot):
            return go(a.body, b.body, env_a, env_b, depth)
        if isinstance(a, (FAnd, FOr)):
            return len(a.parts) == len(b.parts) and all(
                go(x, y, env_a, env_b, depth) for x, y in zip(a.parts, b.parts)
            )
        if isinstance(a, Implies):
            return go(a.left, b.left, env_a, env_b, depth) and go(a.right, b.right, env_a, env_b, depth)
        if isinstance(a, (Exists, Forall)):
            if len(a.vars) != len(b.vars):
                return False
            ea, eb = dict(env_a), dict(env_b)
            for i, (x, y) in enumerate(zip(a.vars, b.vars)):
                ea[x] = eb[y] = ("bound", depth, i)
            return go(a.body, b.body, ea, eb, depth + 1)
        raise TypeError(a)

    return go(f, g, {}, {}, 0)


def quantifier_prefix(f) -> list[str]:
    """Quantifier kinds along the main spine, e.g. ``['forall', 'exists']``."""
    out = []
    while True:
        if isinstance(f, Forall):
            out.append("forall")
            f = f.body
        elif isinstance(f, Exists):
            out.append("exists")
            f = f.body
        elif isinstance(f, Implies):
            f = f.right
        elif isinstance(f, FAnd) and f.parts:
            f = f.parts[-1]
        else:
            return out


def walker_frame() -> Model:
    """The tall fast walker: 4 nodes, 3 attribute edges."""
    b = ModelBuilder()
    person = b.node(["@b0"], ["person"])
    walk = b.node(["@b1"], ["walking"])
    fast = b.node(types=["fast"])
    tall = b.node(types=["tall"])
    b.edge(walk, "agent", person)
    b.edge(walk, "manner", fast)
    b.edge(person, "size", tall)
    return b.build()


# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
