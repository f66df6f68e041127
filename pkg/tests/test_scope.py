import random
from itertools import permutations

import pytest
from conftest import formula, model
from helpers import alpha_equal
from hypothesis import given
from hypothesis import strategies as st

from wrapframe.core import ModelBuilder, Wrap
from wrapframe.foltrans import Exists, FNot, Forall, Implies, Pred
from wrapframe.minmodel import minimal_model_set
from wrapframe.morphism import find_homomorphism, is_isomorphic, subsumes
from wrapframe.scope import (
    DEFAULT_RULES,
    ConstraintLoop,
    ConstraintSyntaxError,
    InstanceError,
    QuantifiedComplex,
    Reading,
    TranscriptionError,
    UnsupportedQuantifier,
    apply_constraints,
    check_instance,
    free_fragments,
    parse_constraints,
    solve,
    to_gqt,
    transcribe,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def synthetic(kinds, above=()):
    """Top hole @h over quantifiers ?q0.. of the given kinds.

    Quantifier i restricts over wrapping $R{i} and scopes over the shared
    core $C; a pair (i, j) in ``above`` makes q_i's nuclear scope dominate
    q_j as well.
    """
    b = ModelBuilder()
    top = b.node(["@h"], ["hole"])
    core = b.node(["?c"], ["core"])
    b.wrapping("C", [core], ["$C"])
    b.rel("scope", top, Wrap("C"))
    qs = []
    for i, kind in enumerate(kinds):
        q = b.node([f"?q{i}"], [kind])
        r, n = b.node([f"?r{i}"], [f"t{i}"]), b.node()
        b.wrapping(f"R{i}", [r], [f"$R{i}"])
        b.edge(core, f"arg{i}", n)
        b.wrappings[Wrap("C")].add(n)
        hr, hn = b.node(types=["hole"]), b.node(types=["hole"])
        b.edge(q, "restr", hr)
        b.edge(q, "nscope", hn)
        b.edge(q, "rvar", r)
        b.edge(q, "nsvar", n)
        b.rel("scope", hr, Wrap(f"R{i}"))
        b.rel("scope", hn, Wrap("C"))
        b.rel("scope", top, q)
        qs.append((q, hn))
    for i, j in above:
        b.rel("scope", qs[i][1], qs[j][0])
    return b.build()


def oracle_plugs(m):
    """Every hole-to-fragment bijection forming a tree that respects all
    dominance edges, by exhaustive enumeration."""
    qc = QuantifiedComplex(m)
    holes = sorted(qc.holes)
    frags = sorted(qc.fragments, key=str)
    owner = qc.owner
    hole_of = {r: [h for h in holes if owner.get(h) == r] for r in frags}
    out = set()
    if len(holes) != len(frags):
        return out
    for perm in permutations(frags):
        plugs = dict(zip(holes, perm))

        def below(x):
            seen, todo = set(), [x]
            while todo:
                y = todo.pop()
                if y not in seen:
                    seen.add(y)
                    todo.extend(plugs[h] for h in hole_of[y])
            return seen

        if below(plugs[qc.top]) != set(frags):
            continue
        if all(x in below(plugs[h]) for h, x in qc.dominance):
            out.add(frozenset(plugs.items()))
    return out


def solver_plugs(m):
    return {frozenset(r.plugs.items()) for r in solve(m)}


def bark_dog():
    return model("fig5_bark_dog_complex.json")


class TestConstraints:
    def test_hierarchy(self):
        b = ModelBuilder()
        b.node(["?e"], ["every"])
        m = apply_constraints(b.build())
        assert m.types_of(0) == {"every", "univ-quant", "quant", "logical"}

    def test_cascade_types_the_hole(self):
        b = ModelBuilder()
        q = b.node(["?q"], ["some"])
        b.edge(q, "restr", b.node())
        m = apply_constraints(b.build())
        assert "hole" in m.types_of(m.attrs[(0, "restr")])
        assert (0, "nscope") not in m.attrs

    def test_incompatibility(self, fx):
        cs = parse_constraints(DEFAULT_RULES + (fx / "constraints.txt").read_text())
        b = ModelBuilder()
        b.node(["?q"], ["every", "dog"])
        assert apply_constraints(b.build(), cs) is None
        b = ModelBuilder()
        b.node(["?q"], ["every"])
        assert apply_constraints(b.build(), cs) is not None

    def test_attribute_equation_merges(self):
        cs = parse_constraints("activity & motion -> actor == mover")
        b = ModelBuilder()
        x = b.node(["@x"], ["activity", "motion"])
        b.edge(x, "actor", b.node(types=["a"]))
        b.edge(x, "mover", b.node(types=["m"]))
        m = apply_constraints(b.build(), cs)
        d = m.attrs[(m.lookup("@x"), "actor")]
        assert d == m.attrs[(m.lookup("@x"), "mover")]
        assert m.types_of(d) == {"a", "m"}

    def test_equation_creates_shared_target(self):
        cs = parse_constraints("activity -> actor == mover")
        b = ModelBuilder()
        b.node(["@x"], ["activity"])
        m = apply_constraints(b.build(), cs)
        assert m.attrs[(0, "actor")] == m.attrs[(0, "mover")]

    def test_loop(self):
        cs = parse_constraints("t -> P:t")
        b = ModelBuilder()
        b.node(["@x"], ["t"])
        with pytest.raises(ConstraintLoop):
            apply_constraints(b.build(), cs)

    def test_wrappingization(self):
        cs = parse_constraints("option wrappingization\nhole -> logical")
        b = ModelBuilder()
        x = b.node(["?x"])
        b.wrapping("T", [x], ["$T"], ["t"])
        assert apply_constraints(b.build(), cs) is None

    def test_scope_transitivity(self):
        m = synthetic(["every", "some"], above=[(0, 1)])
        closed = apply_constraints(m, parse_constraints("option scope-transitivity"))
        qc = QuantifiedComplex(closed)
        nscope0 = m.attrs[(m.lookup("?q0"), "nscope")]
        assert Wrap("R1") in qc.targets(nscope0)
        assert solver_plugs(closed) == solver_plugs(m)

    @pytest.mark.parametrize(
        "text,line",
        [("every", 1), ("% fine\nTOP -> t\nt -> ", 3), ("option nope", 1), ("a -> TOP", 1)],
    )
    def test_syntax_errors(self, text, line):
        with pytest.raises(ConstraintSyntaxError) as e:
            parse_constraints(text)
        assert e.value.line == line

    @given(seeds)
    def test_idempotent_and_monotone(self, seed):
        rng = random.Random(seed)
        b = ModelBuilder()
        pool = ["every", "some", "a", "no", "conj", "hole", "t"]
        x = b.node(["@x"], rng.sample(pool, rng.randint(0, 3)))
        for a in rng.sample(["restr", "nscope", "P"], rng.randint(0, 3)):
            b.edge(x, a, b.node(types=rng.sample(pool, rng.randint(0, 2))))
        m = b.build()
        c = apply_constraints(m)
        if c is None:
            return
        assert subsumes(m, c)
        again = apply_constraints(c)
        assert again is not None and is_isomorphic(again, c)


class TestComplex:
    def test_fig10_fragments(self):
        m = model("fig10_complex.json")
        qc = QuantifiedComplex(m)
        assert len(qc.fragments) == 5 and len(qc.holes) == 5
        assert qc.top is not None and qc.top not in qc.owner
        free = free_fragments(m)
        assert [f.root for f in free] == sorted(r for r in qc.fragments if isinstance(r, int))
        assert all(len(f.holes) == 2 for f in free)

    def test_wrappings_are_leaf_fragments(self):
        qc = QuantifiedComplex(model("fig10_complex.json"))
        assert all(f.holes == () for r, f in qc.fragments.items() if isinstance(r, Wrap))


class TestSolve:
    def test_fig10(self):
        rs = solve(model("fig10_complex.json"))
        assert len(rs) == 2
        assert not is_isomorphic(rs[0].model, rs[1].model)
        assert any(is_isomorphic(r.model, model("fig10_every_a.json")) for r in rs)

    def test_bark_dog(self):
        (r,) = solve(bark_dog())
        assert r.provenance()[0] == f"n{r.root}"

    def test_cycle_fails(self):
        assert solve(synthetic(["every", "some"], above=[(0, 1), (1, 0)])) == []

    def test_no_quantifier(self):
        (r,) = solve(synthetic([]))
        assert r.root == Wrap("C")

    def test_max_readings(self):
        assert len(solve(synthetic(["some"] * 3), max_readings=2)) == 2

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 6)])
    def test_free_order(self, n, expected):
        m = synthetic(["some"] * n)
        assert len(solve(m)) == expected == len(oracle_plugs(m))

    def test_four_quantifiers_chain(self):
        m = synthetic(["every", "some", "no", "a"], above=[(0, 1), (2, 3)])
        assert solver_plugs(m) == oracle_plugs(m)
        assert len(solve(m)) == 6

    @pytest.mark.parametrize("name", ["fig10_complex.json", "fig5_bark_dog_complex.json"])
    def test_oracle_on_fixtures(self, name):
        assert solver_plugs(model(name)) == oracle_plugs(model(name))

    @given(seeds)
    def test_oracle_on_random_complexes(self, seed):
        rng = random.Random(seed)
        n = rng.randint(0, 3)
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        m = synthetic(rng.choices(["every", "some", "no"], k=n), rng.sample(pairs, rng.randint(0, len(pairs))))
        assert solver_plugs(m) == oracle_plugs(m)

    @given(seeds)
    def test_readings_sound_and_subsumed(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        m = synthetic(["some"] * n, rng.sample(pairs, rng.randint(0, len(pairs))))
        qc = QuantifiedComplex(m)
        for r in solve(m):
            for h, x in qc.dominance:
                assert x in r.below(r.plugs[h])
            assert find_homomorphism(m, r.model) is not None

    def test_fixture_readings_subsumed(self):
        for name in ("fig10_complex.json", "fig5_bark_dog_complex.json"):
            m = model(name)
            assert all(find_homomorphism(m, r.model) is not None for r in solve(m))

    def test_outscopes(self):
        m = synthetic(["every", "some"], above=[(0, 1)])
        (r,) = solve(m)
        q0, q1 = m.lookup("?q0"), m.lookup("?q1")
        assert r.outscopes(q0, q1) and not r.outscopes(q1, q0) and not r.outscopes(q0, q0)



class TestTranscribe:
    def test_single_wrapping(self):
        b = ModelBuilder()
        top = b.node(["@h"], ["hole"])
        y = b.node(["?y"], ["t"])
        b.wrapping("S", [y], ["$S"])
        b.rel("scope", top, Wrap("S"))
        (r,) = solve(b.build())
        assert alpha_equal(transcribe(r), Exists(("y",), Pred("t", ("y",))))

    def test_every_is_conservative_shape(self):
        (r,) = solve(synthetic(["every"]))
        f = transcribe(r)
        assert isinstance(f, Forall) and isinstance(f.body, Implies)
        assert "t0" in str(f.body.left) and "core" in str(f.body.right)

    def test_no_is_negated_existential(self):
        (r,) = solve(synthetic(["no"]))
        f = transcribe(r)
        assert isinstance(f, FNot) and isinstance(f.body, Exists)

    def test_scope_order_follows_reading(self):
        m = synthetic(["every", "some"])
        shapes = sorted(type(transcribe(r)).__name__ for r in solve(m))
        assert shapes == ["Exists", "Forall"]

    @pytest.mark.parametrize("kind", ["most", "the", "always", "neg"])
    def test_unsupported(self, kind):
        (r,) = solve(synthetic([kind]))
        with pytest.raises(UnsupportedQuantifier, match=kind):
            transcribe(r)

    def test_unresolved_hole(self):
        (r,) = solve(synthetic(["every"]))
        broken = Reading(r.model, r.root, {r.complex.top: r.root}, r.choices, r.source)
        with pytest.raises(TranscriptionError):
            transcribe(broken)

    def test_gqt(self):
        heads = sorted(to_gqt(r).split("(", 1)[0] for r in solve(model("fig10_complex.json")))
        assert heads == ["a", "every"]

    def test_closed(self):
        from wrapframe.foltrans import free_vars

        for r in solve(model("fig10_complex.json")) + solve(bark_dog()):
            assert free_vars(transcribe(r)) == frozenset()


class TestInstance:
    @pytest.mark.parametrize(
        "name,verdict",
        [("inst_two_dogs_bark.json", True), ("inst_one_dog_silent.json", False), ("inst_no_dog.json", True)],
    )
    def test_bark_dog(self, name, verdict):
        (r,) = solve(bark_dog())
        assert check_instance(transcribe(r), model(name)) is verdict

    def test_free_variable(self):
        with pytest.raises(InstanceError, match="free"):
            check_instance(Pred("t", ("x",)), model("inst_no_dog.json"))

    def test_wrappings_rejected(self):
        with pytest.raises(InstanceError, match="wrappings"):
            check_instance(Exists(("x",), Pred("t", ("x",))), model("fig4_p_cycle.json"))

    def test_donkey_readings_need_unsupported_rules(self):
        (m,) = minimal_model_set(formula("fig13_donkey_reduced.avl"))
        for r in solve(apply_constraints(m)):
            with pytest.raises(UnsupportedQuantifier):
                transcribe(r)
