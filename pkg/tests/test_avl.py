import random

import pytest
from conftest import formula, model
from hypothesis import given
from hypothesis import strategies as st

from wrapframe.avl import (
    And,
    At,
    AvlSyntaxError,
    DAnd,
    DAttr,
    DLabel,
    DOr,
    DTop,
    DType,
    In,
    InWr,
    Not,
    PathEq,
    PathType,
    Rel,
    Top,
    UnknownSymbolError,
    Wr,
    Wrapped,
    clause,
    parse,
    parse_document,
    satisfies,
    satisfies_cnf,
    to_cnf,
    to_text,
)
from wrapframe.core import ModelBuilder
from wrapframe.generate import random_formula, random_model

seeds = st.integers(min_value=0, max_value=2**32 - 1)

ABSTR = "$T1:[?x . P:(P:#?x | P:#?y)] & @b . Q:#$T3 & $T2:[?y . P:t] & r(@b, ?y) & ?x.P == ?y & $T3:[?z . Q:TOP]"


class TestParse:
    def test_abstract_formula(self):
        f = parse(ABSTR)
        expected = And(
            And(
                And(
                    And(
                        And(
                            Wrapped("$T1", "?x", DAttr("P", DOr(DAttr("P", DLabel("?x")), DAttr("P", DLabel("?y"))))),
                            At("@b", DAttr("Q", DLabel("$T3"))),
                        ),
                        Wrapped("$T2", "?y", DAttr("P", DType("t"))),
                    ),
                    Rel("r", (("@b", ()), ("?y", ()))),
                ),
                PathEq("?x", ("P",), "?y", ()),
            ),
            Wrapped("$T3", "?z", DAttr("Q", DTop())),
        )
        assert f == expected

    def test_bare_label_without_hash(self):
        assert parse("@b . Q:$T3") == At("@b", DAttr("Q", DLabel("$T3")))

    def test_top(self):
        assert parse("TOP") == Top()

    def test_mary(self):
        assert parse("@b0 . (walking & AGENT:Mary & MANNER:fast)") == At(
            "@b0", DAnd(DAnd(DType("walking"), DAttr("AGENT", DType("Mary"))), DAttr("MANNER", DType("fast")))
        )

    def test_attribute_chain_sugar(self):
        assert parse("@b . P Q:t") == At("@b", DAttr("P", DAttr("Q", DType("t"))))

    def test_lowercase_attribute_by_position(self):
        assert parse("@b . agent:t") == At("@b", DAttr("agent", DType("t")))

    def test_comment(self):
        assert parse("% a comment\n?x . t  % trailing") == At("?x", DType("t"))

    def test_negation_in_description_rejected(self):
        with pytest.raises(AvlSyntaxError, match="1:6"):
            parse("@b . !t")

    def test_unbalanced(self):
        with pytest.raises(AvlSyntaxError, match="expected"):
            parse("@b . (t")

    def test_unknown_symbol(self):
        with pytest.raises(UnknownSymbolError):
            parse("types: t\nattrs: P\n@b . s")

    def test_preamble_signature(self):
        f, sig = parse_document("types: t\nattrs: P\nrels: r/2\n@b . P:t & r(@b, @b)")
        assert sig.types == {"t"} and sig.relations == {"r": 2}
        assert isinstance(f, And)

    def test_wrapped_needs_sorts(self):
        with pytest.raises(AvlSyntaxError):
            parse("?T:[?x . t]")

    def test_fixture_files_parse(self, fx):
        for p in sorted(fx.glob("*.avl")):
            parse(p.read_text())

    @given(seeds)
    def test_print_parse_round_trip(self, seed):
        f = random_formula(random.Random(seed), size=4)
        assert parse(to_text(f)) == f

    def test_round_trip_abstract(self):
        f = parse(ABSTR)
        assert parse(to_text(f)) == f


class TestSatisfies:
    def test_fig4_left(self):
        assert satisfies(model("fig4_p_cycle.json"), parse(ABSTR))

    def test_fig4_left_without_type(self):
        m = model("fig4_p_cycle.json")
        b = m.to_builder()
        b.types.pop(m.lookup("?x"))
        assert not satisfies(b.build(), parse(ABSTR))

    def test_top(self):
        assert satisfies(model("fig2_unified.json"), Top())

    def test_undefined_label_is_false(self):
        assert not satisfies(model("fig2_unified.json"), parse("@nobody . TOP"))
        assert satisfies(model("fig2_unified.json"), parse("!(@nobody . TOP)"))

    def test_label_description_compares_identity(self):
        m = model("fig2_unified.json")
        assert satisfies(m, parse("@b0 . agent:#@b1"))
        assert not satisfies(m, parse("@b0 . agent:#@b2"))

    def test_mary(self):
        assert satisfies(model("fig2_unified.json"), formula("fig2_mary_sees_john.avl"))
        assert not satisfies(model("fig2_mary_sees_john.json"), formula("fig2_unified.avl"))


def _two_node_models():
    """Every model with nodes b (labelled @b) and one unlabelled node
    reachable from it, typed by subsets of {t1, t2}."""
    subsets = [(), ("t1",), ("t2",), ("t1", "t2")]
    for tb in subsets:
        b = ModelBuilder()
        b.node(["@b"], tb)
        yield b.build()
        for to in subsets:
            for wrapped in (False, True):
                b = ModelBuilder()
                x = b.node(["@b"], tb)
                y = b.node([], to)
                b.edge(x, "P", y)
                if wrapped:
                    b.wrapping("W", [x, y], ["$W"])
                yield b.build()


class TestCnf:
    def test_abstract_clause_count(self):
        cnf = to_cnf(parse(ABSTR))
        assert len(cnf) == 11
        assert sum(1 for c in cnf if c.is_integrity) == 2
        assert sum(1 for c in cnf if not c.is_horn) == 1

    def test_top(self):
        assert len(to_cnf(Top())) == 0

    def test_disjunctive_type(self):
        cnf = to_cnf(parse("@b.(t1 | t2)"))
        assert set(cnf.clauses) == {
            clause((), [PathType("@b", (), "t1"), PathType("@b", (), "t2")]),
            clause([InWr("@b")], ()),
            clause([Wr("@b")], ()),
        }

    def test_disjunctive_type_semantics(self):
        f = parse("@b.(t1 | t2)")
        cnf = to_cnf(f)
        count = 0
        for m in _two_node_models():
            count += 1
            assert satisfies(m, f) == satisfies_cnf(m, cnf)
        assert count == 36

    def test_negation_becomes_integrity_clause(self):
        # not(not INWR & not WR & b:t) is b:t -> INWR | WR
        cnf = to_cnf(parse("!(@b . t)"))
        assert set(cnf.clauses) == {clause([PathType("@b", (), "t")], [InWr("@b"), Wr("@b")])}
        assert set(to_cnf(parse("!($T:[?x . t])")).clauses) == {clause([In("?x", "$T"), PathType("?x", (), "t")], ())}

    def test_weight_counts_attribute_symbols(self):
        assert to_cnf(parse(ABSTR)).weight == 7

    @given(seeds)
    def test_semantics_preserved(self, seed):
        rng = random.Random(seed)
        f = random_formula(rng, size=4)
        cnf = to_cnf(f)
        for _ in range(5):
            m = random_model(rng)
            assert satisfies(m, f) == satisfies_cnf(m, cnf)


class TestComplementarity:
    @given(seeds)
    def test_wrapped_label_never_satisfies_at(self, seed):
        m = random_model(random.Random(seed), n_wrappings=1)
        for k, e in m.label_index.items():
            if m.is_wrapped(e) or not isinstance(e, int):
                assert not satisfies(m, At(k, DTop()))

    def test_wrapping_label_false_under_at(self):
        m = model("fig4_p_cycle.json")
        assert not satisfies(m, parse("?x . TOP"))
        assert satisfies(m, parse("$T1:[?x . TOP]"))
        assert satisfies(m, parse("@b . TOP"))

    def test_not(self):
        m = model("fig4_p_cycle.json")
        assert satisfies(m, Not(parse("?x . TOP")))
