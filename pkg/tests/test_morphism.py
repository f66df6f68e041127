import random

import pytest
from conftest import formula, model
from helpers import all_homomorphisms, brute_isomorphic, extend, renumber
from hypothesis import given
from hypothesis import strategies as st

from wrapframe.core import ModelBuilder, Signature, Wrap, is_valid
from wrapframe.generate import random_model
from wrapframe.minmodel import minimal_model_set
from wrapframe.morphism import (
    LabelOverlapError,
    SignatureMismatch,
    find_homomorphism,
    is_homomorphism,
    is_isomorphic,
    juxtapose,
    subsumes,
    unify,
    unify_explain,
)
from wrapframe.pipeline import parse_equation

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def mms1(name):
    (m,) = minimal_model_set(formula(name))
    return m


def single(label, *types):
    b = ModelBuilder()
    b.node([label], types)
    return b.build()


class TestHomomorphism:
    def test_hom_cat_bottom_to_top(self):
        bottom, top = mms1("hom_cat_bottom.avl"), mms1("hom_cat_top.avl")
        h = find_homomorphism(bottom, top)
        assert h is not None
        see = bottom.lookup("@b1")
        theme = bottom.attrs[(see, "theme")]
        # the theme node collapses onto the cat node
        assert h(theme) == top.lookup("@b0")
        assert h(see) == top.lookup("@b1")
        assert all_homomorphisms(bottom, top) == [h.as_dict()]

    def test_hom_cat_top_to_bottom(self):
        bottom, top = mms1("hom_cat_bottom.avl"), mms1("hom_cat_top.avl")
        assert find_homomorphism(top, bottom) is None
        assert all_homomorphisms(top, bottom) == []

    def test_identity(self):
        m = model("fig4_p_cycle.json")
        h = find_homomorphism(m, m)
        assert h.as_dict() == {e: e for e in m.entities()}

    def test_node_may_map_to_wrapping(self):
        # b --Q--> an unlabelled node vs b --Q--> a wrapping
        b = ModelBuilder()
        x = b.node(["@b"])
        b.edge(x, "Q", b.node())
        src = b.build()
        dst = model("fig4_p_cycle.json").to_builder()
        h = find_homomorphism(src, model("fig4_p_cycle.json"))
        assert h is not None and isinstance(h(1), Wrap)

    def test_signature_mismatch(self):
        m = model("fig2_unified.json")
        with pytest.raises(SignatureMismatch):
            find_homomorphism(m, m, Signature.from_labels(["@b0"]))

    def test_is_homomorphism_rejects_partial(self):
        m = model("fig2_unified.json")
        assert not is_homomorphism(m, m, {})

    @given(seeds)
    def test_unique(self, seed):
        rng = random.Random(seed)
        m = random_model(rng)
        for n in (m, extend(m, rng), random_model(rng)):
            hs = all_homomorphisms(m, n)
            assert len(hs) <= 1
            h = find_homomorphism(m, n)
            assert (h.as_dict() if h else None) == (hs[0] if hs else None)


class TestSubsumption:
    def test_fig2(self):
        assert subsumes(model("fig2_mary_sees_john.json"), model("fig2_unified.json"))
        assert not subsumes(model("fig2_unified.json"), model("fig2_mary_sees_john.json"))

    def test_reflexive(self):
        m = model("fig4_p_loop.json")
        assert subsumes(m, m) and is_isomorphic(m, m)

    def test_abstract_models_incomparable(self):
        a, b = model("fig4_p_cycle.json"), model("fig4_p_loop.json")
        assert not subsumes(a, b) and not subsumes(b, a)
        assert all_homomorphisms(a, b) == [] and all_homomorphisms(b, a) == []

    def test_merged_node_is_more_informative(self):
        b = ModelBuilder()
        x, y, n = b.node(["?x"]), b.node(["?y"]), b.node()
        b.edge(x, "P", n)
        b.edge(y, "P", n)
        chain = b.build()
        b = ModelBuilder()
        xy, n = b.node(["?x", "?y"]), b.node()
        b.edge(xy, "P", n)
        merged = b.build()
        assert subsumes(chain, merged)
        assert not subsumes(merged, chain)

    @given(seeds)
    def test_mutual_subsumption_is_isomorphism(self, seed):
        rng = random.Random(seed)
        m = random_model(rng)
        for n in (renumber(m, rng), extend(m, rng), random_model(rng)):
            assert (subsumes(m, n) and subsumes(n, m)) == brute_isomorphic(m, n)

    @given(seeds)
    def test_partial_order(self, seed):
        rng = random.Random(seed)
        a = random_model(rng)
        b = extend(a, rng)
        c = extend(b, rng)
        assert subsumes(a, a)
        assert subsumes(a, b) and subsumes(b, c) and subsumes(a, c)
        if subsumes(b, a):
            assert brute_isomorphic(a, b)


class TestJuxtapose:
    def test_fig3_lexicon(self):
        lex = [mms1(f"lex_{n}.avl") for n in ("walks", "mary", "fast")]
        j = juxtapose(lex)
        assert len(j.nodes) == sum(len(m.nodes) for m in lex) == 5
        assert j.all_labels() == {"@b0", "@k1", "@b1", "@k0"}

    def test_single(self):
        m = model("fig2_unified.json")
        assert juxtapose([m]) is m

    def test_two_nodes(self):
        j = juxtapose([single("@a"), single("@b")])
        assert len(j.nodes) == 2 and is_valid(j)

    def test_overlap(self):
        with pytest.raises(LabelOverlapError, match="unify"):
            juxtapose([single("@a"), single("@a")])

    def test_wrapping_ids_kept_apart(self):
        j = juxtapose([mms1("lex_dog.avl"), mms1("lex_student.avl")])
        assert len(j.wrappings) == 2 and is_valid(j)


class TestUnify:
    def test_fig2(self):
        u = unify(model("fig2_mary_sees_john.json"), model("fig2_john_is_tall.json"))
        assert len(u.nodes) == 4 and is_isomorphic(u, model("fig2_unified.json"))

    def test_fig3(self):
        j = juxtapose([mms1(f"lex_{n}.avl") for n in ("walks", "mary", "fast")])
        eqs = {parse_equation("@k1 == @b1"), parse_equation("@k0 == @b0")}
        u = unify(j, j, eqs)
        assert len(u.nodes) == 3 and is_isomorphic(u, model("fig3_final.json"))
        assert u.labels_of(u.lookup("@b0")) == {"@b0", "@k0"}

    def test_idempotent(self):
        m = model("fig4_p_cycle.json")
        assert is_isomorphic(unify(m, m), m)

    def test_clash(self):
        r = unify_explain(single("@a"), single("$T"), {parse_equation("@a == $T")})
        assert r.model is None and r.reason
        assert not r

    def test_only_equations(self):
        from wrapframe.avl import PathTop

        with pytest.raises(TypeError):
            unify(single("@a"), single("@b"), {PathTop("@a", ())})

    def test_path_into_missing_node_is_created(self):
        u = unify(single("@a"), single("@b"), {parse_equation("@a.P == @b")})
        assert u.attrs[(u.lookup("@a"), "P")] == u.lookup("@b")

    @given(seeds)
    def test_upper_bound_and_least(self, seed):
        rng = random.Random(seed)
        a = random_model(rng)
        b = extend(renumber(a, rng), rng)
        k = unify(a, b)
        assert k is not None
        assert subsumes(a, k) and subsumes(b, k)
        for _ in range(5):
            k2 = extend(k, rng)
            assert subsumes(a, k2) and subsumes(b, k2)
            assert subsumes(k, k2)

    @given(seeds)
    def test_commutative_and_associative(self, seed):
        rng = random.Random(seed)
        a = random_model(rng)
        b, c = extend(a, rng), extend(a, rng)
        ab, ba = unify(a, b), unify(b, a)
        assert is_isomorphic(ab, ba)
        left = unify(ab, c)
        right = unify(a, unify(b, c))
        assert is_isomorphic(left, right)
