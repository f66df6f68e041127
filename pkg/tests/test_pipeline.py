import pytest
from conftest import fixture_path, formula, model
from helpers import alpha_equal

from wrapframe.core import ModelBuilder
from wrapframe.foltrans import Exists, FAnd, Forall, Implies
from wrapframe.minmodel import minimal_model_set
from wrapframe.morphism import is_isomorphic, juxtapose, unify
from wrapframe.pipeline import DerivationSpec, SpecError, build_complex, parse_equation, run_pipeline
from wrapframe.scope import apply_constraints, check_instance, solve, transcribe


def spec(name):
    return DerivationSpec.load(fixture_path(name))


def write_spec(tmp_path, text):
    p = tmp_path / "spec.toml"
    p.write_text(text)
    return p


def lex(*names):
    return "\n".join(f'{n} = "{fixture_path(f"lex_{n}.avl")}"' for n in names)


class TestEquations:
    def test_paths(self):
        a = parse_equation("?e.restr == $S2")
        assert parse_equation("$S2 == ?e.restr") == a

    @pytest.mark.parametrize("text", ["@a . t", "?x == ?x"])
    def test_rejected(self, text):
        with pytest.raises(SpecError):
            parse_equation(text)


class TestSpecLoading:
    def test_every_dog_barks(self):
        s = spec("every_dog_barks.toml")
        assert s.entries == ("every", "dog", "barks")
        assert s.instance is not None and s.top == "@b0"
        assert len(s.equation_atoms()) == 5

    def test_unknown_key(self, tmp_path):
        with pytest.raises(SpecError, match="unknown keys"):
            DerivationSpec.load(write_spec(tmp_path, 'entries = ["a"]\nbogus = 1\n'))

    def test_missing_entries(self, tmp_path):
        with pytest.raises(SpecError, match="entries"):
            DerivationSpec.load(write_spec(tmp_path, "equations = []\n"))

    def test_missing_lexicon_file(self, tmp_path):
        with pytest.raises(SpecError, match="no lexicon file"):
            DerivationSpec.load(write_spec(tmp_path, 'entries = ["nothing_here"]\n'))

    def test_bad_toml(self, tmp_path):
        with pytest.raises(SpecError):
            DerivationSpec.load(write_spec(tmp_path, "entries = [\n"))

    def test_label_shared_between_entries(self, tmp_path):
        text = f'entries = ["mary", "mary2"]\n[lexicon]\n{lex("mary")}\nmary2 = "{fixture_path("lex_mary.avl")}"\n'
        with pytest.raises(SpecError, match="occurs in entries"):
            DerivationSpec.load(write_spec(tmp_path, text))

    def test_equation_on_unknown_label(self, tmp_path):
        text = f'entries = ["mary"]\nequations = ["@zz == @b0"]\n[lexicon]\n{lex("mary")}\n'
        with pytest.raises(SpecError, match="@zz"):
            DerivationSpec.load(write_spec(tmp_path, text))

    def test_unknown_top(self, tmp_path):
        text = f'entries = ["mary"]\ntop = "@nope"\n[lexicon]\n{lex("mary")}\n'
        with pytest.raises(SpecError, match="top"):
            DerivationSpec.load(write_spec(tmp_path, text))


class TestRun:
    def test_every_dog_barks(self):
        res = run_pipeline(spec("every_dog_barks.toml"))
        assert len(res.combinations) == 1 and res.combinations[0].pruned is None
        (r,) = res.readings
        assert r.verdict is True and r.error is None
        f = r.formula
        assert isinstance(f, Forall) and isinstance(f.body, Implies)
        assert r.gqt.startswith("every(")

    def test_matches_fixture_complex(self):
        res = run_pipeline(spec("every_dog_barks.toml"))
        assert is_isomorphic(res.combinations[0].complex, model("fig5_bark_dog_complex.json"))

    def test_student_stroked_cat(self):
        res = run_pipeline(spec("student_stroked_cat.toml"))
        assert len(res.readings) == 2
        heads = sorted(r.gqt.split("(", 1)[0] for r in res.readings)
        assert heads == ["a", "every"]
        assert all(r.error is None for r in res.readings)

    def test_mary_walks_fast(self):
        res = run_pipeline(spec("mary_walks_fast.toml"))
        (r,) = res.readings
        assert is_isomorphic(r.reading.model, model("fig3_final.json"))
        assert isinstance(r.formula, Exists) and isinstance(r.formula.body, FAnd)
        assert check_instance(r.formula, model("fig3_final.json"))
        b = model("fig3_final.json").to_builder()
        for v in list(b.types):
            b.types[v] = {t for t in b.types[v] if t != "fast"}
        assert not check_instance(r.formula, b.build())

    def test_instance_override(self):
        res = run_pipeline(spec("every_dog_barks.toml"), instance=model("inst_one_dog_silent.json"))
        assert [r.verdict for r in res.readings] == [False]

    def test_max_readings(self):
        assert len(run_pipeline(spec("student_stroked_cat.toml"), max_readings=1).readings) == 1

    def test_equals_manual_composition(self):
        s = spec("every_dog_barks.toml")
        (m_every,), (m_dog,), (m_barks,) = (minimal_model_set(formula(f"lex_{n}.avl")) for n in s.entries)
        j = juxtapose([m_every, m_dog, m_barks])
        c = apply_constraints(unify(j, j, s.equation_atoms()), s.constraints)
        res = run_pipeline(s)
        assert is_isomorphic(c, res.combinations[0].complex)
        (manual,) = solve(c)
        assert alpha_equal(transcribe(manual), res.readings[0].formula)


class TestPruning:
    def test_overlap(self):
        b = ModelBuilder()
        b.node(["@a"])
        m = b.build()
        c, why = build_complex([m, m], frozenset())
        assert c is None and "unify" in why

    def test_unification_failure(self):
        b = ModelBuilder()
        b.node(["@a"])
        one = b.build()
        b = ModelBuilder()
        x = b.node(["?x"])
        b.wrapping("T", [x], ["$T"])
        other = b.build()
        c, why = build_complex([one, other], {parse_equation("@a == $T")})
        assert c is None and why.startswith("unification failed")

    def test_incompatibility(self):
        b = ModelBuilder()
        b.node(["@a"], ["every"])
        from wrapframe.scope import parse_constraints

        c, why = build_complex([b.build()], frozenset(), parse_constraints("every -> FALSE"))
        assert c is None and "incompatibility" in why

    def test_wrong_top_is_pruned(self, tmp_path):
        text = (fixture_path("every_dog_barks.toml").read_text()
                .replace('top = "@b0"', 'top = "?x1"'))
        text = text.replace('"lex_', f'"{fixture_path("")}/lex_').replace('"inst_', f'"{fixture_path("")}/inst_')
        res = run_pipeline(DerivationSpec.load(write_spec(tmp_path, text)))
        assert res.readings == [] and "top hole" in res.combinations[0].pruned
