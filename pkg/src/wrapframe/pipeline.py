"""From lexical formulas and derivation equations to checked readings."""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .avl.atoms import EqAtom, atom_labels, eq
from .avl.parser import parse
from .avl.syntax import Formula, PathEq, formula_labels
from .core.jsonio import load
from .core.model import Model
from .foltrans.syntax import Fol
from .minmodel import minimal_model_set
from .morphism import LabelOverlapError, juxtapose, unify_explain
from .scope import (
    ComplexError,
    ConstraintSet,
    QuantifiedComplex,
    Reading,
    TranscriptionError,
    apply_constraints,
    check_instance,
    default_constraints,
    parse_constraints,
    solve,
    to_gqt,
    transcribe,
)

log = logging.getLogger(__name__)


class SpecError(ValueError):
    """The derivation spec is malformed or refers to missing material."""


def parse_equation(text: str) -> EqAtom:
    """``?y2 == ?x2`` or ``?e.restr == $S2`` as an equation atom."""
    f = parse(text)
    if not isinstance(f, PathEq):
        raise SpecError(f"not an equation: {text!r}")
    a = eq(f.left, f.lpath, f.right, f.rpath)
    if not isinstance(a, EqAtom):
        raise SpecError(f"trivial equation: {text!r}")
    return a


@dataclass
class DerivationSpec:
    """What a completed derivation hands to the semantics.

    The TOML layout::

        entries = ["every", "dog", "barks"]
        equations = ["?y2 == ?x2", "$S2 == $T2"]
        instance = "inst_two_dogs_bark.json"   # optional
        top = "@b0"                            # optional
        constraints = "constraints.txt"        # optional, added to the defaults

        [lexicon]                              # optional, default NAME.avl
        dog = "lex_dog.avl"
    """

    entries: tuple
    formulas: dict
    equations: tuple
    instance: Optional[Model] = None
    top: Optional[str] = None
    constraints: ConstraintSet = field(default_factory=default_constraints)
    source: Optional[Path] = None

    @classmethod
    def load(cls, path) -> "DerivationSpec":
        path = Path(path)
        try:
            doc = tomllib.loads(path.read_text())
        except tomllib.TOMLDecodeError as exc:
            raise SpecError(f"{path}: {exc}") from exc
        base = path.parent
        unknown = set(doc) - {"entries", "equations", "instance", "top", "constraints", "lexicon"}
        if unknown:
            raise SpecError(f"{path}: unknown keys {', '.join(sorted(unknown))}")
        entries = doc.get("entries")
        if not entries or not all(isinstance(e, str) for e in entries):
            raise SpecError(f"{path}: 'entries' must be a nonempty list of names")
        lexicon = doc.get("lexicon", {})
        formulas = {}
        for name in entries:
            f = base / lexicon.get(name, f"{name}.avl")
            if not f.exists():
                raise SpecError(f"{path}: no lexicon file {f} for entry {name!r}")
            formulas[name] = parse(f.read_text())
        eqs = tuple(doc.get("equations", ()))
        instance = load(base / doc["instance"]) if "instance" in doc else None
        cs = default_constraints()
        if "constraints" in doc:
            cs = cs + parse_constraints((base / doc["constraints"]).read_text())
        spec = cls(tuple(entries), formulas, eqs, instance, doc.get("top"), cs, path)
        spec.check()
        return spec

    def equation_atoms(self) -> frozenset:
        return frozenset(parse_equation(e) for e in self.equations)

    def check(self) -> None:
        owner: dict[str, str] = {}
        for name in self.entries:
            for k in formula_labels(self.formulas[name]):
                if k in owner:
                    raise SpecError(f"label {k} occurs in entries {owner[k]!r} and {name!r}")
                owner[k] = name
        for e in self.equations:
            for k in atom_labels(parse_equation(e)):
                if k not in owner:
                    raise SpecError(f"equation {e!r} mentions {k}, which no entry uses")
        if self.top is not None and self.top not in owner:
            raise SpecError(f"top label {self.top} is not used by any entry")


@dataclass
class ReadingOutcome:
    reading: Reading
    formula: Optional[Fol] = None
    gqt: Optional[str] = None
    verdict: Optional[bool] = None
    error: Optional[str] = None


@dataclass
class Combination:
    index: int
    choice: tuple
    complex: Optional[Model] = None
    pruned: Optional[str] = None
    readings: list = field(default_factory=list)


@dataclass
class PipelineResult:
    spec: DerivationSpec
    mms: dict
    combinations: list

    @property
    def readings(self) -> list[ReadingOutcome]:
        return [r for c in self.combinations for r in c.readings]


def build_complex(models, equations, constraints: Optional[ConstraintSet] = None) -> tuple[Optional[Model], Optional[str]]:
    """Juxtapose, unify with the equations and close under the constraints."""
    try:
        j = juxtapose(models)
    except LabelOverlapError as exc:
        return None, str(exc)
    u = unify_explain(j, j, equations)
    if u.model is None:
        return None, f"unification failed: {u.reason}"
    c = apply_constraints(u.model, constraints)
    if c is None:
        return None, "an incompatibility constraint fired"
    return c, None


def outcome(r: Reading, instance: Optional[Model] = None) -> ReadingOutcome:
    out = ReadingOutcome(r)
    try:
        out.gqt = to_gqt(r)
    except TranscriptionError as exc:
        out.error = str(exc)
        return out
    try:
        out.formula = transcribe(r)
    except TranscriptionError as exc:
        out.error = str(exc)
        return out
    if instance is not None:
        out.verdict = check_instance(out.formula, instance)
    return out


def run_pipeline(
    spec: DerivationSpec,
    instance: Optional[Model] = None,
    max_readings: Optional[int] = None,
) -> PipelineResult:
    instance = instance if instance is not None else spec.instance
    mms: dict[str, list[Model]] = {}
    for name in spec.entries:
        mms[name] = minimal_model_set(spec.formulas[name])
        log.info("entry %s: %d minimal model(s)", name, len(mms[name]))
    eqs = spec.equation_atoms()
    combos = []
    for i, choice in enumerate(product(*(range(len(mms[n])) for n in spec.entries))):
        combo = Combination(i, choice)
        combos.append(combo)
        models = [mms[n][k] for n, k in zip(spec.entries, choice)]
        combo.complex, combo.pruned = build_complex(models, eqs, spec.constraints)
        if combo.complex is None:
            continue
        try:
            qc = QuantifiedComplex(combo.complex)
        except ComplexError as exc:
            combo.pruned = str(exc)
            continue
        if spec.top is not None and qc.top != combo.complex.lookup(spec.top):
            combo.pruned = f"{spec.top} does not name the top hole"
            continue
        for r in solve(combo.complex, max_readings):
            combo.readings.append(outcome(r, instance))
    return PipelineResult(spec, mms, combos)


def load_formula(path) -> Formula:
    return parse(Path(path).read_text())
