"""Command line front end: ``wrapframe SUBCOMMAND ...``.

Exit codes: 0 success or true, 1 false or no model, 2 usage or input
errors, 3 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional

from .avl.parser import AvlSyntaxError, parse
from .avl.semantics import satisfies
from .core.dot import to_dot
from .core.jsonio import SchemaError, dumps, load, serialize
from .core.model import Model
from .core.validate import validate
from .foltrans import theory_axioms, to_smtlib, translate_formula, translate_model
from .foltrans.syntax import to_sexpr, to_text
from .minmodel import ModelConstructionError, NoLabelledContent, minimal_model_set
from .morphism import find_homomorphism, is_isomorphic, unify_explain
from .pipeline import DerivationSpec, SpecError, outcome, parse_equation, run_pipeline
from .scope import ComplexError, solve

OK, FALSE, USAGE, INTERNAL = 0, 1, 2, 3

log = logging.getLogger("wrapframe")


class UsageError(Exception):
    pass


def _color(text: str, code: str) -> str:
    mode = os.environ.get("WRAPFRAME_COLOR", "auto")
    on = mode == "always" or (mode == "auto" and sys.stderr.isatty())
    return f"\033[{code}m{text}\033[0m" if on else text


def _err(msg: str) -> None:
    print(_color("error:", "31") + " " + msg, file=sys.stderr)


def _note(msg: str) -> None:
    print(_color("note:", "33") + " " + msg, file=sys.stderr)


def load_model(path: str) -> Model:
    """A model from JSON, or the single minimal model of an ``.avl`` file."""
    p = Path(path)
    if not p.exists():
        raise UsageError(f"{path}: no such file")
    if p.suffix == ".avl":
        mms = minimal_model_set(parse(p.read_text()))
        if len(mms) != 1:
            raise UsageError(f"{path}: formula has {len(mms)} minimal models, expected exactly one")
        return mms[0]
    return load(p)


def _emit_model(m: Model, emit: str, name: str = "frame") -> str:
    if emit == "json":
        return dumps(m)
    if emit == "dot":
        return to_dot(m, name)
    if emit == "fol":
        return translate_model(m).text()
    if emit == "smt":
        return to_smtlib([], translate_model(m))
    raise UsageError(f"--emit {emit} does not apply to models")


def _write(text: str, out: Optional[Path] = None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n")


# subcommands


def cmd_minmodel(args) -> int:
    f = parse(Path(args.file).read_text())
    try:
        mms = minimal_model_set(f)
    except NoLabelledContent as exc:
        _err(f"{args.file}: {exc}")
        return FALSE
    if not mms:
        _note(f"{args.file}: unsatisfiable, no minimal model")
        return FALSE
    stem = Path(args.file).stem
    outdir = Path(args.output) if args.output else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    ext = {"json": "json", "dot": "dot", "fol": "fol", "smt": "smt2"}[args.emit]
    for i, m in enumerate(mms):
        text = _emit_model(m, args.emit, f"{stem}_{i}")
        if outdir:
            target = outdir / f"{stem}.{i}.{ext}"
            _write(text, target)
            print(target)
        else:
            if len(mms) > 1:
                print(f"# model {i}")
            _write(text)
    return OK


def _print_readings(outcomes, emit: str, verdicts: bool) -> None:
    for i, o in enumerate(outcomes):
        r = o.reading
        print(f"reading {i}: {' > '.join(r.provenance()) or '(no quantifier)'}")
        if emit == "json":
            print(json.dumps({"model": serialize(r.model), "provenance": r.provenance()}, indent=2, sort_keys=True))
        elif emit == "dot":
            print(to_dot(r.model, f"reading_{i}"))
        if emit in ("gqt", "fol", "smt") and o.gqt is not None:
            print(f"  gqt: {o.gqt}")
        if o.formula is not None:
            if emit == "smt":
                print(to_smtlib([o.formula], check=False))
            elif emit != "json" and emit != "dot":
                print(f"  fol: {to_text(o.formula)}")
                print(f"  sexpr: {to_sexpr(o.formula)}")
        if o.error:
            print(f"  transcription: {o.error}")
        if verdicts and o.verdict is not None:
            print(f"  instance: {'true' if o.verdict else 'false'}")


def cmd_pipeline(args) -> int:
    spec = DerivationSpec.load(args.spec)
    instance = load_model(args.instance) if args.instance else None
    res = run_pipeline(spec, instance, args.max_readings)
    for name in spec.entries:
        print(f"entry {name}: {len(res.mms[name])} minimal model(s)")
    for c in res.combinations:
        choice = ", ".join(f"{n}#{k}" for n, k in zip(spec.entries, c.choice))
        if c.pruned:
            print(f"combination {c.index} [{choice}]: pruned ({c.pruned})")
            continue
        print(f"combination {c.index} [{choice}]: {len(c.readings)} reading(s)")
        _print_readings(c.readings, args.emit, instance is not None or spec.instance is not None)
    return OK if res.readings else FALSE


def cmd_unify(args) -> int:
    a, b = load_model(args.a), load_model(args.b)
    eqs = [parse_equation(e) for e in args.eq or ()]
    u = unify_explain(a, b, eqs)
    if u.model is None:
        _note(f"no unifier: {u.reason}")
        return FALSE
    _write(_emit_model(u.model, args.emit))
    return OK


def cmd_subsumes(args) -> int:
    h = find_homomorphism(load_model(args.a), load_model(args.b))
    if h is None:
        print("false")
        return FALSE
    print("true")
    if args.verbose:
        for k, v in sorted(h.as_dict().items(), key=lambda kv: str(kv[0])):
            print(f"  {k} -> {v}")
    return OK


def cmd_iso(args) -> int:
    same = is_isomorphic(load_model(args.a), load_model(args.b))
    print("true" if same else "false")
    return OK if same else FALSE


def cmd_solve(args) -> int:
    m = load_model(args.complex)
    readings = solve(m, args.max_readings)
    if not readings:
        _note("no reading: the scope constraints cannot be met")
        return FALSE
    instance = load_model(args.instance) if args.instance else None
    _print_readings([outcome(r, instance) for r in readings], args.emit, instance is not None)
    return OK


def cmd_transcribe(args) -> int:
    args.emit = args.emit if args.emit in ("gqt", "fol", "smt") else "fol"
    return cmd_solve(args)


def cmd_check(args) -> int:
    instance = load_model(args.instance)
    target = Path(args.target)
    if target.suffix == ".avl":
        ok = satisfies(instance, parse(target.read_text()))
        print("true" if ok else "false")
        return OK if ok else FALSE
    if target.suffix == ".toml":
        res = run_pipeline(DerivationSpec.load(target), instance, args.max_readings)
        outcomes = res.readings
    else:
        outcomes = [outcome(r, instance) for r in solve(load_model(args.target), args.max_readings)]
    if not outcomes:
        _note("no reading to check")
        return FALSE
    for i, o in enumerate(outcomes):
        verdict = "unsupported" if o.verdict is None else ("true" if o.verdict else "false")
        print(f"reading {i}: {verdict}" + (f" ({o.error})" if o.error else ""))
    return OK if all(o.verdict for o in outcomes) else FALSE


def cmd_dot(args) -> int:
    _write(to_dot(load_model(args.file), Path(args.file).stem))
    return OK


def cmd_fol(args) -> int:
    p = Path(args.file)
    if p.suffix == ".avl":
        f = parse(p.read_text())
        fol = translate_formula(f)
        axioms = []
        if args.axioms:
            from .foltrans import formula_signature

            axioms = theory_axioms(formula_signature(f), args.depth)
        if args.emit == "smt":
            _write(to_smtlib([fol] + [a.formula for a in axioms]))
        else:
            print(to_text(fol))
            for a in axioms:
                print(a)
        return OK
    m = load_model(args.file)
    if args.emit == "smt":
        axioms = theory_axioms(m.signature(), args.depth) if args.axioms else []
        _write(to_smtlib([a.formula for a in axioms], translate_model(m)))
    else:
        _write(translate_model(m).text())
    return OK


def cmd_validate(args) -> int:
    problems = validate(load_model(args.file))
    for v in problems:
        print(v)
    return FALSE if problems else OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wrapframe", description="Feature structures with wrappings.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    ap.add_argument("--seed-corpus", metavar="DIR", help="write the random property-test corpus to DIR and exit")
    ap.add_argument("--seed", type=int, default=0, help="seed for --seed-corpus")
    sub = ap.add_subparsers(dest="command")

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        return p

    p = add("minmodel", cmd_minmodel, "minimal model set of an .avl formula")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="directory for one file per model")
    p.add_argument("--emit", choices=["json", "dot", "fol", "smt"], default="json")

    p = add("pipeline", cmd_pipeline, "run a derivation spec end to end")
    p.add_argument("spec")
    p.add_argument("--instance")
    p.add_argument("--max-readings", type=int)
    p.add_argument("--emit", choices=["json", "dot", "fol", "smt", "gqt"], default="gqt")

    p = add("unify", cmd_unify, "unify two models")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--eq", action="append", help="extra equation such as '@k0 == @b0'")
    p.add_argument("--emit", choices=["json", "dot", "fol", "smt"], default="json")

    p = add("subsumes", cmd_subsumes, "does A subsume B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--verbose", action="store_true", help="print the node mapping")

    p = add("iso", cmd_iso, "are A and B isomorphic")
    p.add_argument("a")
    p.add_argument("b")

    for name, fn, default in (("solve", cmd_solve, "gqt"), ("transcribe", cmd_transcribe, "fol")):
        p = add(name, fn, f"{name} the readings of a quantified complex")
        p.add_argument("complex")
        p.add_argument("--instance")
        p.add_argument("--max-readings", type=int)
        p.add_argument("--emit", choices=["json", "dot", "fol", "smt", "gqt"], default=default)

    p = add("check", cmd_check, "check readings or a formula against an instance")
    p.add_argument("target", help=".avl formula, .toml derivation spec or complex")
    p.add_argument("instance")
    p.add_argument("--max-readings", type=int)

    p = add("dot", cmd_dot, "render a model as Graphviz")
    p.add_argument("file")

    p = add("fol", cmd_fol, "first-order translation of a formula or model")
    p.add_argument("file")
    p.add_argument("--emit", choices=["fol", "smt"], default="fol")
    p.add_argument("--axioms", action="store_true", help="add the theory axioms")
    p.add_argument("--depth", type=int, default=4, help="path bound of the reachability axiom")

    p = add("validate", cmd_validate, "report violated model invariants")
    p.add_argument("file")
    return ap


def main(argv: Optional[list] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.seed_corpus:
        from .generate import write_corpus

        n = len(write_corpus(args.seed_corpus, args.seed))
        print(f"wrote {n} files to {args.seed_corpus}")
        return OK
    if not getattr(args, "fn", None):
        ap.print_usage(sys.stderr)
        return USAGE
    try:
        return args.fn(args)
    except (UsageError, SpecError, AvlSyntaxError, SchemaError, ComplexError, OSError) as exc:
        _err(str(exc))
        return USAGE
    except (ModelConstructionError, AssertionError) as exc:
        _err(f"internal invariant broken: {exc}")
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
