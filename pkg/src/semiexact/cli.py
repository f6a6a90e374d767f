"""Command line interface: ``semiexact {check,lambek,axioms,gen}``.

Exit codes: 0 when every check passes, 1 for usage or input errors, 2 when
a property predicted by a theorem fails (the report names it and the seed)
and 3 when the hypotheses of the Lambek theorems are not met.

With ``--format machine`` every report line is ``key=value``; keys are
stable and listed in the README.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import core, suites
from .dsl import DiagramDoc, parse_diagram, serialize
from .errors import DiagramError, SemiexactError
from .generate import DEFAULT_MAX_SIZE, GENERATORS, RunConfig, generate_diagram
from .lambek import CheckReport, lambek_check
from .models import MODELS, get_model

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_HYPOTHESES = 3


def _bool(x) -> str:
    if x is None:
        return "n/a"
    return "true" if x else "false"


class Report:
    """Ordered ``key=value`` lines, rendered either verbatim or aligned."""

    def __init__(self):
        self.items = []
        self.messages = []

    def put(self, key, value):
        if isinstance(value, bool) or value is None:
            value = _bool(value)
        self.items.append((key, str(value)))

    def say(self, text):
        self.messages.append(text)

    def render(self, fmt) -> str:
        if fmt == "machine":
            return "".join(f"{k}={v}\n" for k, v in self.items)
        width = max((len(k) for k, _ in self.items), default=0)
        lines = [f"{k.ljust(width)}  {v}" for k, v in self.items]
        return "\n".join(self.messages + lines) + "\n"


# -- per-document reports ----------------------------------------------------


def _lambek_lines(out: Report, rep: CheckReport, model):
    fmt = model.format_fingerprint
    out.put("model", rep.model)
    out.put("hyp.gf_null", rep.gf_null)
    out.put("hyp.gpfp_null", rep.gpfp_null)
    out.put("hyp.b_exact", rep.b_exact)
    out.put("rows.top.exact", rep.top_row_exact)
    out.put("rows.bottom.exact", rep.bottom_row_exact)
    out.put("rows.exact", rep.rows_exact)
    out.put("model.homological", rep.homological)
    out.put("imS.fingerprint", fmt(rep.im_s_fingerprint))
    out.put("kerT.fingerprint", fmt(rep.ker_t_fingerprint))
    applicable = rep.existence_applicable
    out.put("lambek.exists", rep.lambda_exists if applicable else None)
    out.put("lambek.unique", rep.lambda_unique if applicable else None)
    out.put("lambek.iso", rep.lambda_iso if applicable else None)
    # outside a homological model the iso is a report, not a prediction
    out.put("lambek.iso_predicted", rep.iso_applicable)
    if rep.lambda_error:
        out.say(f"lambda: {rep.lambda_error}")
    if rep.oracle is not None:
        out.put("oracle.method", rep.oracle.method)
        out.put("oracle.imS.fingerprint", fmt(rep.oracle.im_s_fingerprint))
        out.put("oracle.kerT.fingerprint", fmt(rep.oracle.ker_t_fingerprint))
        out.put("oracle.invariants_match", rep.oracle.invariants_match)
        out.put("oracle.agrees", rep.oracle.agrees)
        for note in rep.oracle.anomalies:
            out.say(f"oracle: {note}")
    else:
        out.put("oracle.agrees", None)
        if rep.oracle_error:
            out.say(f"oracle skipped: {rep.oracle_error}")


def _status(failures, hypotheses_met) -> int:
    if failures:
        return EXIT_FAILED
    return EXIT_OK if hypotheses_met else EXIT_HYPOTHESES


def _diagram_lemmas(doc: DiagramDoc, homological: bool):
    """Lemma checks on the morphisms of one document; returns failing lemma names."""
    d = doc.diagram()
    failed = []

    def expect(ok, name):
        if not ok and name not in failed:
            failed.append(name)

    for f in d.morphisms:
        nd = core.normal_decomposition(f)
        expect(nd.im.arrow @ nd.middle @ nd.coim.arrow == f, "normal_decomposition_recomposes")
        k, c = core.classify(core.kernel(f).arrow), core.classify(core.cokernel(f).arrow)
        expect(k.is_exact and k.is_n_mono and c.is_exact and c.is_n_epi, "exact_morphism_properties")
        if homological:
            mid = core.classify(nd.middle)
            expect(mid.is_n_mono and mid.is_n_epi, "middle_morphism")
    pairs = [(d.f, d.g), (d.fp, d.gp), (d.f, d.b), (d.a, d.fp), (d.g, d.c), (d.b, d.gp)]
    for f, g in pairs:
        seq = core.composition_sequence(f, g)
        expect(seq.order_two, "composition_lemma")
        expect(all(seq.exact_at[p] for p in ("ker_f", "ker_gf", "coker_gf", "coker_g")), "composition_lemma")
        expect(seq.phi_exact and seq.omega_exact, "composition_lemma")
        if homological:
            if core.is_exact(f):
                expect(seq.exact_at["ker_g"] and seq.psi_exact, "composition_lemma_conditional")
            if core.is_exact(g):
                expect(seq.exact_at["coker_f"] and seq.epsilon_exact, "composition_lemma_conditional")
    return failed


def cmd_lambek(args) -> int:
    doc = _load(args.file)
    model = get_model(doc.model)
    rep = lambek_check(doc.diagram(), oracle=not args.no_oracle)
    out = Report()
    _lambek_lines(out, rep, model)
    failures = rep.failures()
    met = rep.existence_applicable and rep.rows_exact
    code = _status(failures, met)
    out.put("failures", ",".join(failures) or "none")
    out.put("exit", code)
    for name in failures:
        out.say(f"FAILED {name} in {args.file}")
    sys.stdout.write(out.render(args.format))
    return code


def cmd_check(args) -> int:
    doc = _load(args.file)
    model = get_model(doc.model)
    rep = lambek_check(doc.diagram(), oracle=not args.no_oracle)
    out = Report()
    _lambek_lines(out, rep, model)
    lemma_failures = _diagram_lemmas(doc, model.homological)
    for name in ("normal_decomposition_recomposes", "exact_morphism_properties", "composition_lemma"):
        out.put(f"lemma.{name}", name not in lemma_failures)
    if model.homological:
        out.put("lemma.middle_morphism", "middle_morphism" not in lemma_failures)
        out.put("lemma.composition_lemma_conditional", "composition_lemma_conditional" not in lemma_failures)
    failures = rep.failures() + lemma_failures
    met = rep.existence_applicable and rep.rows_exact
    code = _status(failures, met)
    out.put("failures", ",".join(failures) or "none")
    out.put("exit", code)
    for name in failures:
        out.say(f"FAILED {name} in {args.file}")
    sys.stdout.write(out.render(args.format))
    return code


# -- sampled suites ------------------------------------------------------------


def cmd_axioms(args) -> int:
    names = [args.model] if args.model else sorted(MODELS)
    out = Report()
    out.put("seed", args.seed)
    out.put("trials", args.trials)
    failed = []
    for name in names:
        model = get_model(name)
        out.put(f"{name}.ex2", model.ex2)
        out.put(f"{name}.homological", model.homological)
        for prop in suites.applicable(name):
            res = suites.run_property(prop, name, seed=args.seed, trials=args.trials, max_size=args.max_size)
            out.put(f"{name}.{prop}.passed", res.passed)
            out.put(f"{name}.{prop}.exercised", res.exercised)
            if not res.passed:
                trial, message = res.failures[0]
                failed.append(prop)
                out.say(f"FAILED {prop} model={name} seed={args.seed} trial={trial}: {message}")
        if name == "grp":
            inner, outer, composite = suites.kernel_composition_witness()
            out.put("grp.witness.inner_is_kernel", inner)
            out.put("grp.witness.outer_is_kernel", outer)
            out.put("grp.witness.composite_is_kernel", composite)
            out.say("witness: <(12)(34)> -> V4 -> A4 composes two kernels into a non-kernel")
    code = EXIT_FAILED if failed else EXIT_OK
    out.put("failures", ",".join(dict.fromkeys(failed)) or "none")
    out.put("exit", code)
    sys.stdout.write(out.render(args.format))
    return code


def cmd_gen(args) -> int:
    cfg = _config(args)
    if not args.check:
        chunks = []
        for t in range(cfg.trials):
            header = f"# seed {cfg.seed} trial {t} generator {cfg.generator}\n"
            chunks.append(header + serialize(generate_diagram(cfg, t)))
        if args.out:
            outdir = Path(args.out)
            outdir.mkdir(parents=True, exist_ok=True)
            for t, text in enumerate(chunks):
                (outdir / f"{cfg.model}_{cfg.seed}_{t}.diagram").write_text(text, encoding="utf-8")
        else:
            sys.stdout.write("\n".join(chunks))
        return EXIT_OK

    model = get_model(cfg.model)
    out = Report()
    out.put("model", cfg.model)
    out.put("seed", cfg.seed)
    out.put("trials", cfg.trials)
    out.put("generator", cfg.generator)
    counts = dict.fromkeys(("iso", "oracle_agrees", "invariants_match", "nontrivial"), 0)
    failed = []
    for t in range(cfg.trials):
        rep = lambek_check(generate_diagram(cfg, t).diagram())
        counts["iso"] += bool(rep.lambda_iso)
        counts["oracle_agrees"] += bool(rep.oracle_agrees)
        counts["invariants_match"] += bool(rep.oracle is not None and rep.oracle.invariants_match)
        zero = model.fingerprint(model.zero_object())
        counts["nontrivial"] += rep.im_s_fingerprint != zero
        for name in rep.failures():
            failed.append(name)
            out.say(f"FAILED {name} model={cfg.model} seed={cfg.seed} trial={t}")
    for key, value in counts.items():
        out.put(f"count.{key}", value)
    code = EXIT_FAILED if failed else EXIT_OK
    out.put("failures", ",".join(dict.fromkeys(failed)) or "none")
    out.put("exit", code)
    sys.stdout.write(out.render(args.format))
    return code


# -- plumbing ------------------------------------------------------------------


def _load(path) -> DiagramDoc:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_diagram(text)


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        seed=args.seed,
        trials=args.trials,
        max_size=args.max_size,
        format=args.format,
        model=args.model or "ptset",
        generator=args.generator,
    )


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")

    sampled = argparse.ArgumentParser(add_help=False)
    sampled.add_argument("--seed", type=_nonneg, default=0)
    sampled.add_argument("--trials", type=_nonneg, default=100)
    sampled.add_argument("--model", choices=sorted(MODELS))
    sampled.add_argument("--max-size", type=_nonneg, default=None, help="size bound (defaults: %s)" % DEFAULT_MAX_SIZE)

    parser = argparse.ArgumentParser(prog="semiexact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("check", "hypotheses, Lambek theorems and diagram lemmas for one file"),
        ("lambek", "Lambek invariants, Lambda and the oracle comparison for one file"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="diagram file, or - for stdin")
        p.add_argument("--no-oracle", action="store_true")

    sub.add_parser("axioms", parents=[common, sampled], help="sampled axiom and lemma suites")

    p = sub.add_parser("gen", parents=[common, sampled], help="seeded random diagrams")
    p.set_defaults(trials=1)
    p.add_argument("--generator", choices=GENERATORS, default="extended")
    p.add_argument("--check", action="store_true", help="run lambek checks instead of printing documents")
    p.add_argument("--out", help="write one file per trial into this directory")
    return parser


COMMANDS = {"check": cmd_check, "lambek": cmd_lambek, "axioms": cmd_axioms, "gen": cmd_gen}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except DiagramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SemiexactError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
