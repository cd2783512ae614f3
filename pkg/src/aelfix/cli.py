"""Command-line front-end.

Subcommands: ``lfp`` (least fixpoint by either engine), ``query``
(skeptical truth value of a formula), ``expansions`` (autoepistemic model
enumeration), ``lp`` (program embedding, projection, oracle comparison)
and ``check`` (engine bridge identities on a concrete input).  Exit codes:
0 success, 1 parse error, 2 cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .effective import (ThreeFolTheory, concretize, derive_rep, instantiate_pair,
                        least_fixpoint_rep)
from .errors import CapExceededError, ParseError, UndeclaredAtomError
from .lp import (ael1, ael2, fitting_kunen, projection, well_founded)
from .operator import (autoepistemic_models, derive, least_fixpoint,
                       skeptical_value, theory_alphabet)
from .prover import Prover
from .report import RunReport, input_digest, render_figures, render_json, render_kv
from .semantics import ensure_explicit_cap
from .syntax import parse_modal, parse_program, parse_theory, theory_atoms
from .values import TruthValue3

DEFAULT_CAP = 16


def _read(path: str) -> bytes:
    with open(path, "rb") as handle:
        return handle.read()


def _literal_rows_fields(report: RunReport, literals, rows) -> None:
    report.add("modal-literals", len(literals))
    for i, lit in enumerate(literals):
        values = " ".join(row[i].symbol for row in rows)
        report.add("literal", f"{lit} | {values}")
    report.literal_names = [str(lit) for lit in literals]
    report.literal_rows = [list(row) for row in rows]


def cmd_lfp(args: argparse.Namespace, cap: int) -> RunReport:
    data = _read(args.theory_file)
    theory = parse_theory(data.decode())
    report = RunReport("lfp", input_digest(data))
    report.add("engine", args.engine)
    alphabet = theory_alphabet(theory)
    report.add("alphabet", " ".join(alphabet.atoms) or "-")

    if args.engine == "explicit":
        trace = least_fixpoint(theory, alphabet, cap=cap)
        report.add("iterations", trace.iterations)
        if args.trace:
            for i, pair in enumerate(trace.pairs):
                report.add(f"trace-{i}", pair)
        report.add("fixpoint-pair", trace.fixpoint)
        report.add("complete", "yes" if trace.fixpoint.is_complete else "no")
        _literal_rows_fields(report, trace.literals, trace.literal_values)
        report.pair_sizes = [(len(p.upper), len(p.lower)) for p in trace.pairs]
        report.world_count = alphabet.world_count
    else:
        run = least_fixpoint_rep(theory)
        report.add("iterations", run.iterations)
        if args.trace:
            for i, rep in enumerate(run.theories):
                report.add(f"trace-{i}", rep)
        for f in run.fixpoint:
            report.add("fixpoint-formula", f)
        _literal_rows_fields(report, run.literals, run.value_rows)
        report.entailment_calls = run.entailment_calls
        if len(alphabet) <= cap:
            pair = concretize(run.fixpoint, alphabet)
            report.add("fixpoint-pair", pair)
            report.add("complete", "yes" if pair.is_complete else "no")
    return report


def cmd_query(args: argparse.Namespace, cap: int) -> RunReport:
    data = _read(args.theory_file)
    theory = parse_theory(data.decode())
    formula = parse_modal(args.formula)
    report = RunReport("query", input_digest(data))
    report.add("engine", args.engine)
    report.add("formula", formula)
    if args.engine == "explicit":
        alphabet = theory_alphabet(theory, extra=theory_atoms((formula,)))
        ensure_explicit_cap(alphabet, cap)
        verdict = skeptical_value(theory, formula, alphabet)
    else:
        prover = Prover()
        run = least_fixpoint_rep(theory, prover)
        verdict = _rep_query(run.fixpoint, formula, prover)
        report.entailment_calls = prover.entailment_calls
    report.add("verdict", verdict.symbol)
    return report


def _rep_query(rep: ThreeFolTheory, formula, prover: Prover) -> TruthValue3:
    from .effective import rep_modal_value
    return rep_modal_value(rep, formula, prover)


def cmd_expansions(args: argparse.Namespace, cap: int) -> RunReport:
    data = _read(args.theory_file)
    theory = parse_theory(data.decode())
    report = RunReport("expansions", input_digest(data))
    found = autoepistemic_models(theory)
    report.add("count", len(found))
    for i, (worlds, is_fixpoint) in enumerate(found, start=1):
        report.add(f"model-{i}", worlds)
        report.add(f"model-{i}-complete-fixpoint", "yes" if is_fixpoint else "no")
    return report


def cmd_lp(args: argparse.Namespace, cap: int) -> RunReport:
    data = _read(args.program_file)
    program = parse_program(data.decode())
    embed = ael1 if args.embedding == "ael1" else ael2
    theory = embed(program)
    report = RunReport("lp", input_digest(data))
    report.add("embedding", args.embedding)
    report.add("atoms", " ".join(program.atoms) or "-")

    if args.engine == "explicit":
        alphabet = theory_alphabet(theory, extra=program.atoms)
        ensure_explicit_cap(alphabet, cap)
        trace = least_fixpoint(theory, alphabet)
        result = projection(trace.fixpoint, program.atoms)
        report.add("iterations", trace.iterations)
    else:
        from .effective import rep_modal_value
        from .lp import ThreeValuedInterpretation
        from .syntax import Atom
        prover = Prover()
        run = least_fixpoint_rep(theory, prover)
        memo: dict = {}
        result = ThreeValuedInterpretation(
            program.atoms,
            tuple(rep_modal_value(run.fixpoint, Atom(a), prover, memo)
                  for a in program.atoms))
        report.add("iterations", run.iterations)
        report.entailment_calls = prover.entailment_calls
    for atom, value in result.items():
        report.add(f"atom-{atom}", value.symbol)

    if args.oracle:
        oracle = well_founded if args.embedding == "ael1" else fitting_kunen
        report.add("oracle", "well-founded" if args.embedding == "ael1"
                   else "fitting-kunen")
        expected = oracle(program)
        for atom, value in expected.items():
            report.add(f"oracle-{atom}", value.symbol)
        report.add("verdict", "AGREE" if expected == result else "DISAGREE")
    return report


def cmd_check(args: argparse.Namespace, cap: int) -> RunReport:
    data = _read(args.theory_file)
    theory = parse_theory(data.decode())
    report = RunReport("check", input_digest(data))
    alphabet = theory_alphabet(theory)
    ensure_explicit_cap(alphabet, cap)

    prover = Prover()
    run = least_fixpoint_rep(theory, prover)
    trace = least_fixpoint(theory, alphabet)
    report.add("iterations", run.iterations)

    pairs = [concretize(rep, alphabet) for rep in run.theories]
    aligned = all(pair == trace.pairs[min(i, len(trace.pairs) - 1)]
                  for i, pair in enumerate(pairs))
    report.add("identity-iteration-equality", "ok" if aligned else "FAILED")

    bridge = all(concretize(derive_rep(theory, rep, prover), alphabet)
                 == derive(theory, concretize(rep, alphabet))
                 for rep in run.theories)
    report.add("identity-operator-bridge", "ok" if bridge else "FAILED")

    representation = all(derive(theory, pair)
                         == concretize(instantiate_pair(theory, pair), alphabet)
                         for pair in pairs)
    report.add("identity-representation", "ok" if representation else "FAILED")

    explicit_fix = derive(theory, trace.fixpoint) == trace.fixpoint
    rep_fix = derive_rep(theory, run.fixpoint, prover).formulas == run.fixpoint.formulas
    report.add("identity-fixpoint-transfer",
               "ok" if explicit_fix and rep_fix else "FAILED")
    report.add("verdict", "ok" if aligned and bridge and representation
               and explicit_fix and rep_fix else "FAILED")
    report.entailment_calls = prover.entailment_calls
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aelfix",
        description="Three-valued fixpoint reasoning for autoepistemic theories")
    parser.add_argument("--cap", type=int, default=None,
                        help="alphabet cap for explicit-set operations "
                             "(default: AEL_ATOM_CAP or 16)")
    parser.add_argument("--json", action="store_true",
                        help="emit the report as a JSON document")
    parser.add_argument("--timings", action="store_true",
                        help="include wall time in the report")
    parser.add_argument("--figures", metavar="DIR", default=None,
                        help="render report figures as PNG files into DIR")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lfp", help="least fixpoint of a theory")
    p.add_argument("theory_file")
    p.add_argument("--engine", choices=("explicit", "sder"), default="sder")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(run=cmd_lfp)

    p = sub.add_parser("query", help="skeptical truth value of a formula")
    p.add_argument("theory_file")
    p.add_argument("formula")
    p.add_argument("--engine", choices=("explicit", "sder"), default="sder")
    p.set_defaults(run=cmd_query)

    p = sub.add_parser("expansions", help="enumerate autoepistemic models")
    p.add_argument("theory_file")
    p.set_defaults(run=cmd_expansions)

    p = sub.add_parser("lp", help="embed a logic program and project the fixpoint")
    p.add_argument("program_file")
    p.add_argument("--embedding", choices=("ael1", "ael2"), default="ael1")
    p.add_argument("--engine", choices=("explicit", "sder"), default="sder")
    p.add_argument("--oracle", action="store_true",
                   help="compare against the independent oracle")
    p.set_defaults(run=cmd_lp)

    p = sub.add_parser("check", help="verify the engine bridge identities")
    p.add_argument("theory_file")
    p.set_defaults(run=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cap = args.cap
    if cap is None:
        cap = int(os.environ.get("AEL_ATOM_CAP", DEFAULT_CAP))

    started = time.perf_counter()
    try:
        report = args.run(args, cap)
    except (ParseError, UndeclaredAtomError) as exc:
        print(f"aelfix: error: {exc}", file=sys.stderr)
        return 1
    except CapExceededError as exc:
        print(f"aelfix: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"aelfix: error: {exc}", file=sys.stderr)
        return 1
    report.wall_time_ms = (time.perf_counter() - started) * 1e3

    rendered = (render_json(report, args.timings) if args.json
                else render_kv(report, args.timings))
    sys.stdout.write(rendered)
    if args.figures:
        for path in render_figures(report, args.figures):
            print(f"figure: {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
