"""Command-line front end.

Exit codes: 0 holds (or success), 1 fails, 2 unknown, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .automata import build_apa, export_hoa, remove_alternation
from .automata.nba import explicit_nba
from .classical import eval_ldl, eval_prompt, eval_rltl
from .formula import FragmentError, LogicId, propositions
from .lasso import LassoSyntaxError, LassoWord
from .mc import (
    SystemFormatError, mc_fixed_k, mc_rldl, mc_rprompt, parse_system,
)
from .reductions import lemma1_reduce
from .semantics import eval_rldl, eval_rprompt, eval_rpromptldl
from .syntax import ParseError, parse, render
from .truth import InvalidTruthValue, TruthValue

EXIT_HOLDS, EXIT_FAILS, EXIT_UNKNOWN, EXIT_ERROR = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _beta(text: str) -> TruthValue:
    try:
        return TruthValue.parse(text)
    except (ValueError, InvalidTruthValue) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _logic(text: str) -> LogicId:
    try:
        return LogicId.lookup(text)
    except (KeyError, ValueError):
        raise argparse.ArgumentTypeError(f"unknown logic {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robustlogics",
                                     description="Robust temporal logics over lasso words.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, logic_default=None, need_beta=False):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("-f", "--formula", help="formula text")
        src.add_argument("--formula-file", help="file holding the formula")
        if logic_default is not None:
            p.add_argument("--logic", type=_logic, default=logic_default,
                           help="rltl, ldl, prompt, rldl, rprompt or rpromptldl")
        p.add_argument("--beta", type=_beta, required=need_beta, help="truth value such as 0111")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("eval", help="evaluate a formula on a lasso word")
    common(p, LogicId.RLDL)
    p.add_argument("-w", "--word", required=True, help="lasso such as '{} | {p}'")
    p.add_argument("-k", type=int, help="prompt bound")
    p.add_argument("--diagnostics", action="store_true", help="print b'_1..b'_4 of every box")

    p = sub.add_parser("reduce", help="rPrompt-LTL formula to Prompt-LTL at one truth level")
    common(p, need_beta=True)

    p = sub.add_parser("compile", help="rLDL formula to a Büchi automaton in HOA format")
    common(p, need_beta=True)
    p.add_argument("--aps", help="comma-separated proposition order for the AP header")
    p.add_argument("-o", "--output", help="write HOA to this file instead of stdout")

    p = sub.add_parser("mc", help="model check a transition system")
    common(p, LogicId.RLDL, need_beta=True)
    p.add_argument("-s", "--system", required=True, help="transition system file")
    p.add_argument("-k", type=int, help="check a fixed prompt bound instead of searching")
    p.add_argument("--cutoff", type=int, help="largest bound tried by the search")

    p = sub.add_parser("oracle-check", help="run the randomized consistency suites")
    p.add_argument("--suite", action="append", choices=sorted(harness.SUITES),
                   help="suite to run (repeatable; default: all)")
    p.add_argument("--count", type=int, help="instances per suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _formula_text(args) -> str:
    if args.formula is not None:
        return args.formula
    with open(args.formula_file) as fh:
        return fh.read().strip()


def _emit(args, query: dict, verdict, value, witness, text: str) -> None:
    if args.format == "json":
        print(json.dumps({"query": query, "verdict": verdict, "value": value,
                          "witness": witness}))
    else:
        print(text)


def cmd_eval(args) -> int:
    text = _formula_text(args)
    phi = parse(text, args.logic)
    word = LassoWord.parse(args.word)
    needs_k = args.logic in (LogicId.PROMPT_LTL, LogicId.RPROMPT_LTL, LogicId.RPROMPT_LDL)
    if needs_k and args.k is None:
        raise UsageError(f"logic {args.logic.value} needs a bound -k")
    if args.diagnostics and args.logic != LogicId.RLDL:
        raise UsageError("--diagnostics is available for rldl only")
    lines = []
    if args.logic == LogicId.RLTL:
        value = str(eval_rltl(word, phi))
    elif args.logic == LogicId.LDL:
        value = str(eval_ldl(word, phi))
    elif args.logic == LogicId.PROMPT_LTL:
        value = str(eval_prompt(word, args.k, phi))
    elif args.logic == LogicId.RPROMPT_LTL:
        value = str(eval_rprompt(word, args.k, phi))
    elif args.logic == LogicId.RPROMPT_LDL:
        value = str(eval_rpromptldl(word, args.k, phi))
    else:
        result = eval_rldl(word, phi, diagnostics=args.diagnostics)
        if args.diagnostics:
            result, diag = result
            for box in sorted(diag, key=str):
                d = diag[box]
                sets = " ".join(f"R{i}={m}" for i, m in enumerate(d.match_sets, start=1))
                lines.append(f"{box}: b'={''.join(map(str, d.pre_bits))} {sets}")
        value = str(result)
    verdict, code = None, EXIT_HOLDS
    if args.beta is not None:
        holds = _at_least(value, args.beta)
        verdict, code = ("HOLDS", EXIT_HOLDS) if holds else ("FAILS", EXIT_FAILS)
    query = {"command": "eval", "logic": args.logic.value, "formula": render(phi),
             "word": str(word), "k": args.k}
    _emit(args, query, verdict, value, lines or None, "\n".join([value] + lines))
    return code


def _at_least(value: str, beta: TruthValue) -> bool:
    if value in ("0", "1"):
        return value == "1" or beta == TruthValue.V0000
    return TruthValue.parse(value) >= beta


def cmd_reduce(args) -> int:
    phi = parse(_formula_text(args), LogicId.RPROMPT_LTL)
    out = render(lemma1_reduce(phi, args.beta))
    _emit(args, {"command": "reduce", "formula": render(phi), "beta": str(args.beta)},
          None, out, None, out)
    return EXIT_HOLDS


def cmd_compile(args) -> int:
    phi = parse(_formula_text(args), LogicId.RLDL)
    if args.aps:
        aps = tuple(p.strip() for p in args.aps.split(",") if p.strip())
        missing = propositions(phi) - set(aps)
        if missing:
            raise UsageError(f"--aps lacks {', '.join(sorted(missing))}")
    else:
        aps = tuple(sorted(propositions(phi)))
    if args.beta == TruthValue.V0000:
        nba = explicit_nba(aps, [0], {0: [(lambda letter: True, 0)]}, [0])
    else:
        nba = remove_alternation(build_apa(phi, args.beta, aps))
    hoa = export_hoa(nba, name=f"{render(phi)} >= {args.beta}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(hoa)
    elif args.format == "text":
        sys.stdout.write(hoa)
    if args.format == "json":
        _emit(args, {"command": "compile", "formula": render(phi), "beta": str(args.beta)},
              None, hoa, None, hoa)
    return EXIT_HOLDS


def cmd_mc(args) -> int:
    phi = parse(_formula_text(args), args.logic)
    with open(args.system) as fh:
        system = parse_system(fh.read())
    if args.logic == LogicId.RLDL:
        if args.k is not None or args.cutoff is not None:
            raise UsageError("-k and --cutoff apply to rprompt only")
        verdict = mc_rldl(system, phi, args.beta)
    elif args.logic == LogicId.RPROMPT_LTL:
        if args.k is not None:
            verdict = mc_fixed_k(system, phi, args.beta, args.k)
        else:
            verdict = mc_rprompt(system, phi, args.beta, args.cutoff)
    else:
        raise UsageError(f"model checking supports rldl and rprompt, not {args.logic.value}")
    witness = None
    if verdict.lasso is not None:
        stem, loop = verdict.path
        witness = {"lasso": str(verdict.lasso), "stem": list(stem), "loop": list(loop)}
    query = {"command": "mc", "logic": args.logic.value, "formula": render(phi),
             "beta": str(args.beta), "system": args.system, "k": args.k}
    value = str(verdict.value) if verdict.value is not None else None
    _emit(args, query, str(verdict), value, witness, str(verdict))
    return verdict.exit_code


def cmd_oracle_check(args) -> int:
    names = args.suite or list(harness.SUITES)
    code = EXIT_HOLDS
    for name in names:
        suite = harness.SUITES[name]
        kwargs = {"seed": args.seed}
        if args.count is not None:
            kwargs["count"] = args.count
        else:
            kwargs["count"] = harness.DEFAULT_COUNTS[name]
        result = suite(**kwargs)
        if not result.ok:
            code = EXIT_FAILS
        query = {"command": "oracle-check", "suite": name, "seed": args.seed,
                 "count": kwargs["count"]}
        _emit(args, query, "HOLDS" if result.ok else "FAILS",
              {"checked": result.checked, "violations": result.violations},
              result.first_failure, result.summary())
    return code


COMMANDS = {
    "eval": cmd_eval,
    "reduce": cmd_reduce,
    "compile": cmd_compile,
    "mc": cmd_mc,
    "oracle-check": cmd_oracle_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; map that onto the error code
        return EXIT_ERROR if exc.code else EXIT_HOLDS
    try:
        return COMMANDS[args.command](args)
    except (ParseError, FragmentError, LassoSyntaxError, SystemFormatError, UsageError,
            InvalidTruthValue) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
