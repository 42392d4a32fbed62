"""Command-line front end: ``fsmkit <command> FILE ...``.

Exit codes: 0 accept/true/success, 1 reject/false/counterexamples found,
2 usage or validation error, 3 step limit or undecided.
"""

from __future__ import annotations

import argparse
import sys

from .core import (
    DEFAULT_COUNT,
    DEFAULT_MAX_LEN,
    DEFAULT_SEED,
    FsmError,
    StepLimitExceeded,
    format_word,
    parse_word,
)
from .ctm import Ctm, apply_ctm
from .deciders import cfg_empty
from .definitions import RegexpDefinition, load_definition, render_definition
from .grammars import CFG, RG, Grammar, Undecided, deriv
from .machines import (
    DFA,
    NDFA,
    PDA,
    TM,
    FsaStep,
    PdaStep,
    StateMachine,
    apply_sm,
    make_ndfa,
    run_tm,
    show_transitions_sm,
)
from .testers import test_equiv_grammar, test_equiv_sm, test_grammar, test_sm
from .transforms import fsa_to_regexp, grammar_to_sm, ndfa_to_dfa, regexp_to_fsa, reverse_fsa, sm_to_grammar

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

CONVERT_TARGETS = ("dfa", "ndfa", "regexp", "grammar", "reverse", "pda")


class UsageError(FsmError):
    pass


def _machine(value, what="a machine"):
    """Machines as they are; regexps and regular grammars through their ndfa."""
    if isinstance(value, StateMachine):
        return value
    if isinstance(value, RegexpDefinition):
        return regexp_to_fsa(value.regexp, value.sigma)
    if isinstance(value, Grammar) and value.kind == RG:
        return grammar_to_sm(value)
    raise UsageError(f"expected {what}, got {_kind(value)}")


def _kind(value):
    if isinstance(value, (StateMachine, Grammar)):
        return f"a {value.kind}"
    if isinstance(value, RegexpDefinition):
        return "a regexp"
    if isinstance(value, Ctm):
        return "a ctm"
    return type(value).__name__


def _fsa(value):
    m = _machine(value, "a dfa, ndfa, regexp or rg")
    if m.kind not in (DFA, NDFA):
        raise UsageError(f"expected a dfa, ndfa, regexp or rg, got {_kind(value)}")
    return m


def _show_step(step):
    if isinstance(step, FsaStep):
        return f"({step.state} {format_word(step.unconsumed)})"
    if isinstance(step, PdaStep):
        return f"({step.state} {format_word(step.unconsumed)} {format_word(step.stack)})"
    return str(step)


def cmd_run(args, out):
    m = _machine(load_definition(args.file))
    verdict = apply_sm(m, parse_word(args.word), args.head, step_limit=args.step_limit)
    print(verdict, file=out)
    return EXIT_OK if verdict == "accept" else EXIT_NO


def cmd_trace(args, out):
    m = _machine(load_definition(args.file))
    path = show_transitions_sm(m, parse_word(args.word), args.head, step_limit=args.step_limit)
    if not path:
        print("reject", file=out)
        return EXIT_NO
    for step in path:
        print(_show_step(step), file=out)
    return EXIT_OK


def cmd_test(args, out):
    value = load_definition(args.file)
    if isinstance(value, Grammar):
        report = test_grammar(value, args.count, args.seed, args.max_len)
    else:
        report = test_sm(_machine(value), args.count, args.seed, args.max_len, step_limit=args.step_limit)
    for line in report.lines():
        print(line, file=out)
    return EXIT_OK


def cmd_equiv(args, out):
    a, b = load_definition(args.file1), load_definition(args.file2)
    if isinstance(a, Grammar) and isinstance(b, Grammar):
        report = test_equiv_grammar(a, b, args.count, args.seed, args.max_len)
    else:
        report = test_equiv_sm(_machine(a), _machine(b), args.count, args.seed, args.max_len,
                               step_limit=args.step_limit)
    for line in report.lines():
        print(line, file=out)
    return EXIT_OK if report.equivalent else EXIT_NO


def convert(value, target):
    """The value ``fsmkit convert --to target`` prints."""
    if target == "pda":
        if isinstance(value, Grammar) and value.kind == CFG:
            return grammar_to_sm(value)
        raise UsageError(f"--to pda takes a cfg, got {_kind(value)}")
    if target == "grammar":
        if isinstance(value, StateMachine) and value.kind == PDA:
            return sm_to_grammar(value)
        return sm_to_grammar(_fsa(value))
    m = _fsa(value)
    if target == "ndfa":
        return m if m.kind == NDFA else make_ndfa(m.states, m.sigma, m.start, m.finals, m.rules, name=m.name)
    if target == "dfa":
        return ndfa_to_dfa(m) if m.kind == NDFA else m
    if target == "regexp":
        return RegexpDefinition(fsa_to_regexp(m), m.sigma)
    if target == "reverse":
        return reverse_fsa(ndfa_to_dfa(m) if m.kind == NDFA else m)
    raise UsageError(f"unknown target {target!r}")


def cmd_convert(args, out):
    out.write(render_definition(convert(load_definition(args.file), args.to)))
    return EXIT_OK


def cmd_derive(args, out):
    g = load_definition(args.file)
    if not isinstance(g, Grammar):
        raise UsageError(f"derive takes a grammar, got {_kind(g)}")
    result = deriv(g, parse_word(args.word), max_expansions=args.max_expansions)
    print(result, file=out)
    return EXIT_OK if result else EXIT_NO


def cmd_empty(args, out):
    g = load_definition(args.file)
    if not isinstance(g, Grammar):
        raise UsageError(f"empty takes a grammar, got {_kind(g)}")
    if cfg_empty(g):
        print("empty", file=out)
        return EXIT_OK
    print("non-empty", file=out)
    return EXIT_NO


def cmd_ctm_run(args, out):
    value = load_definition(args.file)
    if isinstance(value, StateMachine) and value.kind == TM:
        final, _ = run_tm(value, parse_word(args.tape), args.head, step_limit=args.step_limit)
        if final is None:
            print("reject", file=out)
            return EXIT_NO
        print(final, file=out)
        return EXIT_OK
    if not isinstance(value, Ctm):
        raise UsageError(f"ctm-run takes a ctm or tm, got {_kind(value)}")
    print(apply_ctm(value, parse_word(args.tape), args.head, step_limit=args.step_limit), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    # --step-limit is accepted before or after the subcommand
    limit = argparse.ArgumentParser(add_help=False)
    limit.add_argument("--step-limit", type=int, default=None, help="tm step budget (default 10000)")
    parser = argparse.ArgumentParser(prog="fsmkit", description="Run, test and convert automata and grammars.")
    parser.add_argument("--step-limit", dest="global_step_limit", type=int, default=None,
                        help="tm step budget (default 10000)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[limit], help=help_)
        p.set_defaults(func=func)
        return p

    def sampling(p):
        p.add_argument("--count", type=int, default=DEFAULT_COUNT)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)

    p = add("run", cmd_run, "accept or reject a word")
    p.add_argument("file")
    p.add_argument("-w", "--word", default="", help='whitespace-separated symbols, "" for ε')
    p.add_argument("--head", type=int, default=0)

    p = add("trace", cmd_trace, "print an accepting computation")
    p.add_argument("file")
    p.add_argument("-w", "--word", default="")
    p.add_argument("--head", type=int, default=0)

    p = add("test", cmd_test, "run random words through a machine or grammar")
    p.add_argument("file")
    sampling(p)

    p = add("equiv", cmd_equiv, "compare two machines or grammars on random words")
    p.add_argument("file1")
    p.add_argument("file2")
    sampling(p)

    p = add("convert", cmd_convert, "transform a definition and print the result")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=CONVERT_TARGETS)

    p = add("derive", cmd_derive, "search for a derivation of a word")
    p.add_argument("file")
    p.add_argument("-w", "--word", default="")
    p.add_argument("--max-expansions", type=int, default=100_000)

    p = add("empty", cmd_empty, "decide whether a cfg or rg generates nothing")
    p.add_argument("file")

    p = add("ctm-run", cmd_ctm_run, "run a ctm (or tm) on a tape and print the final configuration")
    p.add_argument("file")
    p.add_argument("--tape", required=True)
    p.add_argument("--head", type=int, required=True)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.step_limit is None:
        args.step_limit = args.global_step_limit
    try:
        return args.func(args, out)
    except (StepLimitExceeded, Undecided) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (FsmError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
