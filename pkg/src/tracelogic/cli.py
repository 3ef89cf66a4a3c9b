"""Command-line surface for the toolkit.

Exit codes: 0 success/accepted, 1 negative verdict (rejected, inequivalent,
violations, infeasible), 2 parse or validation errors, 3 exceeded budgets.
"""

from __future__ import annotations

import argparse
import sys

from . import formula as fm
from . import oracle
from .afa import translate_afa
from .dot import to_dot
from .errors import (
    AlphabetMismatchError,
    BudgetError,
    ParseError,
    SizeLimitError,
    UnsupportedOperatorError,
    UntimedTraceError,
)
from .fa import build_dfa, dealternate, determinize, dfa_accepts, enumerate_accepted, equivalent, minimize, complement
from .metric import UntimedViolationError, Witness, check_program, enumerate_models, extract_constraints, feasible
from .parser import parse_formula, parse_program, parse_trace
from .trace import TimedTrace, Trace, format_trace
from .twafa import translate_2afa

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}", EXIT_INVALID) from exc


def _formula_arg(parser: argparse.ArgumentParser, flag: str = "-f", dest: str = "formula"):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument(flag, f"--{dest}", dest=dest, metavar="FORMULA", help="inline formula text")
    group.add_argument(f"--{dest}-file", dest=f"{dest}_file", metavar="PATH", help="file containing the formula")


def _trace_arg(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("-t", "--trace", dest="trace", metavar="TRACE", help="inline trace text")
    group.add_argument("--trace-file", dest="trace_file", metavar="PATH", help="file containing the trace")


def _program_arg(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("-p", "--program", dest="program", metavar="PATH", help="metric program file")
    group.add_argument("--program-text", dest="program_text", metavar="RULES", help="inline program text")


def _get_formula(args, dest: str = "formula") -> fm.Formula:
    text = getattr(args, dest)
    if text is None:
        text = _read(getattr(args, f"{dest}_file"))
    return parse_formula(text)


def _get_trace(args):
    text = args.trace if args.trace is not None else _read(args.trace_file)
    return parse_trace(text)


def _get_program(args):
    text = args.program_text if args.program_text is not None else _read(args.program)
    return parse_program(text)


def _parse_ap(text: str) -> set[str]:
    return {name.strip() for name in text.split(",") if name.strip()}


def _core(f: fm.Formula) -> fm.Formula:
    return fm.to_dynamic_core(fm.nnf(f))


def _restricted(t, ap) -> Trace:
    alphabet = set(ap)
    return Trace(tuple(frozenset(letter) & alphabet for letter in t.letters))


def _cmd_parse(args) -> int:
    print(fm.format_formula(_get_formula(args)))
    return EXIT_OK


def _cmd_compile(args) -> int:
    core = _core(_get_formula(args))
    target = args.to
    if target == "2afa":
        automaton = translate_2afa(core)
        transitions = sum(1 for pbf in automaton.transitions.values() if not _is_false(pbf))
        counts = (len(automaton), transitions)
    elif target == "afa":
        automaton = translate_afa(core)
        from .trace import letters_over

        letters = letters_over(automaton.ap)
        transitions = sum(
            1
            for q in range(len(automaton))
            for letter in letters
            if not _is_false(automaton.delta(q, letter))
        )
        counts = (len(automaton), transitions)
    else:
        nfa = dealternate(translate_afa(core))
        if target == "nfa":
            automaton = nfa
            counts = (len(nfa.states), sum(len(ts) for ts in nfa.transitions.values()))
        else:
            dfa = determinize(nfa)
            if target == "min-dfa":
                dfa = minimize(dfa)
            automaton = dfa
            counts = (dfa.n_states, dfa.n_states * len(dfa.letters))
    print(f"states {counts[0]} transitions {counts[1]}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(to_dot(automaton))
    return EXIT_OK


def _is_false(pbf) -> bool:
    from .afa import FalseLeaf

    return isinstance(pbf, FalseLeaf)


def _cmd_accepts(args) -> int:
    f = _get_formula(args)
    t = _get_trace(args)
    backend = args.backend
    if backend == "oracle":
        verdict = oracle.holds(f, t)
    else:
        core = _core(f)
        ap = sorted(fm.atoms(core))
        plain = _restricted(t, ap)
        if backend == "2afa":
            verdict = translate_2afa(core).accepts(plain)
        elif backend == "afa":
            verdict = translate_afa(core).accepts(plain)
        elif backend == "nfa":
            from .fa import nfa_accepts

            verdict = nfa_accepts(dealternate(translate_afa(core)), plain)
        else:
            verdict = dfa_accepts(build_dfa(f), plain)
    print("ACCEPTED" if verdict else "REJECTED")
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_filter(args) -> int:
    f = _get_formula(args)
    dfa = build_dfa(f)
    if args.negate:
        dfa = complement(dfa)
    kept = 0
    total = 0
    for raw in _read(args.traces).splitlines():
        line = raw.strip()
        if not line:
            continue
        total += 1
        t = parse_trace(line)
        if dfa_accepts(dfa, _restricted(t, dfa.ap)):
            kept += 1
            print(line)
    print(f"kept {kept} of {total}", file=sys.stderr)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    f = _get_formula(args)
    ap = _parse_ap(args.ap) | fm.atoms(f)
    dfa = build_dfa(f, sorted(ap))
    for t in enumerate_accepted(dfa, args.max_len):
        print(format_trace(t))
    return EXIT_OK


def _cmd_equiv(args) -> int:
    f = _get_formula(args, "formula")
    g = _get_formula(args, "other")
    same, counterexample = equivalent(f, g)
    if same:
        print("EQUIVALENT")
        return EXIT_OK
    print(format_trace(counterexample))
    return EXIT_NEGATIVE


def _cmd_metric_check(args) -> int:
    program = _get_program(args)
    t = _get_trace(args)
    if not isinstance(t, TimedTrace):
        raise _CliError("metric check needs a timed trace (steps suffixed with @t)", EXIT_INVALID)
    violations = check_program(program, t)
    for rule, step in violations:
        print(f"rule {rule} at step {step}")
    return EXIT_NEGATIVE if violations else EXIT_OK


def _cmd_metric_times(args) -> int:
    program = _get_program(args)
    t = _get_trace(args)
    if isinstance(t, TimedTrace):
        raise _CliError("metric times derives timestamps; give an untimed trace", EXIT_INVALID)
    try:
        system = extract_constraints(program, t, strict=args.strict)
    except UntimedViolationError as exc:
        print(f"UNTIMED VIOLATION: rule {exc.rule_index} at step {exc.position}")
        return EXIT_NEGATIVE
    solution = feasible(system)
    if isinstance(solution, Witness):
        print(format_trace(TimedTrace(t.letters, solution.times)))
        return EXIT_OK
    print("INFEASIBLE")
    print("cycle: " + ", ".join(str(i) for i in solution.cycle))
    return EXIT_NEGATIVE


def _cmd_metric_enumerate(args) -> int:
    program = _get_program(args)
    ap = _parse_ap(args.ap) | program.universe()
    for t in enumerate_models(program, sorted(ap), args.horizon):
        print(format_trace(t))
    return EXIT_OK


def _build_argparser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(prog="tracelogic", description=__doc__)
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="echo the canonical form of a formula")
    _formula_arg(p)
    p.set_defaults(handler=_cmd_parse)

    p = sub.add_parser("compile", help="compile a formula into an automaton")
    _formula_arg(p)
    p.add_argument("--to", choices=("afa", "nfa", "dfa", "min-dfa", "2afa"), required=True)
    p.add_argument("--dot", metavar="PATH", help="write a DOT rendering")
    p.set_defaults(handler=_cmd_compile)

    p = sub.add_parser("accepts", help="check one trace against a formula")
    _formula_arg(p)
    _trace_arg(p)
    p.add_argument("--backend", choices=("oracle", "afa", "nfa", "dfa", "2afa"), default="oracle")
    p.set_defaults(handler=_cmd_accepts)

    p = sub.add_parser("filter", help="keep traces satisfying (or violating) a formula")
    _formula_arg(p)
    p.add_argument("--traces", metavar="PATH", required=True, help="file with one trace per line")
    p.add_argument("--negate", action="store_true", help="keep the rejected traces instead")
    p.set_defaults(handler=_cmd_filter)

    p = sub.add_parser("enumerate", help="list all accepted traces up to a length")
    _formula_arg(p)
    p.add_argument("--ap", required=True, help="comma-separated alphabet")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("equiv", help="decide language equivalence of two formulas")
    _formula_arg(p, "-f", "formula")
    _formula_arg(p, "-g", "other")
    p.set_defaults(handler=_cmd_equiv)

    metric = sub.add_parser("metric", help="metric program commands")
    msub = metric.add_subparsers(dest="metric_command", required=True)

    p = msub.add_parser("check", help="check a timed trace against a program")
    _program_arg(p)
    _trace_arg(p)
    p.set_defaults(handler=_cmd_metric_check)

    p = msub.add_parser("times", help="derive minimal timestamps for an untimed trace")
    _program_arg(p)
    _trace_arg(p)
    p.add_argument("--strict", action="store_true", help="require strictly increasing timestamps")
    p.set_defaults(handler=_cmd_metric_times)

    p = msub.add_parser("enumerate", help="list timed models up to a horizon")
    _program_arg(p)
    p.add_argument("--ap", required=True, help="comma-separated alphabet")
    p.add_argument("--horizon", type=int, required=True)
    p.set_defaults(handler=_cmd_metric_enumerate)

    return root


def run(argv=None) -> int:
    """Execute one invocation; returns the process exit code."""
    parser = _build_argparser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        return args.handler(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UnsupportedOperatorError, AlphabetMismatchError, UntimedTraceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (BudgetError, SizeLimitError) as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
