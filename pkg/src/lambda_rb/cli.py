"""Command line: ``lambda-rb eval|check|gen|corpus``.

Exit codes: 0 ok, 1 parse error, 2 fuel exhausted, 3 machine and oracle
disagree, 4 property failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import checks
from .corpus import corpus
from .gen import GenConfig, TermGen
from .machine import Normalized, inject, rb_state, run
from .oracle import NF, OracleOutcome, normalize
from .syntax import ParseError, parse, show
from .terms import NameSupply, Term, alpha_eq

DEFAULT_FUEL = 10_000

EXIT_OK, EXIT_PARSE, EXIT_FUEL, EXIT_DISAGREE, EXIT_PROPERTY = 0, 1, 2, 3, 4


def default_fuel() -> int:
    env = os.environ.get("LAMBDA_RB_FUEL")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"LAMBDA_RB_FUEL must be an integer, got {env!r}")
    return DEFAULT_FUEL


@dataclass
class Report:
    input: str
    machine: dict
    oracle: dict
    agree: bool
    beta_counts_equal: bool

    def as_dict(self) -> dict:
        return {
            "input": self.input,
            "machine": self.machine,
            "oracle": self.oracle,
            "agree": self.agree,
            "beta_counts_equal": self.beta_counts_equal,
        }


def make_report(t: Term, outcome, oracle: OracleOutcome) -> Report:
    """Compare a machine run with an oracle run.

    When the machine ran out of fuel after ``k`` beta-steps, the oracle
    should have been given ``k`` steps as well (see :func:`cross_check`);
    it then agrees if it also ran out, or if it needed exactly ``k`` steps
    and the machine was still reading the result back.
    """
    if isinstance(outcome, Normalized):
        machine = {"status": "normalized", "result": show(outcome.result.content),
                   "steps": len(outcome.steps), "beta_count": outcome.beta_count}
    else:
        machine = {"status": "fuel_exhausted", "steps": len(outcome.steps),
                   "beta_count": outcome.beta_count}
    if isinstance(oracle, NF):
        orc = {"status": "normalized", "result": show(oracle.result), "steps": oracle.steps}
        counts = outcome.beta_count == oracle.steps
        if isinstance(outcome, Normalized):
            agree = alpha_eq(outcome.result.content, oracle.result)
        else:
            agree = counts
    else:
        orc = {"status": "diverged", "fuel": oracle.fuel}
        agree = not isinstance(outcome, Normalized)
        counts = False
    return Report(show(t), machine, orc, agree, counts)


def cross_check(t: Term, outcome, fuel: int) -> Report:
    budget = fuel if isinstance(outcome, Normalized) else outcome.beta_count
    return make_report(t, outcome, normalize(t, budget, NameSupply.after(t)))


def trace_lines(t: Term, outcome, with_rb: bool = True):
    s0 = inject(t)
    first = {"i": 0, "rule": "inject", "depth": 0, "state": show(s0)}
    if with_rb:
        first["rb"] = show(rb_state(s0))
    yield first
    for rec in outcome.steps:
        line = {"i": rec.index, "rule": rec.rule, "depth": rec.depth, "state": show(rec.state_after)}
        if with_rb:
            line["rb"] = show(rb_state(rec.state_after))
        yield line


def cmd_eval(args, out=None) -> int:
    try:
        t = parse(args.term)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    fuel = args.fuel if args.fuel is not None else default_fuel()
    outcome = run(t, fuel)
    if args.trace:
        for line in trace_lines(t, outcome):
            print(json.dumps(line, ensure_ascii=False), file=out)
    status = EXIT_OK if isinstance(outcome, Normalized) else EXIT_FUEL
    if args.json:
        obj = {"status": "normalized" if status == EXIT_OK else "fuel_exhausted",
               "steps": len(outcome.steps), "beta_count": outcome.beta_count}
        if status == EXIT_OK:
            obj["result"] = show(outcome.result.content)
        print(json.dumps(obj, ensure_ascii=False), file=out)
    else:
        print(show(outcome.result.content) if status == EXIT_OK else "FUEL EXHAUSTED", file=out)
    if args.oracle:
        report = cross_check(t, outcome, fuel)
        if args.json:
            print(json.dumps(report.as_dict(), ensure_ascii=False), file=out)
        else:
            print(f"oracle: {report.oracle.get('result', 'DIVERGED')}", file=out)
            print(f"agree={str(report.agree).lower()} beta_counts_equal={str(report.beta_counts_equal).lower()}", file=out)
        if not report.agree:
            return EXIT_DISAGREE
    return status


def cmd_check(args, out=None) -> int:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        result = checks.run_suite(name, args.trials, args.seed)
        print(result.summary(), file=out)
        ok &= result.ok
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_gen(args, out=None) -> int:
    cfg = GenConfig(seed=args.seed, max_size=args.size)
    gen = TermGen(cfg)
    for _ in range(args.count):
        text = show(gen.term())
        print(json.dumps({"term": text}) if args.json else text, file=out)
    return EXIT_OK


def cmd_corpus(args, out=None) -> int:
    for name, t in corpus().items():
        if args.json:
            print(json.dumps({"name": name, "term": show(t)}, ensure_ascii=False), file=out)
        else:
            print(f"{name}\t{show(t)}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lambda-rb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="normalize a term with the read-back machine")
    e.add_argument("term")
    e.add_argument("--fuel", type=int, help=f"step budget (default $LAMBDA_RB_FUEL or {DEFAULT_FUEL})")
    e.add_argument("--trace", action="store_true", help="emit one JSON line per step")
    e.add_argument("--json", action="store_true", help="JSON result instead of plain text")
    e.add_argument("--oracle", action="store_true", help="cross-check against leftmost beta-reduction")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="run a property suite")
    c.add_argument("suite", choices=[*checks.SUITES, "all"])
    c.add_argument("--trials", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", help="print random terms")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--size", type=int, default=30)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gen)

    k = sub.add_parser("corpus", help="list the built-in terms")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
