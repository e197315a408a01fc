"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary (and directly when run with ``-s``).
"""

import random
import time

import pytest

from conftest import ACCEPTANCE
from lambda_rb import checks
from lambda_rb.checks import Discard
from lambda_rb.cli import cross_check, main
from lambda_rb.corpus import OMEGA, church, church_value, corpus
from lambda_rb.decorated import Atom, dec_free_vars
from lambda_rb.gen import GenConfig, TermGen
from lambda_rb.machine import FuelExhausted, Normalized, inject, run, state_alpha_eq
from lambda_rb.oracle import NF, is_normal_context, normalize
from lambda_rb.syntax import parse
from lambda_rb.terms import App, NameSupply, alpha_eq, free_vars, size

SEED = 2024
RANDOM_TERMS = 10_000


def record(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def failures_summary(fails):
    return "" if not fails else f"; first: {fails[0]}"


@pytest.fixture(scope="module")
def anorm_inputs():
    gen = TermGen(GenConfig(seed=SEED, max_size=checks.TERM_SIZE), NameSupply(), random.Random(SEED))
    inputs = [gen.term() for _ in range(RANDOM_TERMS)]
    assert all(size(t) <= checks.TERM_SIZE for t in inputs)
    inputs += corpus().values()
    return inputs


@pytest.fixture(scope="module")
def anorm_runs(anorm_inputs):
    """(term, oracle NF, machine outcome) for every input the oracle normalizes."""
    start = time.perf_counter()
    runs, diverged = [], 0
    for t in anorm_inputs:
        nf = normalize(t, checks.ORACLE_FUEL)
        if not isinstance(nf, NF):
            diverged += 1
            continue
        runs.append((t, nf, run(t, checks.MACHINE_FUEL)))
    return runs, diverged, time.perf_counter() - start


def test_a_norm(anorm_inputs, anorm_runs):
    runs, diverged, elapsed = anorm_runs
    fails = []
    for t, nf, out in runs:
        if not isinstance(out, Normalized):
            fails.append(f"machine out of fuel on {t}")
        elif not alpha_eq(out.result.content, nf.result):
            fails.append(f"different normal forms for {t}")
        elif out.beta_count != nf.steps:
            fails.append(f"beta counts {out.beta_count} vs {nf.steps} for {t}")
    ok = not fails and len(anorm_inputs) >= RANDOM_TERMS and elapsed < 60
    record(
        "A-NORM",
        ok,
        f"{len(runs)} normalizing inputs agree exactly, {diverged} discarded "
        f"(oracle fuel {checks.ORACLE_FUEL}), {len(fails)} disagreements, {elapsed:.1f}s"
        + failures_summary(fails),
    )
    assert ok


def test_reports_never_disagree(anorm_inputs):
    # Cross-check reports include the inputs A-NORM discards.
    bad = []
    for t in anorm_inputs:
        report = cross_check(t, run(t, checks.ORACLE_FUEL), checks.ORACLE_FUEL)
        if not report.agree:
            bad.append(report.input)
    record("REPORT-AGREE", not bad, f"{len(anorm_inputs)} reports, {len(bad)} with agree=false"
           + failures_summary(bad))
    assert not bad


def test_p_sim(anorm_runs):
    runs, _, _ = anorm_runs
    fails, pairs = [], 0
    for t, _, out in runs:
        pairs += len(out.steps)
        msg = next(checks.sim_failures(t), None)
        if msg:
            fails.append(msg)
    record("P-SIM", not fails, f"{pairs} consecutive pairs over {len(runs)} traces, {len(fails)} failing traces"
           + failures_summary(fails))
    assert not fails


def test_p_det_nfatom():
    gen = TermGen(GenConfig(seed=SEED + 1), NameSupply(), random.Random(SEED + 1))
    states, fails = 0, []
    while states < 10_000:
        for s in checks.draw_states(gen):
            states += 1
            msg = checks.det_failure(s) or checks.nfatom_failure(s)
            if msg:
                fails.append(msg)
    record("P-DET/P-NFATOM", not fails, f"{states} states, {len(fails)} failures" + failures_summary(fails))
    assert not fails


def test_p_betarb():
    gen = TermGen(GenConfig(seed=SEED + 2), NameSupply(), random.Random(SEED + 2))
    cases = [checks.draw_redex(gen) for _ in range(1_000)]
    # plus redexes the machine actually contracts
    for _ in range(200):
        cases += checks.harvest_redexes(gen.term(checks.TERM_SIZE), 50)
    fails, binding = [], 0
    for lam, arg in cases:
        binding += lam.binder in dec_free_vars(lam.body)
        msg = checks.check_betarb((lam, arg))
        if msg:
            fails.append(msg)
    record("P-BETARB", not fails and len(cases) >= 1_000,
           f"{len(cases)} redexes ({binding} with the binder used), {len(fails)} failures"
           + failures_summary(fails))
    assert not fails


def test_p_ctxcomp_and_probe():
    gen = TermGen(GenConfig(seed=SEED + 3), NameSupply(), random.Random(SEED + 3))
    pairs, discarded, fails = 0, 0, []
    while pairs < 500:
        try:
            msg = checks.check_ctxcomp(checks.draw_normal_pair(gen))
        except Discard:
            discarded += 1
            continue
        pairs += 1
        if msg:
            fails.append(msg)
    probes, normal = 0, 0
    for _ in range(1_000):
        c, samples = checks.draw_probe_case(gen)
        assert len(samples) >= checks.PROBE_SAMPLES
        probes += 1
        normal += is_normal_context(c)
        msg = checks.check_probe((c, samples))
        if msg:
            fails.append(msg)
    record("P-CTXCOMP/PROBE", not fails,
           f"{pairs} normal pairs ({discarded} discarded), {probes} probed contexts "
           f"({normal} normal), {len(fails)} failures" + failures_summary(fails))
    assert not fails


def test_p_rbnormal():
    gen = TermGen(GenConfig(seed=SEED + 4), NameSupply(), random.Random(SEED + 4))
    accepted, discarded, fails = 0, 0, []
    while accepted < 1_000:
        try:
            msg = checks.check_rbnormal(checks.draw_rbnormal(gen))
        except Discard:
            discarded += 1
            continue
        accepted += 1
        if msg:
            fails.append(msg)
    record("P-RBNORMAL", not fails, f"{accepted} pairs ({discarded} discarded), {len(fails)} failures"
           + failures_summary(fails))
    assert not fails


def test_divergence(capsys):
    omega = parse(OMEGA)
    s0 = inject(omega)
    problems = []
    for fuel in (1, 10, 100, 1_000):
        out = run(omega, fuel)
        if not isinstance(out, FuelExhausted) or len(out.steps) != fuel:
            problems.append(f"fuel {fuel}: not exhausted")
        elif not all(state_alpha_eq(r.state_after, s0) for r in out.steps):
            problems.append(f"fuel {fuel}: state changed")
    if main(["eval", OMEGA, "--fuel", "200"]) != 2:
        problems.append("eval on omega did not exit with code 2")

    const = parse(rf"(\x.y) ({OMEGA})")
    out = run(const, 10_000)
    y = next(iter(free_vars(const)))
    if not (isinstance(out, Normalized) and len(out.steps) == 2 and out.result == Atom(const.fun.body)
            and const.fun.body.name == y):
        problems.append(f"(\\x.y) omega gave {out!r}")
    if main(["eval", rf"(\x.y) ({OMEGA})"]) != 0 or capsys.readouterr().out.splitlines()[-1] != "y":
        problems.append("eval on (\\x.y) omega did not print y")
    record("DIVERGENCE", not problems,
           "omega reproduces itself under fuel 1..1000; (\\x.y) omega takes 2 steps to y"
           if not problems else "; ".join(problems))
    assert not problems


def test_church_arithmetic():
    c = corpus()
    t = App(App(c["mul"], c["c2"]), c["c3"])
    out = run(t, 10_000)
    nf = normalize(t, checks.ORACLE_FUEL)
    ok = (
        isinstance(out, Normalized)
        and alpha_eq(out.result.content, church(6))
        and isinstance(nf, NF)
        and alpha_eq(out.result.content, nf.result)
        and church_value(out.result.content) == 6
        and out.beta_count == nf.steps
    )
    record("CHURCH", ok,
           f"mul c2 c3 -> decodes to {church_value(out.result.content) if isinstance(out, Normalized) else None} "
           f"in {len(out.steps)} machine steps, {out.beta_count} beta (oracle {getattr(nf, 'steps', None)})")
    assert ok
