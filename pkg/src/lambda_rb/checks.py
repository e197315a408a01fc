"""Property suites cross-checking the machine against the oracle.

Each suite draws cases from a seeded :class:`TermGen` and checks them one
at a time.  A check returns ``None`` on success, a message on failure, or
raises :class:`Discard` for an input outside the property's premise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .decorated import Atom, DApp, DLam, bullet, dec_subst, erase, rb_dec
from .gen import GenConfig, TermGen, shrink
from .machine import (
    Focus,
    Normalized,
    State,
    classify,
    focus,
    inject,
    rb_state,
    run,
    run_state,
    step,
)
from .oracle import NF, is_normal_context, leftmost_step, normalize, one_step_reducts, step_or_equal
from .syntax import show
from .terms import (
    App,
    Context,
    Lam,
    NameSupply,
    Term,
    Var,
    alpha_eq,
    compose_contexts,
    is_beta_nf,
    plug,
)

ORACLE_FUEL = 500
MACHINE_FUEL = 10_000
TERM_SIZE = 30
PROBE_SAMPLES = 20


class Discard(Exception):
    """The drawn input does not satisfy the property's premise."""


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    discarded: int = 0
    counterexample: Optional[str] = None
    message: Optional[str] = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        s = f"{self.name}: {self.passed} passed, {self.failed} failed, {self.discarded} discarded"
        if self.counterexample is not None:
            s += f"\n  counterexample: {self.counterexample}\n  reason: {self.message}"
        return s


@dataclass
class Suite:
    name: str
    draw: Callable[[TermGen], object]
    check: Callable[[object], Optional[str]]
    shrinkable: bool = False
    # number of property instances a case contributes, for suites that
    # check many states per drawn term
    weight: Callable[[object], int] = lambda case: 1


def _oracle_nf(t: Term) -> NF:
    out = normalize(t, ORACLE_FUEL)
    if not isinstance(out, NF):
        raise Discard("oracle diverged")
    return out


# A-NORM


def check_norm(t: Term) -> Optional[str]:
    nf = _oracle_nf(t)
    out = run(t, MACHINE_FUEL)
    if not isinstance(out, Normalized):
        return f"machine ran out of fuel after {len(out.steps)} steps; oracle normal form {show(nf.result)}"
    got = out.result.content
    if not alpha_eq(got, nf.result):
        return f"machine gave {show(got)}, oracle gave {show(nf.result)}"
    if out.beta_count != nf.steps:
        return f"machine used {out.beta_count} beta-steps, oracle {nf.steps}"
    return None


# P-SIM


def sim_failures(t: Term, fuel: int = MACHINE_FUEL) -> Iterator[str]:
    """Check every consecutive pair of the trace from ``t``."""
    out = run(t, fuel)
    prev = rb_state(inject(t))
    for rec in out.steps:
        cur = rb_state(rec.state_after)
        if rec.rule == "R4":
            expected = leftmost_step(prev)
            if expected is None or not alpha_eq(cur, expected):
                yield f"step {rec.index} (R4, depth {rec.depth}) is not the leftmost beta-step: {show(prev)} -> {show(cur)}"
        elif not alpha_eq(prev, cur):
            yield f"step {rec.index} ({rec.rule}) changed the read-back: {show(prev)} -> {show(cur)}"
        prev = cur


def weak_sim_failures(t: Term, fuel: int = MACHINE_FUEL) -> Iterator[str]:
    """The plain reflexive one-step form: RB(L) ->= RB(R), any redex."""
    out = run(t, fuel)
    prev = rb_state(inject(t))
    for rec in out.steps:
        cur = rb_state(rec.state_after)
        if not step_or_equal(prev, cur):
            yield f"step {rec.index} ({rec.rule}): {show(prev)} does not reduce to {show(cur)} in at most one step"
        prev = cur


def check_sim(t: Term) -> Optional[str]:
    _oracle_nf(t)
    return next(sim_failures(t), None)


def check_weak_sim(t: Term) -> Optional[str]:
    _oracle_nf(t)
    return next(weak_sim_failures(t), None)


# P-DET and P-NFATOM


def applicable_rules(s: State) -> list[str]:
    """Every rule whose left-hand side matches ``s``, tested one pattern at
    a time so overlaps would show up."""
    if isinstance(s, Atom):
        return []
    rules = []
    head, spine = s.head, s.spine
    if isinstance(head, Atom) and not spine:
        rules.append("R1")
    if isinstance(head, DLam) and not spine:
        rules.append("R2")
    if isinstance(head, Atom) and spine:
        rules.append("R3")
    if isinstance(head, DLam) and spine:
        rules.append("R4")
    if isinstance(head, Focus):
        rules.append("R5")
    return rules


def reachable_states(t: Term, limit: int = 200) -> list[State]:
    out = run(t, limit)
    return [inject(t)] + [r.state_after for r in out.steps]


def det_failure(s: State) -> Optional[str]:
    rules = applicable_rules(s)
    verdict = classify(s)
    if isinstance(s, Atom):
        if rules or verdict != "atom":
            return f"atom {show(s)} classified as {verdict}"
    elif rules != [verdict]:
        return f"state {show(s)} matches {rules}, classified {verdict}"
    supply = NameSupply.after(s)
    a = step(s, supply.copy())
    b = step(s, supply.copy())
    if a != b:
        return f"step is not a function at {show(s)}"
    return None


def nfatom_failure(s: State) -> Optional[str]:
    stepped = step(s, NameSupply.after(s))
    if (stepped is None) != isinstance(s, Atom):
        return f"step returned {stepped!r} for {show(s)}"
    return None


def _each_state(fn):
    def check(case):
        for s in case:
            msg = fn(s)
            if msg:
                return msg
        return None

    return check


def draw_states(gen: TermGen) -> list[State]:
    """Reachable states from a random term plus one synthetic state."""
    states = reachable_states(gen.term(TERM_SIZE))
    states.append(gen.state())
    return states


# P-BETARB


def draw_redex(gen: TermGen) -> tuple[DLam, object]:
    return gen.dec_lambda(12), gen.closed_dec(10)


def harvest_redexes(t: Term, limit: int = 200) -> list[tuple[DLam, object]]:
    """The (abstraction, argument) pairs R4 actually contracts on ``t``."""
    found = []
    s: State = inject(t)
    supply = NameSupply.after(t)
    for _ in range(limit):
        inner = s
        while isinstance(inner, Focus) and isinstance(inner.head, Focus):
            inner = inner.head
        if isinstance(inner, Focus) and isinstance(inner.head, DLam) and inner.spine:
            found.append((inner.head, inner.spine[0]))
        nxt = step(s, supply)
        if nxt is None:
            break
        s = nxt[0]
    return found


def check_betarb(case) -> Optional[str]:
    lam, arg = case
    before = rb_dec(DApp(lam, arg))
    after = rb_dec(dec_subst(lam.body, lam.binder, arg))
    if not step_or_equal(before, after):
        return f"{show(before)} does not beta-reduce to {show(after)}"
    if not any(alpha_eq(r, after) for r in one_step_reducts(before)):
        return f"{show(after)} is not a one-step reduct of {show(before)}"
    lm = leftmost_step(before)
    if lm is None or not alpha_eq(lm, after):
        return f"contracting the root of {show(before)} is not the leftmost step"
    return None


# P-RB-ERASE


def check_rb_erase(t: Term) -> Optional[str]:
    for s in reachable_states(t, 100):
        for d in _dec_parts(s):
            if not alpha_eq(rb_dec(d), erase(d)):
                return f"read-back and erasure differ on {show(d)}"
    return None


def _dec_parts(s):
    while isinstance(s, Focus):
        yield from s.spine
        if isinstance(s.head, Focus):
            s = s.head
        else:
            yield s.head
            return


# P-CTXCOMP and probe soundness


def draw_normal_pair(gen: TermGen) -> tuple[Context, Context]:
    return gen.normal_context(3), gen.normal_context(3)


def check_ctxcomp(case) -> Optional[str]:
    c1, c2 = case
    if not (is_normal_context(c1) and is_normal_context(c2)):
        raise Discard("generated context is not normal")
    c = compose_contexts(c1, c2)
    if not is_normal_context(c):
        return f"{show(c1)} composed with {show(c2)} gives non-normal {show(c)}"
    return None


def normal_samples(gen: TermGen, count: int = PROBE_SAMPLES) -> list[Term]:
    """Normal forms for brute-force probing: variables, small abstractions
    and random normal terms."""
    s = gen.supply
    v, w = s.fresh("v"), s.fresh("w")
    fixed = [
        Var(v),
        Lam(v, Var(v)),
        Lam(v, Lam(w, Var(v))),
        Lam(v, Lam(w, Var(w))),
        Lam(v, Var(w)),
        Var(w),
        Lam(v, App(Var(v), Var(v))),
        App(Var(w), Lam(v, Var(v))),
    ]
    return fixed + [gen.normal_form(6) for _ in range(max(0, count - len(fixed)))]


def draw_probe_case(gen: TermGen):
    c = gen.normal_context(3) if gen.rng.random() < 0.4 else gen.context(12)
    return c, normal_samples(gen)


def check_probe(case) -> Optional[str]:
    c, samples = case
    probe = is_normal_context(c)
    brute = all(is_beta_nf(plug(c, m)) for m in samples)
    if probe != brute:
        return f"probe says {probe}, sampling says {brute} for {show(c)}"
    return None


# P-RBNORMAL


def draw_rbnormal(gen: TermGen):
    return gen.normal_context(3), gen.term(20)


def check_rbnormal(case) -> Optional[str]:
    c, m = case
    if not is_normal_context(c):
        raise Discard("generated context is not normal")
    _oracle_nf(m)
    out = run_state(focus(c, bullet(m)), MACHINE_FUEL, NameSupply.after(c, m))
    if not isinstance(out, Normalized):
        return f"machine ran out of fuel from <{show(c)}, {show(m)}>"
    if not is_beta_nf(out.result.content):
        return f"machine ended in non-normal {show(out.result.content)}"
    return None


def _term_draw(size=TERM_SIZE):
    return lambda gen: gen.term(size)


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("A-NORM", _term_draw(), check_norm, shrinkable=True),
        Suite("P-SIM", _term_draw(), check_sim, shrinkable=True),
        Suite("P-SIM-WEAK", _term_draw(20), check_weak_sim, shrinkable=True),
        Suite("P-DET", draw_states, _each_state(det_failure), weight=len),
        Suite("P-NFATOM", draw_states, _each_state(nfatom_failure), weight=len),
        Suite("P-BETARB", draw_redex, check_betarb),
        Suite("P-RB-ERASE", _term_draw(20), check_rb_erase, shrinkable=True),
        Suite("P-CTXCOMP", draw_normal_pair, check_ctxcomp),
        Suite("PROBE", draw_probe_case, check_probe),
        Suite("P-RBNORMAL", draw_rbnormal, check_rbnormal),
    ]
}


def _still_fails(check, t) -> bool:
    try:
        return check(t) is not None
    except Discard:
        return False


def run_suite(name: str, trials: int, seed: int = 0, cfg: GenConfig | None = None) -> SuiteResult:
    suite = SUITES[name]
    cfg = cfg or GenConfig(seed=seed)
    gen = TermGen(cfg, NameSupply(), random.Random(seed))
    result = SuiteResult(name)
    for _ in range(trials):
        case = suite.draw(gen)
        try:
            msg = suite.check(case)
        except Discard:
            result.discarded += 1
            continue
        if msg is None:
            result.passed += suite.weight(case)
            continue
        result.failed += 1
        if result.counterexample is None:
            if suite.shrinkable:
                case = shrink(case, lambda t: _still_fails(suite.check, t))
                msg = suite.check(case)
            result.counterexample = _show_case(case)
            result.message = msg
    return result


def _show_case(case) -> str:
    if isinstance(case, tuple):
        return " ; ".join(_show_case(c) for c in case)
    if isinstance(case, list):
        return f"[{len(case)} items]"
    return show(case)
