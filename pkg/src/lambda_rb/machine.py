"""The read-back reduction machine.

A state is either an :class:`Atom` (finished) or a :class:`Focus`
``<C[ ], head N1 ... Nn>``: a one-hole context, a head that is a decorated
term or a nested focus, and a spine of decorated arguments.  Application
chains in the head are always unwound into the spine, so every state
matches exactly one of the five rules below.

    R1  <C, {M}>                 ->  {C[M]}
    R2  <C, \\x.M>                ->  <C[\\x'.[]], M[x:={x'}]>       (x' fresh)
    R3  <C, {M} N0 Ns>           ->  <C, <M [], N0> Ns>
    R4  <C, (\\x.M) N0 Ns>        ->  <C, M[x:=N0] Ns>
    R5  <C, S Ns>                ->  <C, S' Ns>     when S -> S'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .decorated import Atom, DApp, DecTerm, DLam, DVar, bullet, dec_subst, rb_dec
from .terms import (
    EMPTY,
    HOLE,
    App,
    Context,
    Hole,
    Lam,
    NameSupply,
    Term,
    Var,
    all_names,
    app_chain,
    canonical,
    compose_contexts,
    hole_binders,
    plug,
)

RULES = ("R1", "R2", "R3", "R4", "R5")


@dataclass(frozen=True, slots=True)
class Focus:
    ctx: Context
    head: Union[DecTerm, Focus]
    spine: tuple[DecTerm, ...] = ()

    def names(self):
        yield from all_names(self.ctx)
        yield from self.head.names()
        for n in self.spine:
            yield from n.names()


State = Union[Atom, Focus]


def focus(ctx: Context, head, spine=()) -> Focus:
    """Build a focus, unwinding application chains of the head into the
    spine and collapsing a nested atom into a decorated atom head."""
    spine = tuple(spine)
    while isinstance(head, DApp):
        spine = (head.arg,) + spine
        head = head.fun
    return Focus(ctx, head, spine)


@dataclass(frozen=True, slots=True)
class StepRecord:
    index: int
    rule: str
    depth: int
    state_after: State


@dataclass(frozen=True)
class Normalized:
    result: Atom
    steps: list[StepRecord] = field(repr=False)
    beta_count: int

    @property
    def last(self) -> State:
        return self.result


@dataclass(frozen=True)
class FuelExhausted:
    last: State
    steps: list[StepRecord] = field(repr=False)
    beta_count: int


RunOutcome = Union[Normalized, FuelExhausted]


def inject(m: Term) -> Focus:
    """The initial state ``<[ ], m*>``."""
    return focus(EMPTY, bullet(m))


def classify(s: State) -> str:
    match s:
        case Atom():
            return "atom"
        case Focus(_, Atom(), ()):
            return "R1"
        case Focus(_, DLam(), ()):
            return "R2"
        case Focus(_, Atom(), _):
            return "R3"
        case Focus(_, DLam(), _):
            return "R4"
        case Focus(_, Focus(), _):
            return "R5"
    raise AssertionError(f"state matches no rule: {s!r}")


def step(s: State, supply: NameSupply) -> Optional[tuple[State, str, int]]:
    """One step of the relation.

    Returns ``(next_state, base_rule, depth)`` or ``None`` for an atom.
    For a congruence step the base rule is the one that fired inside and
    ``depth`` counts the enclosing congruences.
    """
    match s:
        case Atom():
            return None
        case Focus(ctx, Atom(m), ()):
            assert _hole_path_unique(ctx), "context shadows a binder above the hole"
            return Atom(plug(ctx, m)), "R1", 0
        case Focus(ctx, DLam(x, body), ()):
            fresh = supply.fresh(x.base)
            inner = compose_contexts(ctx, Context(Lam(fresh, HOLE)))
            return focus(inner, dec_subst(body, x, Atom(Var(fresh)))), "R2", 0
        case Focus(ctx, Atom(m), (n0, *rest)):
            nested = focus(Context(App(m, HOLE)), n0)
            return Focus(ctx, nested, tuple(rest)), "R3", 0
        case Focus(ctx, DLam(x, body), (n0, *rest)):
            return focus(ctx, dec_subst(body, x, n0), rest), "R4", 0
        case Focus(ctx, Focus() as inner, spine):
            inner_next, rule, depth = step(inner, supply)
            return focus(ctx, inner_next, spine), rule, depth + 1
    raise AssertionError(f"state matches no rule: {s!r}")


def _hole_path_unique(ctx: Context) -> bool:
    binders = hole_binders(ctx)
    return len(set(binders)) == len(binders)


def run(m: Term, fuel: int, supply: NameSupply | None = None, start: State | None = None) -> RunOutcome:
    """Step from ``inject(m)`` (or from ``start``) at most ``fuel`` times."""
    if fuel < 0:
        raise ValueError("fuel must be nonnegative")
    s = inject(m) if start is None else start
    if supply is None:
        supply = NameSupply.after(m if start is None else s)
    records: list[StepRecord] = []
    beta = 0
    for i in range(1, fuel + 1):
        if isinstance(s, Atom):
            break
        s, rule, depth = step(s, supply)
        if rule == "R4":
            beta += 1
        records.append(StepRecord(i, rule, depth, s))
    if isinstance(s, Atom):
        return Normalized(s, records, beta)
    return FuelExhausted(s, records, beta)


def run_state(s: State, fuel: int, supply: NameSupply | None = None) -> RunOutcome:
    return run(None, fuel, supply, start=s)


def rb_state(s: State) -> Term:
    """Read a machine state back into a plain term."""
    match s:
        case Atom(content):
            return content
        case Focus(ctx, head, spine):
            h = rb_state(head) if isinstance(head, Focus) else rb_dec(head)
            return plug(ctx, app_chain(h, *(rb_dec(n) for n in spine)))
    raise TypeError(s)


# Alpha-equivalence of states.  Context binders on the hole path scope over
# the focused head and spine, so contexts are walked down to the hole while
# extending the binder environment.


def _canon_ctx(skel, env, depth):
    match skel:
        case Hole():
            return ("h",), env, depth
        case Var():
            return canonical(skel, env, depth), None, None
        case Lam(x, body):
            form, henv, hdepth = _canon_ctx(body, {**env, x: depth}, depth + 1)
            return ("l", form), henv, hdepth
        case App(f, a):
            ff, fe, fd = _canon_ctx(f, env, depth)
            af, ae, ad = _canon_ctx(a, env, depth)
            if fe is None:
                fe, fd = ae, ad
            return ("a", ff, af), fe, fd
    raise TypeError(skel)


def _canon_dec(m, env, depth):
    match m:
        case Atom(content):
            return ("atom", canonical(content, env, depth))
        case DVar(x):
            level = env.get(x)
            return ("v", x) if level is None else ("b", depth - level)
        case DLam(x, body):
            return ("l", _canon_dec(body, {**env, x: depth}, depth + 1))
        case DApp(f, a):
            return ("a", _canon_dec(f, env, depth), _canon_dec(a, env, depth))
    raise TypeError(m)


def canonical_state(s: State, env=None, depth=0):
    env = env or {}
    match s:
        case Atom(content):
            return ("atom", canonical(content, env, depth))
        case Focus(ctx, head, spine):
            cform, henv, hdepth = _canon_ctx(ctx.skeleton, env, depth)
            if isinstance(head, Focus):
                hform = ("state", canonical_state(head, henv, hdepth))
            else:
                hform = _canon_dec(head, henv, hdepth)
            return ("focus", cform, hform, tuple(_canon_dec(n, henv, hdepth) for n in spine))
    raise TypeError(s)


def state_alpha_eq(a: State, b: State) -> bool:
    return canonical_state(a) == canonical_state(b)


def state_depth(s: State) -> int:
    d = 0
    while isinstance(s, Focus) and isinstance(s.head, Focus):
        s = s.head
        d += 1
    return d
