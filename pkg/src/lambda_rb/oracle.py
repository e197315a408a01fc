"""Reference semantics by ordinary beta-reduction on plain terms.

Nothing here touches the machine; it is the yardstick the machine is
checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

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
    subst,
)

__all__ = [
    "NF",
    "Diverged",
    "OracleOutcome",
    "leftmost_step",
    "normalize",
    "one_step_reducts",
    "step_or_equal",
    "is_normal_context",
    "compose_contexts",
]


@dataclass(frozen=True)
class NF:
    result: Term
    steps: int


@dataclass(frozen=True)
class Diverged:
    fuel: int
    last: Term


OracleOutcome = Union[NF, Diverged]


def _contract(redex: App, supply: NameSupply) -> Term:
    lam = redex.fun
    return subst(lam.body, lam.binder, redex.arg, supply)


def leftmost_step(t: Term, supply: NameSupply | None = None) -> Optional[Term]:
    """Contract the leftmost-outermost redex of ``t``; ``None`` if ``t`` is
    in normal form."""
    if supply is None:
        supply = NameSupply.after(t)
    return _leftmost(t, supply)


def _leftmost(t, supply):
    match t:
        case App(Lam(), _):
            return _contract(t, supply)
        case App(f, a):
            f2 = _leftmost(f, supply)
            if f2 is not None:
                return App(f2, a)
            a2 = _leftmost(a, supply)
            if a2 is not None:
                return App(f, a2)
        case Lam(x, body):
            b2 = _leftmost(body, supply)
            if b2 is not None:
                return Lam(x, b2)
    return None


def normalize(t: Term, fuel: int, supply: NameSupply | None = None) -> OracleOutcome:
    """Leftmost reduction for at most ``fuel`` beta-steps."""
    if fuel < 0:
        raise ValueError("fuel must be nonnegative")
    if supply is None:
        supply = NameSupply.after(t)
    for steps in range(fuel + 1):
        nxt = leftmost_step(t, supply)
        if nxt is None:
            return NF(t, steps)
        if steps == fuel:
            break
        t = nxt
    return Diverged(fuel, t)


def one_step_reducts(t: Term, supply: NameSupply | None = None) -> Iterator[Term]:
    """Every term reachable from ``t`` by contracting one redex, in
    leftmost-outermost order of the contracted redex."""
    if supply is None:
        supply = NameSupply.after(t)
    match t:
        case App(f, a):
            if isinstance(f, Lam):
                yield _contract(t, supply)
            for f2 in one_step_reducts(f, supply):
                yield App(f2, a)
            for a2 in one_step_reducts(a, supply):
                yield App(f, a2)
        case Lam(x, body):
            for b2 in one_step_reducts(body, supply):
                yield Lam(x, b2)


def step_or_equal(a: Term, b: Term) -> bool:
    """``a`` equals ``b`` or reduces to it in one (unrestricted) beta-step."""
    if alpha_eq(a, b):
        return True
    return any(alpha_eq(r, b) for r in one_step_reducts(a))


def is_normal_context(c: Context, supply: NameSupply | None = None) -> bool:
    """Whether plugging any normal form into ``c`` gives a normal form.

    Decided by plugging a fresh identity: a normal form can only create a
    redex when the hole is in function position, and a redex elsewhere in
    ``c`` survives any plugging.
    """
    if supply is None:
        supply = NameSupply.after(c)
    z = supply.fresh("z")
    return is_beta_nf(plug(c, Lam(z, Var(z))))
