"""Seeded random terms, normal forms and contexts, plus a greedy shrinker."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .decorated import Atom, DLam, DecTerm, bullet
from .machine import Focus, focus
from .terms import HOLE, App, Context, Lam, NameSupply, Term, Var, VarName

BASES = "xyzwuv"
FREE_BASES = "abcdefgh"


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 30
    free_var_pool: int = 3
    lambda_bias: float = 1.0
    app_bias: float = 1.5
    var_bias: float = 1.0

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")
        if self.free_var_pool < 0:
            raise ValueError("free_var_pool must be nonnegative")
        weights = (self.lambda_bias, self.app_bias, self.var_bias)
        if min(weights) < 0 or sum(weights) <= 0:
            raise ValueError("biases must be nonnegative with a positive total")
        if self.free_var_pool == 0 and self.max_size == 1:
            raise ValueError("a closed term needs max_size >= 2")


class TermGen:
    """A random stream of well-scoped terms for one configuration.

    Each term first draws a target node count uniformly up to the size cap
    (variables count 1, abstractions 1 + body, applications 1 + both
    sides), then a random shape of exactly that size.  ``lambda_bias`` and
    ``app_bias`` weight the inner nodes; a zero ``var_bias`` rules out a bare
    variable at the root.
    """

    def __init__(self, cfg: GenConfig, supply: NameSupply | None = None, rng: random.Random | None = None):
        self.cfg = cfg
        self.supply = supply if supply is not None else NameSupply()
        self.rng = rng if rng is not None else random.Random(cfg.seed)
        self.pool = [self.supply.fresh(FREE_BASES[i % len(FREE_BASES)]) for i in range(cfg.free_var_pool)]

    def term(self, max_size: int | None = None, scope: tuple[VarName, ...] = ()) -> Term:
        cap = max_size or self.cfg.max_size
        low = 1 if self.cfg.var_bias > 0 and (scope or self.pool) else 2
        if cap < low:
            raise ValueError(f"cannot build a term within size {cap}")
        return self._term(self.rng.randint(low, cap), scope)

    def _term(self, n, scope):
        has_vars = bool(scope or self.pool)
        if n == 1:
            return Var(self.variable(scope))
        lam_ok = True
        app_ok = n >= 3 and (has_vars or n >= 5)
        if lam_ok and app_ok:
            w_lam, w_app = self.cfg.lambda_bias, self.cfg.app_bias
            if w_lam + w_app > 0:
                kind = self.rng.choices(("lam", "app"), (w_lam, w_app))[0]
            else:
                kind = self.rng.choice(("lam", "app"))
        else:
            kind = "lam" if lam_ok else "app"
        if kind == "lam":
            x = self.supply.fresh(self.rng.choice(BASES))
            return Lam(x, self._term(n - 1, scope + (x,)))
        low = 1 if has_vars else 2
        left = self.rng.randint(low, n - 1 - low)
        return App(self._term(left, scope), self._term(n - 1 - left, scope))

    def variable(self, scope) -> VarName:
        if scope and (not self.pool or self.rng.random() < 0.8):
            return self.rng.choice(scope)
        return self.rng.choice(self.pool)

    def normal_form(self, budget: int = 8, scope: tuple[VarName, ...] = ()) -> Term:
        """A random beta-normal term: abstractions over neutral terms
        ``x N1 ... Nk`` whose arguments are again normal."""
        if budget >= 2 and self.rng.random() < 0.35:
            x = self.supply.fresh(self.rng.choice(BASES))
            return Lam(x, self.normal_form(budget - 1, scope + (x,)))
        t = Var(self.variable(scope) if (scope or self.pool) else self.supply.fresh("a"))
        budget -= 1
        while budget >= 1 and self.rng.random() < 0.5:
            part = self.rng.randint(1, budget)
            t = App(t, self.normal_form(part, scope))
            budget -= part + 1
        return t

    def normal_context(self, depth: int = 3, scope: tuple[VarName, ...] = ()) -> Context:
        """A context grown from the normal shapes ``[ ]``, ``\\x.C`` and
        ``x N1 ... Nk C`` with normal arguments."""
        return Context(self._normal_skeleton(depth, scope))

    def _normal_skeleton(self, depth, scope):
        r = self.rng.random()
        if depth <= 0 or r < 0.25:
            return HOLE
        if r < 0.6:
            x = self.supply.fresh(self.rng.choice(BASES))
            return Lam(x, self._normal_skeleton(depth - 1, scope + (x,)))
        t = Var(self.variable(scope) if (scope or self.pool) else self.supply.fresh("a"))
        for _ in range(self.rng.randint(0, 2)):
            t = App(t, self.normal_form(5, scope))
        return App(t, self._normal_skeleton(depth - 1, scope))

    def context(self, max_size: int = 12) -> Context:
        """An arbitrary context: a random term with one subterm replaced by
        the hole.  Redexes and function-position holes both occur."""
        t = self.term(max_size)
        positions = list(_positions(t))
        return Context(_replace(t, self.rng.choice(positions), HOLE))

    def closed_dec(self, max_size: int | None = None) -> DecTerm:
        return bullet(self.term(max_size))

    def dec_lambda(self, max_size: int | None = None) -> DLam:
        """A decorated abstraction whose body may use its binder."""
        x = self.supply.fresh(self.rng.choice(BASES))
        body = self.term((max_size or self.cfg.max_size) - 1, (x,))
        return bullet(Lam(x, body))

    def state(self, depth: int = 2) -> Focus:
        """A random (not necessarily reachable) focus state."""
        ctx = self.normal_context(2) if self.rng.random() < 0.5 else self.context(6)
        r = self.rng.random()
        if depth > 0 and r < 0.25:
            head = self.state(depth - 1)
        elif r < 0.6:
            head = Atom(self.term(6))
        else:
            head = self.dec_lambda(6)
        spine = [self.closed_dec(6) for _ in range(self.rng.randint(0, 2))]
        if isinstance(head, Focus):
            return Focus(ctx, head, tuple(spine))
        return focus(ctx, head, spine)


def combinator_term(gen: TermGen, pieces: list[Term], leaves: int = 4) -> Term:
    """A random application tree over closed ``pieces`` and the free pool.

    The tree is printed and re-parsed so repeated pieces get distinct
    binders.
    """
    from .syntax import parse, show

    def tree(k):
        if k == 1:
            if gen.pool and gen.rng.random() < 0.2:
                return Var(gen.rng.choice(gen.pool))
            return gen.rng.choice(pieces)
        left = gen.rng.randint(1, k - 1)
        return App(tree(left), tree(k - left))

    t = tree(gen.rng.randint(2, leaves))
    return parse(show(t), gen.supply, {v.base: v for v in gen.pool})


def gen_term(cfg: GenConfig, supply: NameSupply | None = None) -> Term:
    return TermGen(cfg, supply).term()


def _positions(t, path=()):
    yield path
    match t:
        case Lam(_, body):
            yield from _positions(body, path + (0,))
        case App(f, a):
            yield from _positions(f, path + (0,))
            yield from _positions(a, path + (1,))


def _replace(t, path, new):
    if not path:
        return new
    match t:
        case Lam(x, body):
            return Lam(x, _replace(body, path[1:], new))
        case App(f, a):
            if path[0] == 0:
                return App(_replace(f, path[1:], new), a)
            return App(f, _replace(a, path[1:], new))
    raise ValueError("bad path")


def shrink_candidates(t: Term) -> Iterator[Term]:
    """Strictly smaller variants of ``t``, most aggressive first."""
    match t:
        case Var():
            return
        case Lam(x, body):
            yield body
            for b in shrink_candidates(body):
                yield Lam(x, b)
        case App(f, a):
            yield f
            yield a
            for f2 in shrink_candidates(f):
                yield App(f2, a)
            for a2 in shrink_candidates(a):
                yield App(f, a2)


def shrink(t: Term, fails: Callable[[Term], bool], budget: int = 2000) -> Term:
    """Greedily shrink ``t`` while ``fails`` keeps holding."""
    tried = 0
    improved = True
    while improved and tried < budget:
        improved = False
        for cand in shrink_candidates(t):
            tried += 1
            if fails(cand):
                t = cand
                improved = True
                break
            if tried >= budget:
                break
    return t
