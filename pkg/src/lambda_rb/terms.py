"""Plain lambda terms, one-hole contexts and the operations on them.

Variables carry a globally unique ``uid`` next to their surface ``base``
name.  Every binder produced by the parser or by a :class:`NameSupply` is
distinct, so plugging a term into a context never needs renaming.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Union

# Church numerals and normal forms nest deeply enough to trip the default.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


@dataclass(frozen=True, slots=True)
class VarName:
    base: str
    uid: int

    def __str__(self):
        return f"{self.base}#{self.uid}"


@dataclass(frozen=True, slots=True)
class Var:
    name: VarName


@dataclass(frozen=True, slots=True)
class Lam:
    binder: VarName
    body: Term


@dataclass(frozen=True, slots=True)
class App:
    fun: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Hole:
    """The single hole of a :class:`Context` skeleton."""


HOLE = Hole()

Term = Union[Var, Lam, App]


class NameSupply:
    """Issues fresh variable names; never hands out the same uid twice."""

    __slots__ = ("next_uid",)

    def __init__(self, next_uid: int = 0):
        self.next_uid = next_uid

    @classmethod
    def after(cls, *terms) -> NameSupply:
        """A supply whose uids lie above every uid occurring in ``terms``."""
        top = -1
        for t in terms:
            for name in all_names(t):
                top = max(top, name.uid)
        return cls(top + 1)

    def fresh(self, base: str) -> VarName:
        name = VarName(base, self.next_uid)
        self.next_uid += 1
        return name

    def copy(self) -> NameSupply:
        return NameSupply(self.next_uid)

    def __repr__(self):
        return f"NameSupply({self.next_uid})"


@dataclass(frozen=True, slots=True)
class Context:
    """A term skeleton containing exactly one :data:`HOLE` leaf."""

    skeleton: object

    def __post_init__(self):
        if _count_holes(self.skeleton) != 1:
            raise ValueError("a context needs exactly one hole")


def _count_holes(t) -> int:
    match t:
        case Hole():
            return 1
        case Var():
            return 0
        case Lam(_, body):
            return _count_holes(body)
        case App(f, a):
            return _count_holes(f) + _count_holes(a)
    raise TypeError(f"not a context skeleton: {t!r}")


EMPTY = Context(HOLE)


def _plug(skel, t):
    match skel:
        case Hole():
            return t
        case Var():
            return skel
        case Lam(x, body):
            return Lam(x, _plug(body, t))
        case App(f, a):
            if _has_hole(f):
                return App(_plug(f, t), a)
            return App(f, _plug(a, t))
    raise TypeError(f"not a context skeleton: {skel!r}")


def _has_hole(t) -> bool:
    match t:
        case Hole():
            return True
        case Var():
            return False
        case Lam(_, body):
            return _has_hole(body)
        case App(f, a):
            return _has_hole(f) or _has_hole(a)
    return False


def plug(c: Context, t: Term) -> Term:
    """Place ``t`` in the hole of ``c``.  Literal: binders above the hole
    may capture free variables of ``t``."""
    return _plug(c.skeleton, t)


def compose_contexts(c1: Context, c2: Context) -> Context:
    """The context ``c1[c2[ ]]``."""
    return Context(_plug(c1.skeleton, c2.skeleton))


def hole_binders(c: Context) -> list[VarName]:
    """Binders enclosing the hole, outermost first."""
    out = []
    t = c.skeleton
    while not isinstance(t, Hole):
        match t:
            case Lam(x, body):
                out.append(x)
                t = body
            case App(f, a):
                t = f if _has_hole(f) else a
    return out


def free_vars(t: Term) -> set[VarName]:
    out: set[VarName] = set()
    _free(t, frozenset(), out)
    return out


def _free(t, bound, out):
    match t:
        case Var(x):
            if x not in bound:
                out.add(x)
        case Lam(x, body):
            _free(body, bound | {x}, out)
        case App(f, a):
            _free(f, bound, out)
            _free(a, bound, out)
        case Hole():
            pass


def all_names(t) -> Iterable[VarName]:
    """Every variable name in ``t``, binders included.  Accepts terms,
    contexts and anything else exposing ``names()``."""
    stack = [t]
    while stack:
        t = stack.pop()
        match t:
            case Var(x):
                yield x
            case Lam(x, body):
                yield x
                stack.append(body)
            case App(f, a):
                stack.append(f)
                stack.append(a)
            case Context(skel):
                stack.append(skel)
            case Hole():
                pass
            case _:
                yield from t.names()


def size(t: Term) -> int:
    match t:
        case Var() | Hole():
            return 1
        case Lam(_, body):
            return 1 + size(body)
        case App(f, a):
            return 1 + size(f) + size(a)
    raise TypeError(t)


def subst(m: Term, x: VarName, n: Term, supply: NameSupply) -> Term:
    """Capture-avoiding ``m[x:=n]``.  Binders of ``m`` that would capture a
    free variable of ``n`` are renamed with names from ``supply``."""
    return _subst(m, x, n, free_vars(n), supply)


def _subst(m, x, n, fv_n, supply):
    match m:
        case Var(y):
            return n if y == x else m
        case App(f, a):
            return App(_subst(f, x, n, fv_n, supply), _subst(a, x, n, fv_n, supply))
        case Lam(y, body):
            if y == x:
                return m
            if y in fv_n:
                if x not in free_vars(body):
                    return m
                fresh = supply.fresh(y.base)
                body = _subst(body, y, Var(fresh), {fresh}, supply)
                y = fresh
            return Lam(y, _subst(body, x, n, fv_n, supply))
    raise TypeError(m)


def _canon(t, env: dict, depth: int):
    match t:
        case Var(x):
            level = env.get(x)
            return ("v", x) if level is None else ("b", depth - level)
        case Lam(x, body):
            return ("l", _canon(body, {**env, x: depth}, depth + 1))
        case App(f, a):
            return ("a", _canon(f, env, depth), _canon(a, env, depth))
        case Hole():
            return ("h",)
    raise TypeError(t)


def canonical(t, env: dict | None = None, depth: int = 0):
    """Nameless form of ``t``: bound variables become de Bruijn indices,
    free ones keep their identity.  Two terms are alpha-equivalent iff their
    canonical forms are equal."""
    return _canon(t, env or {}, depth)


def alpha_eq(a: Term, b: Term) -> bool:
    return canonical(a) == canonical(b)


def is_beta_nf(t: Term) -> bool:
    stack = [t]
    while stack:
        t = stack.pop()
        match t:
            case App(Lam(), _):
                return False
            case App(f, a):
                stack.append(f)
                stack.append(a)
            case Lam(_, body):
                stack.append(body)
    return True


def app_chain(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head
