"""Decorated terms: lambda terms whose free variables are sealed in atoms.

An :class:`Atom` boxes an arbitrary plain term.  Decorated substitution and
free-variable computation treat atoms as opaque constants, which is what
lets the machine substitute without ever renaming.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .terms import App, Lam, Term, Var, VarName, all_names


@dataclass(frozen=True, slots=True)
class Atom:
    content: Term

    def names(self):
        return all_names(self.content)


@dataclass(frozen=True, slots=True)
class DVar:
    name: VarName

    def names(self):
        yield self.name


@dataclass(frozen=True, slots=True)
class DLam:
    binder: VarName
    body: DecTerm

    def names(self):
        yield self.binder
        yield from self.body.names()


@dataclass(frozen=True, slots=True)
class DApp:
    fun: DecTerm
    arg: DecTerm

    def names(self):
        yield from self.fun.names()
        yield from self.arg.names()


DecTerm = Union[Atom, DVar, DLam, DApp]


def bullet(m: Term) -> DecTerm:
    """Copy ``m`` with every free variable occurrence ``x`` replaced by the
    atom ``{x}``."""
    return _bullet(m, frozenset())


def _bullet(m, bound):
    match m:
        case Var(x):
            return DVar(x) if x in bound else Atom(m)
        case Lam(x, body):
            return DLam(x, _bullet(body, bound | {x}))
        case App(f, a):
            return DApp(_bullet(f, bound), _bullet(a, bound))
    raise TypeError(m)


def dec_free_vars(m: DecTerm) -> set[VarName]:
    out: set[VarName] = set()
    _dfree(m, frozenset(), out)
    return out


def _dfree(m, bound, out):
    match m:
        case Atom():
            pass
        case DVar(x):
            if x not in bound:
                out.add(x)
        case DLam(x, body):
            _dfree(body, bound | {x}, out)
        case DApp(f, a):
            _dfree(f, bound, out)
            _dfree(a, bound, out)


def dec_subst(m: DecTerm, x: VarName, n: DecTerm) -> DecTerm:
    """``m[x:=n]`` without renaming.  Atoms are left untouched.

    ``n`` must have no free decorated variables; every operand the machine
    substitutes satisfies this, so capture cannot happen.
    """
    assert not dec_free_vars(n), "decorated substituend must be closed"
    return _dsubst(m, x, n)


def _dsubst(m, x, n):
    match m:
        case Atom():
            return m
        case DVar(y):
            return n if y == x else m
        case DLam(y, body):
            if y == x:
                return m
            return DLam(y, _dsubst(body, x, n))
        case DApp(f, a):
            return DApp(_dsubst(f, x, n), _dsubst(a, x, n))
    raise TypeError(m)


def rb_dec(m: DecTerm) -> Term:
    """Read a decorated term back into a plain term.

    Follows the clause for abstractions literally: the bound variable is
    sealed into an atom before reading the body back.
    """
    match m:
        case Atom(content):
            return content
        case DApp(f, a):
            return App(rb_dec(f), rb_dec(a))
        case DLam(x, body):
            return Lam(x, rb_dec(_dsubst(body, x, Atom(Var(x)))))
        case DVar():
            # Only reachable for open decorated terms, which the machine
            # never builds; read the variable back as itself.
            return Var(m.name)
    raise TypeError(m)


def erase(m: DecTerm) -> Term:
    """Splice every atom's content in place, keep all other structure."""
    match m:
        case Atom(content):
            return content
        case DVar(x):
            return Var(x)
        case DLam(x, body):
            return Lam(x, erase(body))
        case DApp(f, a):
            return App(erase(f), erase(a))
    raise TypeError(m)


def dec_size(m: DecTerm) -> int:
    match m:
        case Atom() | DVar():
            return 1
        case DLam(_, body):
            return 1 + dec_size(body)
        case DApp(f, a):
            return 1 + dec_size(f) + dec_size(a)
    raise TypeError(m)
