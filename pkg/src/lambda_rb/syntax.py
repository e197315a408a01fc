"""Parsing and printing.

Plain terms::

    term  ::= lam | app [lam]
    lam   ::= ("\\" | "λ") ident "." term
    app   ::= atom+
    atom  ::= ident | "(" term ")"
    ident ::= [A-Za-z_][A-Za-z0-9_']* ["#" digits]

Machine states, as they appear in traces, extend this with ``[]`` for the
hole of a context, ``{M}`` for an atom and ``<C, head spine>`` for a focus.

Binders always get fresh uids.  An identifier written ``x#7`` that is not
bound denotes exactly the free variable ``VarName("x", 7)``; a plain free
identifier is looked up in (and added to) the ``free`` mapping.
"""

from __future__ import annotations

import re
from collections import defaultdict

from .decorated import Atom, DApp, DLam, DVar
from .machine import Focus, State, focus
from .terms import (
    HOLE,
    App,
    Context,
    Hole,
    Lam,
    NameSupply,
    Term,
    Var,
    VarName,
    all_names,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*(?:\#[0-9]+)?)
  | (?P<hole>\[\s*\])
  | (?P<punct>[\\λ.(){}<>,])
    """,
    re.VERBOSE,
)

_PUNCT_KIND = {"\\": "lambda", "λ": "lambda", ".": "dot", "(": "(", ")": ")",
               "{": "{", "}": "}", "<": "<", ">": ">", ",": ","}


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "punct":
            tokens.append((_PUNCT_KIND[m.group()], m.group(), pos))
        elif kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


def _split_ident(tok: str) -> tuple[str, int | None]:
    base, _, uid = tok.partition("#")
    return base, (int(uid) if uid else None)


class _Parser:
    def __init__(self, text, supply, free, states=False):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.states = states
        top = max((u for _, u in self._explicit_uids()), default=-1)
        if free:
            top = max([top, *(v.uid for v in free.values())])
        if supply is None:
            supply = NameSupply(top + 1)
        elif supply.next_uid <= top:
            supply.next_uid = top + 1
        self.supply = supply
        self.free = free if free is not None else {}
        self.hole_scope = None

    def _explicit_uids(self):
        for kind, tok, _ in self.tokens:
            if kind == "ident":
                base, uid = _split_ident(tok)
                if uid is not None:
                    yield base, uid

    # token helpers

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            what = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {what!r}", tok[2], self.text)
        return tok

    def error(self, message):
        raise ParseError(message, self.peek()[2], self.text)

    # names

    def resolve(self, tok, scope):
        if tok in scope:
            return scope[tok]
        base, uid = _split_ident(tok)
        if uid is not None:
            return VarName(base, uid)
        if tok not in self.free:
            self.free[tok] = self.supply.fresh(base)
        return self.free[tok]

    # plain terms (``decorated`` selects the DecTerm constructors)

    def term(self, scope, decorated=False, hole=False):
        if self.peek()[0] == "lambda":
            return self.lam(scope, decorated, hole)
        items = []
        while True:
            kind = self.peek()[0]
            if kind == "lambda":
                items.append(self.lam(scope, decorated, hole))
                break
            if kind not in ("ident", "(", "{", "<", "hole"):
                break
            items.append(self.atom(scope, decorated, hole))
        if not items:
            tok = self.peek()
            what = tok[1] or "end of input"
            self.error(f"expected a term, found {what!r}")
        head = items[0]
        app = DApp if decorated else App
        for a in items[1:]:
            if isinstance(a, Focus):
                self.error("a nested state may only appear in head position")
            head = app(head, a)
        return head

    def lam(self, scope, decorated, hole):
        self.expect("lambda")
        tok = self.peek()
        if tok[0] != "ident":
            self.error(f"expected a binder name after lambda, found {tok[1] or 'end of input'!r}")
        self.advance()
        base, _ = _split_ident(tok[1])
        x = self.supply.fresh(base)
        self.expect("dot")
        body = self.term({**scope, tok[1]: x}, decorated, hole)
        return (DLam if decorated else Lam)(x, body)

    def atom(self, scope, decorated, hole):
        kind, tok, pos = self.peek()
        if kind == "ident":
            self.advance()
            name = self.resolve(tok, scope)
            if decorated:
                return DVar(name)
            return Var(name)
        if kind == "(":
            self.advance()
            t = self.term(scope, decorated, hole)
            self.expect(")")
            return t
        if kind == "hole" and hole:
            self.advance()
            if self.hole_scope is not None:
                raise ParseError("a context has exactly one hole", pos, self.text)
            self.hole_scope = dict(scope)
            return HOLE
        if kind == "{" and self.states and decorated:
            self.advance()
            t = self.term(scope)
            self.expect("}")
            return Atom(t)
        if kind == "<" and self.states and decorated:
            return self.focus(scope)
        raise ParseError(f"unexpected {tok!r}", pos, self.text)

    # states

    def state(self, scope):
        if self.peek()[0] == "{":
            self.advance()
            t = self.term(scope)
            self.expect("}")
            return Atom(t)
        return self.focus(scope)

    def focus(self, scope):
        self.expect("<")
        saved, self.hole_scope = self.hole_scope, None
        skel = self.term(scope, hole=True)
        if self.hole_scope is None:
            self.error("context has no hole")
        inner_scope = self.hole_scope
        self.hole_scope = saved
        self.expect(",")
        body = self.term(inner_scope, decorated=True)
        self.expect(">")
        return focus(Context(skel), body)

    def done(self):
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)


def parse(text: str, supply: NameSupply | None = None, free: dict | None = None) -> Term:
    """Parse a plain lambda term."""
    p = _Parser(text, supply, free)
    t = p.term({})
    p.done()
    return t


def parse_context(text: str, supply: NameSupply | None = None, free: dict | None = None) -> Context:
    p = _Parser(text, supply, free)
    skel = p.term({}, hole=True)
    p.done()
    if p.hole_scope is None:
        raise ParseError("context has no hole", len(text), text)
    return Context(skel)


def parse_state(text: str, supply: NameSupply | None = None, free: dict | None = None) -> State:
    """Parse a printed machine state (``{M}`` or ``<C, head spine>``)."""
    p = _Parser(text, supply, free, states=True)
    s = p.state({})
    p.done()
    return s


# printing


def naming(*things) -> dict[VarName, str]:
    """Display names for every variable in ``things``.

    A variable prints as its bare base name unless that would be misread:
    an occurrence under a different binder with the same base, or two free
    variables sharing a base.  Those variables print as ``base#uid``
    everywhere, binders included.
    """
    needs_uid, _ = _analyse(things)
    out = {}
    for t in things:
        for name in all_names(t):
            out[name] = f"{name.base}#{name.uid}" if name in needs_uid else name.base
    return out


def _analyse(things):
    needs_uid: set[VarName] = set()
    free_by_base = defaultdict(set)
    for t in things:
        _scan(t, {}, frozenset(), needs_uid, free_by_base)
    for names in free_by_base.values():
        if len(names) > 1:
            needs_uid |= names
    return needs_uid, free_by_base


def _scan(t, env, bound, needs_uid, free_by_base):
    """``env`` maps a base name to its innermost binder; ``bound`` holds
    every binder on the path."""
    match t:
        case Var(x) | DVar(x):
            if env.get(x.base) == x:
                return
            if x in bound:
                needs_uid.add(x)
            else:
                if x.base in env:
                    needs_uid.add(x)
                free_by_base[x.base].add(x)
        case Lam(x, body) | DLam(x, body):
            _scan(body, {**env, x.base: x}, bound | {x}, needs_uid, free_by_base)
        case App(f, a) | DApp(f, a):
            _scan(f, env, bound, needs_uid, free_by_base)
            _scan(a, env, bound, needs_uid, free_by_base)
        case Atom(content):
            _scan(content, env, bound, needs_uid, free_by_base)
        case Context(skel):
            _scan(skel, env, bound, needs_uid, free_by_base)
        case Focus(ctx, head, spine):
            hole = []
            _scan_ctx(ctx.skeleton, env, bound, needs_uid, free_by_base, hole)
            env, bound = hole[0]
            _scan(head, env, bound, needs_uid, free_by_base)
            for n in spine:
                _scan(n, env, bound, needs_uid, free_by_base)
        case Hole():
            pass


def _scan_ctx(t, env, bound, needs_uid, free_by_base, hole):
    match t:
        case Hole():
            hole.append((env, bound))
        case Lam(x, body):
            _scan_ctx(body, {**env, x.base: x}, bound | {x}, needs_uid, free_by_base, hole)
        case App(f, a):
            _scan_ctx(f, env, bound, needs_uid, free_by_base, hole)
            _scan_ctx(a, env, bound, needs_uid, free_by_base, hole)
        case _:
            _scan(t, env, bound, needs_uid, free_by_base)


def _show(t, names, pos="top"):
    """``pos`` is one of top, fun, arg: where ``t`` sits in its parent."""
    match t:
        case Var(x) | DVar(x):
            return names[x]
        case Hole():
            return "[]"
        case Atom(content):
            return "{" + _show(content, names) + "}"
        case Focus():
            return _show_focus(t, names)
        case Lam(x, body) | DLam(x, body):
            s = f"\\{names[x]}.{_show(body, names)}"
            return s if pos == "top" else f"({s})"
        case App(f, a) | DApp(f, a):
            s = f"{_show(f, names, 'fun')} {_show(a, names, 'arg')}"
            return f"({s})" if pos == "arg" else s
        case Context(skel):
            return _show(skel, names, pos)
    raise TypeError(t)


def _show_focus(s, names):
    parts = [_show(s.head, names, "fun")]
    parts += [_show(n, names, "arg") for n in s.spine]
    return f"<{_show(s.ctx, names)}, {' '.join(parts)}>"


def show(t) -> str:
    """Print a term, context, decorated term or machine state."""
    return _show(t, naming(t))


def show_with(t, names: dict[VarName, str]) -> str:
    return _show(t, names)


def print_term(t: Term) -> str:
    return show(t)


def free_map(*things) -> dict[str, VarName]:
    """The ``free`` mapping that makes :func:`parse` of a printed term
    resolve plainly printed variables to their original identities."""
    needs_uid, free_by_base = _analyse(things)
    return {
        base: name
        for base, names in free_by_base.items()
        for name in names
        if name not in needs_uid
    }
