"""Named combinators, Church numerals and a few probe terms."""

from __future__ import annotations

from typing import Optional

from .syntax import parse
from .terms import App, Lam, Term, Var

OMEGA = r"(\z.z z) (\z.z z)"

SOURCES = {
    "I": r"\x.x",
    "K": r"\x.\y.x",
    "S": r"\x.\y.\z.x z (y z)",
    "omega": OMEGA,
    "Y": r"\f.(\x.f (x x)) (\x.f (x x))",
    "plus": r"\m.\n.\f.\x.m f (n f x)",
    "mul": r"\m.\n.\f.m (n f)",
    "succ": r"\n.\f.\x.f (n f x)",
}


def church_source(n: int) -> str:
    body = "x"
    for _ in range(n):
        body = f"f ({body})" if body != "x" else "f x"
    return rf"\f.\x.{body}"


for _n in range(6):
    SOURCES[f"c{_n}"] = church_source(_n)

SOURCES.update({
    "const_omega": rf"(\x.y) ({OMEGA})",
    "nested_redex": r"\x. x ((\y.y) x)",
    "SKK": rf"({SOURCES['S']}) ({SOURCES['K']}) ({SOURCES['K']})",
    "plus_c2_c3": rf"({SOURCES['plus']}) ({SOURCES['c2']}) ({SOURCES['c3']})",
    "mul_c2_c3": rf"({SOURCES['mul']}) ({SOURCES['c2']}) ({SOURCES['c3']})",
    "succ_c4": rf"({SOURCES['succ']}) ({SOURCES['c4']})",
    "mul_c3_mul_c2_c2": rf"({SOURCES['mul']}) ({SOURCES['c3']}) (({SOURCES['mul']}) ({SOURCES['c2']}) ({SOURCES['c2']}))",
    "K_I_omega": rf"({SOURCES['K']}) ({SOURCES['I']}) ({OMEGA})",
    "self_apply_open": r"(\x.x x) (\y.a y)",
    "capture_probe": r"(\x.\y.x y) y",
})


def corpus() -> dict[str, Term]:
    return {name: parse(src) for name, src in SOURCES.items()}


def church(n: int) -> Term:
    return parse(church_source(n))


def church_value(t: Term) -> Optional[int]:
    """Decode ``\\f.\\x.f (f ... (f x))`` to its count of ``f``
    applications, or ``None`` if ``t`` is not a Church numeral."""
    if not (isinstance(t, Lam) and isinstance(t.body, Lam)):
        return None
    f, x = t.binder, t.body.binder
    if f == x:
        return None
    n = 0
    body = t.body.body
    while isinstance(body, App):
        if body.fun != Var(f):
            return None
        body = body.arg
        n += 1
    return n if body == Var(x) else None
