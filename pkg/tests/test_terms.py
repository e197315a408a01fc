import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import terms
from lambda_rb.oracle import leftmost_step
from lambda_rb.syntax import ParseError, free_map, parse, show
from lambda_rb.terms import (
    App,
    Lam,
    NameSupply,
    Var,
    VarName,
    alpha_eq,
    free_vars,
    is_beta_nf,
    subst,
)

s = NameSupply(0)
x, y, f, a, b = (s.fresh(n) for n in "xyfab")


def test_parse_identity():
    t = parse(r"\x.x")
    assert isinstance(t, Lam) and t.body == Var(t.binder)


def test_parse_application():
    t = parse(r"(\x.x) y")
    assert isinstance(t, App)
    assert isinstance(t.fun, Lam) and t.fun.body == Var(t.fun.binder)
    assert isinstance(t.arg, Var) and t.arg.name.base == "y"


def test_parse_shadowing_inner_binds():
    t = parse(r"\x.\x.x")
    outer, inner = t.binder, t.body.binder
    assert outer != inner
    assert t.body.body == Var(inner)


def test_parse_unicode_lambda_and_left_assoc():
    t = parse("λf.f a b")
    assert alpha_eq(t, parse(r"\g.(g a) b", free={"a": t.body.fun.arg.name, "b": t.body.arg.name}))


def test_free_names_share_uid():
    t = parse("y y z")
    assert t.fun.fun == t.fun.arg
    assert t.fun.arg != t.arg


def test_binders_are_unique():
    t = parse(r"(\x.x) (\x.x) (\y.\x.y)")
    binders = []

    def walk(u):
        if isinstance(u, Lam):
            binders.append(u.binder)
            walk(u.body)
        elif isinstance(u, App):
            walk(u.fun)
            walk(u.arg)

    walk(t)
    assert len(binders) == len(set(binders)) == 4
    assert not set(binders) & free_vars(t)


@pytest.mark.parametrize(
    "text, pos",
    [
        (r"\x", 2),
        (r"(\x.x", 5),
        (r"\.x", 1),
        ("x )", 2),
        ("", 0),
        ("x $", 2),
        (r"\λ.x", 1),
        ("x . y", 2),
    ],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.pos == pos


def test_print_examples():
    assert show(Lam(x, Var(x))) == r"\x.x"
    assert show(App(App(Var(f), Var(a)), Var(b))) == "f a b"
    assert show(Lam(x, App(Var(x), Var(x)))) == r"\x.x x"


def test_print_parenthesizes():
    assert show(App(Var(f), App(Var(a), Var(b)))) == "f (a b)"
    assert show(App(Lam(x, Var(x)), Var(y))) == r"(\x.x) y"
    assert show(App(Var(f), Lam(x, Var(x)))) == r"f (\x.x)"


def test_print_disambiguates_only_on_clash():
    x2 = VarName("x", 99)
    assert show(Lam(x, Lam(x2, Var(x)))) == rf"\x#{x.uid}.\x.x#{x.uid}"
    assert show(App(Lam(x, Var(x)), Lam(x2, Var(x2)))) == r"(\x.x) (\x.x)"
    assert show(App(Var(x), Var(x2))) == f"x#{x.uid} x#99"


@given(terms)
def test_print_parse_round_trip(t):
    back = parse(show(t), free=free_map(t))
    assert alpha_eq(back, t)


def test_free_vars_examples():
    assert free_vars(Var(x)) == {x}
    assert free_vars(Lam(x, Var(x))) == set()
    assert free_vars(Lam(x, App(Var(x), Var(y)))) == {y}


def test_subst_examples():
    sup = NameSupply(1000)
    assert subst(Var(x), x, Var(y), sup) == Var(y)
    assert subst(Lam(x, Var(x)), x, Var(y), sup) == Lam(x, Var(x))
    out = subst(Lam(y, Var(x)), x, Var(y), sup)
    assert isinstance(out, Lam) and out.binder != y and out.body == Var(y)


def naive_subst_oracle(m, v, n, supply):
    """Rename every binder of ``m`` apart first, then replace blindly."""

    def rename(t, env):
        match t:
            case Var(z):
                return Var(env.get(z, z))
            case Lam(z, body):
                z2 = supply.fresh(z.base)
                return Lam(z2, rename(body, {**env, z: z2}))
            case App(p, q):
                return App(rename(p, env), rename(q, env))

    def replace(t):
        match t:
            case Var(z):
                return n if z == v else t
            case Lam(z, body):
                return Lam(z, replace(body))
            case App(p, q):
                return App(replace(p), replace(q))

    return replace(rename(m, {}))


def test_subst_capture_example_matches_oracle():
    m = Lam(y, Var(x))
    sup = NameSupply(1000)
    assert alpha_eq(subst(m, x, Var(y), sup), naive_subst_oracle(m, x, Var(y), sup))


@given(terms, terms, st.integers(0, 2))
def test_subst_matches_rename_then_replace(m, n, which):
    fv = sorted(free_vars(m), key=lambda v: v.uid)
    if not fv:
        return
    v = fv[which % len(fv)]
    sup = NameSupply(10_000)
    assert alpha_eq(subst(m, v, n, sup), naive_subst_oracle(m, v, n, sup))


@given(terms, terms, st.integers(0, 2))
def test_subst_free_variable_law(m, n, which):
    fv = sorted(free_vars(m) | free_vars(n), key=lambda v: v.uid)
    v = fv[which % len(fv)] if fv else x
    out = subst(m, v, n, NameSupply(10_000))
    expected = (free_vars(m) - {v}) | (free_vars(n) if v in free_vars(m) else set())
    assert free_vars(out) == expected


def test_alpha_eq_examples():
    assert alpha_eq(Lam(x, Var(x)), Lam(y, Var(y)))
    assert not alpha_eq(Var(x), Var(y))
    assert not alpha_eq(Lam(x, Lam(y, Var(x))), Lam(a, Lam(b, Var(b))))


@given(terms, terms, terms)
def test_alpha_eq_is_an_equivalence(p, q, r):
    assert alpha_eq(p, p)
    assert alpha_eq(p, q) == alpha_eq(q, p)
    if alpha_eq(p, q) and alpha_eq(q, r):
        assert alpha_eq(p, r)


@given(terms)
def test_alpha_eq_ignores_binder_names(t):
    renamed = parse(show(t), free=free_map(t))
    assert alpha_eq(t, renamed) and alpha_eq(renamed, t)


def test_is_beta_nf_examples():
    assert is_beta_nf(Lam(x, Var(x)))
    assert not is_beta_nf(App(Lam(x, Var(x)), Var(y)))
    assert is_beta_nf(App(Var(x), Lam(y, Var(y))))


@given(terms)
def test_is_beta_nf_iff_no_leftmost_step(t):
    assert is_beta_nf(t) == (leftmost_step(t) is None)
