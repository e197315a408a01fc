import hypothesis.strategies as st
from hypothesis import settings

from lambda_rb.terms import App, Lam, NameSupply, Var

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

BASES = "xyz"
FREE = ("a", "b", "x")


# Nameless shapes: ("v", k) | ("l", body) | ("a", f, x).  A variable index
# below the number of enclosing binders refers to one of them, otherwise to
# a free variable.
shapes = st.recursive(
    st.tuples(st.just("v"), st.integers(0, 5)),
    lambda inner: st.one_of(
        st.tuples(st.just("l"), inner),
        st.tuples(st.just("a"), inner, inner),
    ),
    max_leaves=12,
)


def build(shape, supply=None, free=None):
    supply = supply or NameSupply(100)
    free = free or [supply.fresh(b) for b in FREE]

    def go(s, scope):
        if s[0] == "v":
            k = s[1]
            if k < len(scope):
                return Var(scope[-1 - k])
            return Var(free[k % len(free)])
        if s[0] == "l":
            x = supply.fresh(BASES[len(scope) % len(BASES)])
            return Lam(x, go(s[1], scope + [x]))
        return App(go(s[1], scope), go(s[2], scope))

    return go(shape, [])


terms = shapes.map(build)


# Acceptance verdicts, echoed in the terminal summary so they show up
# without -s.
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
