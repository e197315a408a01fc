"""Normal-order lambda calculus evaluation by a read-back rewriting machine."""

from .decorated import Atom, DApp, DLam, DVar, bullet, dec_free_vars, dec_subst, rb_dec
from .machine import (
    FuelExhausted,
    Focus,
    Normalized,
    StepRecord,
    classify,
    inject,
    rb_state,
    run,
    state_alpha_eq,
    step,
)
from .oracle import NF, Diverged, is_normal_context, leftmost_step, normalize, step_or_equal
from .syntax import ParseError, parse, parse_state, print_term, show
from .terms import (
    App,
    Context,
    Lam,
    NameSupply,
    Var,
    VarName,
    alpha_eq,
    compose_contexts,
    free_vars,
    is_beta_nf,
    plug,
    subst,
)

__version__ = "0.1.0"

__all__ = [
    "App", "Atom", "Context", "DApp", "DLam", "DVar", "Diverged", "Focus",
    "FuelExhausted", "Lam", "NF", "NameSupply", "Normalized", "ParseError",
    "StepRecord", "Var", "VarName", "alpha_eq", "bullet", "classify",
    "compose_contexts", "dec_free_vars", "dec_subst", "free_vars", "inject",
    "is_beta_nf", "is_normal_context", "leftmost_step", "normalize", "parse",
    "parse_state", "plug", "print_term", "rb_dec", "rb_state", "run", "show",
    "state_alpha_eq", "step", "step_or_equal", "subst",
]
