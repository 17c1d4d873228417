"""fpclab: a workbench for fixed point combinators and their generators.

Core layers: lambda terms over a nameless canonical representation, bounded
beta-reduction search, Bohm tree approximants, a combinator library, bounded
fpc verdicts, and generator classification with fixed point constructions.
"""

from .term import (
    App,
    Free,
    Lam,
    Term,
    Var,
    alpha_eq,
    app,
    free_vars,
    fresh_name,
    is_closed,
    lam,
    lams,
    parse,
    show,
    spine,
    substitute,
)
from .reduction import (
    Bounds,
    DEFAULT_BOUNDS,
    Joined,
    NotJoinedWithin,
    RefutedDistinctNormalForms,
    NormalForm,
    Exhausted,
    head_step,
    join_bounded,
    normalize,
    reduct_set,
    redexes,
    step,
)
from .boehm import (
    BOTTOM,
    AbsentUpTo,
    AgreePrefix,
    DisagreeAt,
    Node,
    Present,
    approximant,
    bt_eq_bounded,
    head_normal_form,
    head_spine,
    occurs_in_approx,
    render,
)
from .combinators import (
    church_iterator,
    defining_equations,
    iterate,
    named,
    pair,
    psi,
    theta_param,
    upsilon,
)
from .fpc import (
    Refuted,
    Unknown,
    Verified,
    UnfoldError,
    is_fpc_bounded,
    is_wfpc_bounded,
    unfold_wfpc,
)
from .generators import (
    Generator,
    ClassificationReport,
    FixedPointCertificate,
    apply_generator,
    classify,
    compose,
    construct_fixed_point,
    default_samples,
    delta_expansion,
    expansion,
    ext_eq_bounded,
    fixed_point_generator,
    generator,
    is_fgv_evidence,
    probe_accretive,
    probe_compact,
    probe_constant,
    probe_weakly_compact,
    probe_weakly_constant,
    tail_absorber,
    trivial,
    verify_absorption,
)
from .lab import closed_terms, count_closed_terms, hunt_double_fpc, replay_all

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
