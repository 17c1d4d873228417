import pytest

from fpclab.combinators import (
    church_iterator,
    defining_equations,
    iterate,
    named,
    names,
    pair,
    psi,
    psi_stage,
    theta_param,
    upsilon,
    upsilon_stage,
)
from fpclab.reduction import Bounds, Joined, NotJoinedWithin, join_bounded
from fpclab.term import App, Free, alpha_eq, app, free_vars, parse

EQ_BOUNDS = Bounds(max_steps=200, max_nodes=8_000, max_term_size=4_000)


def test_every_library_equation_holds_by_join():
    failures = []
    for name, lhs, rhs in defining_equations():
        v = join_bounded(lhs, rhs, EQ_BOUNDS)
        if not isinstance(v, Joined):
            failures.append(name)
    assert not failures, f"equations failed: {failures}"


def test_delta_definition():
    assert alpha_eq(named("DELTA"), parse(r"\y x. x (y x)"))


def test_turing_combinator_is_self_application():
    v = named("V")
    assert named("THETA") == App(v, v)
    assert free_vars(named("THETA")) == frozenset()


def test_lookup_unknown_name():
    with pytest.raises(KeyError):
        named("NOPE")


def test_lookup_is_case_insensitive_and_lists_names():
    assert named("theta") == named("THETA")
    assert "THETA" in names()


def test_church_iterator_by_index():
    assert alpha_eq(named("C_0"), parse(r"\x y. y"))
    assert alpha_eq(named("C_2"), parse(r"\x y. x (x y)"))
    with pytest.raises(ValueError):
        church_iterator(-1)


class TestIterate:
    def test_zero_is_identity(self):
        z = Free("z")
        assert iterate(Free("F"), 0, z) == z

    def test_two_fold_delta_unrolls(self):
        t = App(iterate(named("DELTA"), 2, Free("z")), Free("x"))
        want = parse("x (x (z x))")
        assert isinstance(join_bounded(t, want, EQ_BOUNDS), Joined)

    def test_identity_iterations_collapse(self):
        t = iterate(named("I"), 3, Free("z"))
        v = join_bounded(t, Free("z"), EQ_BOUNDS)
        assert isinstance(v, Joined)


class TestParameterizedTuring:
    def test_unfolds_like_a_fixed_point_combinator(self):
        for m in (named("I"), named("K")):
            t = theta_param(m)
            x = Free("x")
            v = join_bounded(App(t, x), App(x, App(t, x)), EQ_BOUNDS)
            assert isinstance(v, Joined)

    def test_distinct_parameters_stay_separated(self):
        v = join_bounded(theta_param(named("I")), theta_param(named("K")),
                         Bounds(100, 3_000, 1_500))
        assert isinstance(v, NotJoinedWithin)

    def test_parameter_free_variables_pass_through(self):
        assert free_vars(theta_param(Free("z"))) == {"z"}


class TestWeakCombinators:
    def test_psi_carries_its_parameter(self):
        assert free_vars(psi("z")) == {"z"}
        assert free_vars(psi("q'")) == {"q'"}

    def test_psi_unfolding_stage(self):
        # psi z x ~ x (stage x) with the stage carrying one more z
        x = Free("x")
        v = join_bounded(App(psi("z"), x), App(x, App(psi_stage("z"), x)), EQ_BOUNDS)
        assert isinstance(v, Joined)

    def test_upsilon_head_chain(self):
        x = Free("x")
        v = join_bounded(App(upsilon(), x), App(x, upsilon_stage(1, "x")), EQ_BOUNDS)
        assert isinstance(v, Joined)

    def test_upsilon_not_joined_with_its_unfolding(self):
        x = Free("x")
        v = join_bounded(App(upsilon(), x), App(x, App(upsilon(), x)),
                         Bounds(150, 4_000, 2_500))
        assert isinstance(v, NotJoinedWithin)

    def test_parameter_capture_avoided(self):
        # binder names inside must dodge the chosen parameter names
        assert free_vars(psi("x")) == {"x"}
        assert free_vars(upsilon("x")) == {"x"}


class TestSwapAndPairing:
    def test_swap_sends_k_to_its_mirror(self):
        c, k, i = named("C"), named("K"), named("I")
        v = join_bounded(App(c, k), App(k, i), EQ_BOUNDS)
        assert isinstance(v, Joined)

    def test_double_swap_restores_k(self):
        c, k = named("C"), named("K")
        v = join_bounded(App(c, App(c, k)), k, EQ_BOUNDS)
        assert isinstance(v, Joined)

    def test_pairing_selects_components(self):
        p = pair(Free("a"), Free("b"))
        v = join_bounded(App(p, named("K")), Free("a"), EQ_BOUNDS)
        assert isinstance(v, Joined)
        v = join_bounded(App(p, app(named("K"), named("I"))), Free("b"), EQ_BOUNDS)
        assert isinstance(v, Joined)

    def test_pairing_avoids_capture(self):
        p = pair(Free("z"), Free("b"))
        assert free_vars(p) == {"z", "b"}
        v = join_bounded(App(p, named("K")), Free("z"), EQ_BOUNDS)
        assert isinstance(v, Joined)
