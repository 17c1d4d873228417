import random

import pytest
from hypothesis import given, settings, assume

from fpclab.term import (
    App,
    Free,
    Lam,
    ParseError,
    Var,
    alpha_eq,
    app,
    free_vars,
    fresh_name,
    is_reserved,
    lam,
    parse,
    show,
    substitute,
)

from helpers import random_term, term_strategy


class TestParse:
    def test_identity(self):
        t = parse(r"\x. x")
        assert isinstance(t, Lam)
        assert isinstance(t.body, Var) and t.body.index == 0

    def test_delta(self):
        # \y x. x (y x): inner binder heads, outer binder applied under it
        t = parse(r"\y x. x (y x)")
        assert t == Lam(Lam(App(Var(0), App(Var(1), Var(0)))))

    def test_self_application_pair(self):
        t = parse(r"(\x. x x) (\x. x x)")
        w = Lam(App(Var(0), Var(0)))
        assert t == App(w, w)

    def test_application_associates_left(self):
        assert parse("a b c") == App(App(Free("a"), Free("b")), Free("c"))

    def test_lambda_body_extends_right(self):
        assert parse(r"\x. x a b") == Lam(app(Var(0), Free("a"), Free("b")))

    def test_unicode_lambda_and_comments(self):
        t = parse("λx. x  # a comment\n")
        assert alpha_eq(t, parse(r"\x. x"))

    def test_primed_identifiers(self):
        assert free_vars(parse("x' y''")) == {"x'", "y''"}

    def test_shadowing(self):
        assert parse(r"\x. \x. x") == Lam(Lam(Var(0)))

    def test_empty_input_rejected(self):
        with pytest.raises(ParseError):
            parse("   ")

    def test_syntax_error_carries_position(self):
        with pytest.raises(ParseError) as e:
            parse(r"\x. (x")
        assert "line 1" in str(e.value)

    def test_reserved_names_not_parseable(self):
        with pytest.raises(ParseError):
            parse("x̂")


class TestShow:
    def test_delta_round_trip_text(self):
        assert show(parse(r"\y x. x (y x)")) == r"\y x. x (y x)"

    def test_free_variable(self):
        assert show(Free("z")) == "z"

    def test_self_application(self):
        assert show(Lam(App(Var(0), Var(0)), hint="x")) == r"\x. x x"

    def test_minimal_parentheses(self):
        assert show(parse("a (b c)")) == "a (b c)"
        assert show(parse("(a b) c")) == "a b c"
        assert show(parse(r"(\x. x) y")) == r"(\x. x) y"

    def test_binder_avoids_free_names(self):
        # naive printing of \x. a with hint a would capture the free a
        t = Lam(Free("a"), hint="a")
        assert alpha_eq(parse(show(t)), t)

    def test_shadowed_binders_print_distinctly(self):
        t = Lam(Lam(App(Var(0), Var(1)), hint="x"), hint="x")
        assert alpha_eq(parse(show(t)), t)


class TestFreeVars:
    def test_bound_excluded(self):
        assert free_vars(parse(r"\x. x y")) == {"y"}

    def test_closed(self):
        assert free_vars(parse(r"\v x. x (v v x)")) == frozenset()

    def test_reserved_marker(self):
        assert is_reserved(fresh_name("x"))
        assert fresh_name("x", {"x̂"}) != "x̂"


class TestSubstitute:
    def test_simple(self):
        t = substitute(parse("x y"), "x", parse(r"\u. u"))
        assert alpha_eq(t, parse(r"(\u. u) y"))

    def test_capture_forces_renaming(self):
        t = substitute(parse(r"\y. x"), "x", Free("y"))
        # the binder must not capture the substituted y
        assert alpha_eq(t, Lam(Free("y")))
        assert free_vars(t) == {"y"}
        assert alpha_eq(parse(show(t)), t)

    def test_no_occurrence_is_identity(self):
        t = parse(r"\x. x a")
        assert substitute(t, "zz", Free("b")) == t

    def test_substitute_into_binder_scope(self):
        t = substitute(parse(r"\y. z y"), "z", parse("a b"))
        assert alpha_eq(t, parse(r"\y. (a b) y"))


class TestAlphaEq:
    def test_renamed_binders_equal(self):
        assert alpha_eq(parse(r"\x. x"), parse(r"\y. y"))

    def test_distinct_projections_differ(self):
        assert not alpha_eq(parse(r"\x y. x"), parse(r"\x y. y"))

    def test_structural_equality_is_alpha(self):
        assert parse(r"\x. x x") == parse(r"\w. w w")
        assert hash(parse(r"\x. x x")) == hash(parse(r"\w. w w"))


class TestProperties:
    def test_round_trip_random_terms(self):
        rng = random.Random(20240817)
        for _ in range(400):
            t = random_term(rng, rng.randint(1, 30))
            assert alpha_eq(parse(show(t)), t)

    @given(term_strategy())
    @settings(max_examples=150, deadline=None)
    def test_round_trip_hypothesis(self, t):
        assert alpha_eq(parse(show(t)), t)

    @given(term_strategy(max_leaves=6), term_strategy(max_leaves=4), term_strategy(max_leaves=4))
    @settings(max_examples=120, deadline=None)
    def test_substitution_commutation(self, m, n, L):
        # m[x:=n][y:=L] == m[y:=L][x:=n[y:=L]] for x distinct from y and x
        # not free in L
        x, y = "a", "b"
        assume(x not in free_vars(L))
        lhs = substitute(substitute(m, x, n), y, L)
        rhs = substitute(substitute(m, y, L), x, substitute(n, y, L))
        assert alpha_eq(lhs, rhs)

    @given(term_strategy(), term_strategy(max_leaves=4))
    @settings(max_examples=120, deadline=None)
    def test_free_vars_after_substitution(self, t, s):
        x = "a"
        got = free_vars(substitute(t, x, s))
        bound = (free_vars(t) - {x}) | (free_vars(s) if x in free_vars(t) else set())
        assert got <= (free_vars(t) - {x}) | free_vars(s)
        assert got == bound or x not in free_vars(t)
