"""Shared term samplers for the test suite."""

import random

from hypothesis import strategies as st

from fpclab.term import App, Free, Lam, Term, Var

FREE_POOL = ("a", "b", "c", "u", "w")


def random_term(rng: random.Random, size: int, depth: int = 0) -> Term:
    """A random term with at most `size` nodes; bound and free variables mix."""
    if size <= 1:
        if depth and rng.random() < 0.6:
            return Var(rng.randrange(depth))
        return Free(rng.choice(FREE_POOL))
    roll = rng.random()
    if roll < 0.4:
        return Lam(random_term(rng, size - 1, depth + 1), hint=rng.choice("xyz"))
    left = rng.randint(1, size - 2) if size > 2 else 1
    return App(
        random_term(rng, left, depth),
        random_term(rng, size - 1 - left, depth),
    )


def _var_strategy(depth):
    opts = [st.sampled_from(FREE_POOL).map(Free)]
    if depth > 0:
        opts.append(st.integers(min_value=0, max_value=depth - 1).map(Var))
    return st.one_of(opts)


def term_strategy(max_leaves: int = 8, depth: int = 0):
    """Hypothesis strategy over well-formed terms."""
    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda p: App(p[0], p[1])),
            children.flatmap(
                lambda body: st.sampled_from("xyz").map(lambda h: Lam(body, hint=h))
            ),
        )

    # binder depth is not tracked through st.recursive, so bound variables are
    # introduced only through closed sub-shapes; free names cover the rest
    base = st.sampled_from(FREE_POOL).map(Free) | st.sampled_from("xy").map(
        lambda h: Lam(Var(0), hint=h)
    )
    return st.recursive(base, extend, max_leaves=max_leaves)
