"""The named combinator library and parameterized constructors.

Recursive defining equations (Q and the self-referential tails built from it)
are realized by Turing-style self-application, so each equation holds
left-to-right by reduction and derivation replays can follow the displayed
chains step by step.
"""

from __future__ import annotations

import re

from .term import App, Free, Term, app, lam, lams, parse


def _binders(names, taken):
    """Prime binder names until they avoid the free names in `taken`."""
    out = []
    for n in names:
        while n in taken or n in out:
            n += "'"
        out.append(n)
    return out


def pair(a: Term, b: Term) -> Term:
    """The pairing term \\z. z a b."""
    (z,) = _binders(["z"], a.fvs | b.fvs)
    return lam(z, app(Free(z), a, b))


def iterate(f: Term, k: int, z: Term) -> Term:
    """k-fold application f(f(...f(z)...)) as a syntactic term."""
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    for _ in range(k):
        z = App(f, z)
    return z


def church_iterator(k: int) -> Term:
    """The combinator taking x and y to x^k(y)."""
    if k < 0:
        raise ValueError("iterator index must be nonnegative")
    return lams(["x", "y"], iterate(Free("x"), k, Free("y")))


# Core library, defined by surface syntax where a closed display exists.
_SOURCES = {
    "I": r"\x. x",
    "K": r"\x y. x",
    "C": r"\f x y. f y x",
    "OMEGA": r"(\x. x x) (\x. x x)",
    "DELTA": r"\y x. x (y x)",
    "Y": r"\f. (\x. f (x x)) (\x. f (x x))",
    # Turing: THETA = V V unfolds by reduction
    "V": r"\v x. x (v v x)",
    # swap-application: P a b reduces to b a
    "P": r"\x y. y x",
    # W W p z reduces to z (W W (z p) z): p is pushed away while z repeats
    "W": r"\w p z. z (w w (z p) z)",
    "PAIR": r"\x y z. z x y",
}

_TERMS = {name: parse(src) for name, src in _SOURCES.items()}
_TERMS["THETA"] = App(_TERMS["V"], _TERMS["V"])

# Q y z = z (y Q z), realized as B B with B = \b y z. z (y (b b) z)
_Q_GEN = parse(r"\b y z. z (y (b b) z)")
_TERMS["Q"] = App(_Q_GEN, _Q_GEN)

# R y z = W W (y Q z) z
_TERMS["R"] = lams(
    ["y", "z"],
    app(
        _TERMS["W"],
        _TERMS["W"],
        app(Free("y"), _TERMS["Q"], Free("z")),
        Free("z"),
    ),
)

# G y z = z (y (C z)) (DELTA (y (C z))); its outputs absorb a swapped pair
_TERMS["G_CK"] = lams(
    ["y", "z"],
    app(
        Free("z"),
        app(Free("y"), App(_TERMS["C"], Free("z"))),
        App(_TERMS["DELTA"], app(Free("y"), App(_TERMS["C"], Free("z")))),
    ),
)

# single-term generator routing a pair of its inputs through K: \y x. x (y (K (\z. z y x)) I)
_TERMS["G_BRACKET"] = lams(
    ["y", "x"],
    App(
        Free("x"),
        app(
            Free("y"),
            App(_TERMS["K"], pair(Free("y"), Free("x"))),
            _TERMS["I"],
        ),
    ),
)

# parameterized Turing combinator: THETA_M = V3 V3 M with V3 = \v m x. x (v v m x)
_V3 = parse(r"\v m x. x (v v m x)")

_CK_RE = re.compile(r"^C_(\d+)$")


def theta_param(m: Term) -> Term:
    """Turing-style fpc carrying `m` as an inert parameter.

    theta_param(m) x reduces to x (theta_param(m) x); distinct inert
    parameters yield non-convertible combinators.
    """
    return app(_V3, _V3, m)


def psi(z: str = "z") -> Term:
    """A weak fpc that records its unfolding history on the free variable `z`."""
    w, p, x = _binders(["w", "p", "x"], {z})
    wz = lams(
        [w, p, x],
        App(
            Free(x),
            app(Free(w), Free(w), App(Free(z), Free(p)), Free(x)),
        ),
    )
    return app(wz, wz, _TERMS["I"])


def _upsilon_v(x: str, c: str) -> Term:
    p, v = _binders(["p", "v"], {x, c})
    return lams(
        [p, v],
        App(Free(x), app(Free(v), App(Free(c), Free(p)), Free(v))),
    )


def upsilon(c: str = "c") -> Term:
    """A weak fpc whose applied form reduces along a single deterministic ladder.

    upsilon(c) = \\x. V_x I V_x with V_x = \\p v. x (v (c p) v).  The free
    variable `c` tags the unfolding stage, which keeps every stage of the
    ladder separated from the next by conversion.
    """
    (x,) = _binders(["x"], {c})
    return lam(x, app(_upsilon_v(x, c), _TERMS["I"], _upsilon_v(x, c)))


def upsilon_stage(k: int, x: str, c: str = "c") -> Term:
    """Stage k of the upsilon ladder: V_x c^k(I) V_x with head variable `x`."""
    vx = _upsilon_v(x, c)
    return app(vx, iterate(Free(c), k, _TERMS["I"]), vx)


def psi_stage(z: str = "z") -> Term:
    """The next unfolding stage of psi: W_z W_z (z I)."""
    w, p, x = _binders(["w", "p", "x"], {z})
    wz = lams(
        [w, p, x],
        App(
            Free(x),
            app(Free(w), Free(w), App(Free(z), Free(p)), Free(x)),
        ),
    )
    return app(wz, wz, App(Free(z), _TERMS["I"]))


def named(name: str) -> Term:
    """Look up a library combinator by name (C_k for iterators, k >= 0)."""
    key = name.upper()
    m = _CK_RE.match(key)
    if m:
        return church_iterator(int(m.group(1)))
    if key == "Y_CURRY":
        key = "Y"
    if key == "PSI":
        return psi()
    if key == "UPSILON":
        return upsilon()
    t = _TERMS.get(key)
    if t is None:
        raise KeyError(f"unknown combinator {name!r}")
    return t


def names() -> list:
    return sorted(_TERMS) + ["C_k", "PSI", "UPSILON"]


def defining_equations():
    """(name, lhs, rhs) triples; every lhs joins its rhs within modest fuel."""
    a, b, f = Free("a"), Free("b"), Free("f")
    I, K, C = _TERMS["I"], _TERMS["K"], _TERMS["C"]
    delta, theta = _TERMS["DELTA"], _TERMS["THETA"]
    P, Q, W, R = _TERMS["P"], _TERMS["Q"], _TERMS["W"], _TERMS["R"]
    g_ck, g_br, pr = _TERMS["G_CK"], _TERMS["G_BRACKET"], _TERMS["PAIR"]
    th_a = theta_param(a)
    return [
        ("I", App(I, a), a),
        ("K", app(K, a, b), a),
        ("C", app(C, f, a, b), app(f, b, a)),
        ("C_3", app(church_iterator(3), a, b), App(a, App(a, App(a, b)))),
        ("DELTA", app(delta, a, b), App(b, App(a, b))),
        ("THETA", App(theta, a), App(a, App(theta, a))),
        ("THETA_M", App(th_a, b), App(b, App(th_a, b))),
        ("PSI", App(psi("z"), a), App(a, App(psi_stage("z"), a))),
        ("UPSILON", App(upsilon("c"), a), App(a, upsilon_stage(1, "a", "c"))),
        ("P", app(P, a, b), App(b, a)),
        ("Q", app(Q, a, b), App(b, app(a, Q, b))),
        ("W", app(W, W, a, b), App(b, app(W, W, App(b, a), b))),
        ("R", app(R, a, b), app(W, W, app(a, Q, b), b)),
        (
            "G_CK",
            app(g_ck, a, b),
            app(b, app(a, App(C, b)), App(delta, app(a, App(C, b)))),
        ),
        (
            "G_BRACKET",
            app(g_br, a, b),
            App(b, app(a, App(K, pair(a, b)), I)),
        ),
        ("PAIR", app(pr, a, b), pair(a, b)),
    ]
