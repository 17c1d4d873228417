"""Scripted derivation replays, closed-term enumeration, and the search for
a combinator fixed by application to delta on either side.

Replays re-run the computation chains that justify the library combinators
and generator constructions, link by link, against the bounded oracles.  The
hunt enumerates small closed terms, keeps the bounded-verified fixed point
combinators, and tests each for the two-sided delta fixed point equations;
an empty result is the expected outcome, not a proof.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import reduction
from .boehm import approximant, head_spine, render
from .combinators import church_iterator, named, pair, psi, theta_param, upsilon, upsilon_stage
from .fpc import Refuted, Unknown, Verified, is_fpc_bounded, is_wfpc_bounded
from .generators import Generator, apply_generator, generator
from .reduction import (
    Bounds,
    DEFAULT_BOUNDS,
    Joined,
    NotJoinedWithin,
    RefutedDistinctNormalForms,
    head_step,
    join_bounded,
    reduct_set,
)
from .term import App, Free, Lam, Term, Var, alpha_eq, app, free_vars, fresh_name, lam, show

REPLAY_BOUNDS = Bounds(max_steps=500, max_nodes=20_000, max_term_size=5_000)


# ---------------------------------------------------------------------------
# Replay scripts

@dataclass
class Link:
    lhs: Term
    rhs: Term
    relation: str            # "joins" | "reduces_to" | "alpha_eq"
    label: str = ""


@dataclass
class ReplayScript:
    name: str
    links: list
    bounds: Bounds = REPLAY_BOUNDS
    check: object = None     # optional extra callable() -> (ok, detail)


@dataclass
class ReplayResult:
    script: str
    label: str
    ok: bool
    detail: str

    def to_json(self):
        return {"script": self.script, "link": self.label, "ok": self.ok, "detail": self.detail}


@dataclass
class ReplayReport:
    results: list

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def to_json(self):
        return {"ok": self.ok, "results": [r.to_json() for r in self.results]}


def reaches(a: Term, b: Term, bounds: Bounds) -> bool:
    """True when `b` is in the explored reduct set of `a`."""
    if a == b:
        return True
    graph = reduct_set(a, bounds)
    return graph.index_of(b) is not None


def _check_link(link: Link, bounds: Bounds) -> ReplayResult:
    name = link.label or link.relation
    if link.relation == "alpha_eq":
        ok = alpha_eq(link.lhs, link.rhs)
        return ReplayResult("", name, ok, "alpha equality" if ok else "terms differ")
    if link.relation == "reduces_to":
        ok = reaches(link.lhs, link.rhs, bounds)
        return ReplayResult("", name, ok, "reduct found" if ok else "reduct not found within bounds")
    v = join_bounded(link.lhs, link.rhs, bounds)
    if isinstance(v, Joined):
        return ReplayResult("", name, True,
                            f"joined in {len(v.left_path)}+{len(v.right_path)} steps")
    return ReplayResult("", name, False, f"verdict {type(v).__name__}")


def _ladder_check(length: int = 60):
    """The applied ladder stays a single deterministic path and shows the
    expected stage terms."""
    def run():
        x = fresh_name("x")
        start = head_step(App(upsilon(), Free(x)))   # the stage-0 form
        g = reduct_set(start, Bounds(max_steps=3 * length, max_nodes=length, max_term_size=5_000))
        if not g.is_simple_path():
            return False, "ladder is not a simple path"
        # two steps per rung: stage k sits at index 2k under k head variables
        for k in (0, 1, 2, 5):
            idx = 2 * k
            if idx >= len(g.nodes):
                return False, f"ladder shorter than stage {k}"
            expected = upsilon_stage(k, x)
            for _ in range(k):
                expected = App(Free(x), expected)
            if not alpha_eq(g.nodes[idx], expected):
                return False, f"stage {k} has unexpected shape"
        return True, f"{len(g.nodes)} ladder nodes, out-degree one everywhere"
    return run


def build_scripts() -> list:
    """The bundled derivation replays."""
    theta = named("THETA")
    delta = named("DELTA")
    curry = named("Y")
    I, K, C = named("I"), named("K"), named("C")
    P, Q, R = named("P"), named("Q"), named("R")
    g_ck = named("G_CK")
    g_br = named("G_BRACKET")
    x = Free("x")

    scripts = []

    scripts.append(ReplayScript(
        "turing-unfolding",
        [Link(App(theta, x), App(x, App(theta, x)), "joins", "T x ~ x (T x)")],
    ))

    scripts.append(ReplayScript(
        "curry-to-turing",
        [Link(App(curry, delta), theta, "joins", "Y delta ~ T"),
         Link(App(curry, delta), theta, "reduces_to", "Y delta ->> T")],
        Bounds(max_steps=60, max_nodes=4_000, max_term_size=2_000),
    ))

    yb = App(theta, g_br)
    scripts.append(ReplayScript(
        "bracket-generator-chain",
        [Link(App(yb, x), App(x, app(yb, App(K, pair(yb, x)), I)), "joins",
              "Y G x ~ x (Y G (K [Y G, x]) I)"),
         Link(app(yb, App(K, pair(yb, x)), I), App(pair(yb, x), I), "joins",
              "Y G (K [Y G, x]) I ~ [Y G, x] I"),
         Link(App(pair(yb, x), I), app(I, yb, x), "joins", "[Y G, x] I ~ I (Y G) x"),
         Link(App(yb, x), App(x, App(yb, x)), "joins", "Y G x ~ x (Y G x)")],
    ))

    ypq = app(theta, P, Q)
    scripts.append(ReplayScript(
        "pq-chain",
        [Link(App(ypq, x), app(Q, App(theta, P), x), "joins", "Y P Q x ~ Q (Y P) x"),
         Link(app(Q, App(theta, P), x), App(x, App(ypq, x)), "joins",
              "Q (Y P) x ~ x (Y P Q x)"),
         Link(App(ypq, x), App(x, App(ypq, x)), "joins", "Y P Q x ~ x (Y P Q x)")],
    ))

    ypr = app(theta, P, R)
    W = named("W")
    scripts.append(ReplayScript(
        "pr-chain",
        [Link(App(ypr, x), app(R, App(theta, P), x), "joins", "Y P R x ~ R (Y P) x"),
         Link(app(R, App(theta, P), x), app(W, W, App(ypq, x), x), "joins",
              "R (Y P) x ~ W W (Y P Q x) x"),
         Link(App(ypr, x), App(x, App(ypr, x)), "joins", "Y P R x ~ x (Y P R x)")],
    ))

    scripts.append(ReplayScript("upsilon-ladder", [], check=_ladder_check(60)))

    yg = App(theta, g_ck)
    ck = App(C, K)
    scripts.append(ReplayScript(
        "swap-pair-chain",
        [Link(app(yg, K), app(yg, ck), "joins", "Y G K ~ Y G (C K)"),
         Link(app(yg, ck), App(delta, app(yg, K)), "joins", "Y G (C K) ~ delta (Y G K)"),
         Link(app(yg, K, x), App(x, app(yg, K, x)), "joins", "Y G K x ~ x (Y G K x)")],
        Bounds(max_steps=500, max_nodes=30_000, max_term_size=5_000),
    ))

    return scripts


def replay_all(bounds: Bounds | None = None) -> ReplayReport:
    """Run every bundled replay; failures are report entries, not errors."""
    results = []
    for script in build_scripts():
        b = bounds or script.bounds
        if script.check is not None:
            ok, detail = script.check()
            results.append(ReplayResult(script.name, "graph-shape", ok, detail))
        for link in script.links:
            r = _check_link(link, b)
            r.script = script.name
            results.append(r)
    return ReplayReport(results)


# ---------------------------------------------------------------------------
# Closed-term enumeration by node count

def _gen_terms(size: int, depth: int, cache: dict) -> list:
    key = (size, depth)
    if key in cache:
        return cache[key]
    out = []
    if size == 1:
        out.extend(Var(i) for i in range(depth))
    else:
        out.extend(Lam(body) for body in _gen_terms(size - 1, depth + 1, cache))
        for fsize in range(1, size - 1):
            asize = size - 1 - fsize
            for fn in _gen_terms(fsize, depth, cache):
                for arg in _gen_terms(asize, depth, cache):
                    out.append(App(fn, arg))
    cache[key] = out
    return out


def closed_terms(size_max: int):
    """All closed terms with at most `size_max` nodes, in deterministic
    order: size ascending, then variables, abstractions, applications (by
    function size, then construction order).  Node counts: variable 1,
    abstraction 1 + body, application 1 + function + argument."""
    cache: dict = {}
    for size in range(1, size_max + 1):
        yield from _gen_terms(size, 0, cache)


def count_closed_terms(size_max: int) -> int:
    return sum(1 for _ in closed_terms(size_max))


# ---------------------------------------------------------------------------
# The double fixed point hunt

@dataclass
class HuntCandidate:
    term: Term
    is_fpc: str              # verdict kind
    join_y_ydelta: str | None = None
    join_deltay_y: str | None = None

    def to_json(self):
        out = {"term": show(self.term), "is_fpc": self.is_fpc}
        if self.join_y_ydelta is not None:
            out["join_y_ydelta"] = self.join_y_ydelta
            out["join_deltay_y"] = self.join_deltay_y
        return out


@dataclass
class HuntReport:
    size_max: int
    bounds: Bounds
    candidates_scanned: int
    fpc_verified: int
    refuted: int
    unknown: int
    verified_candidates: list          # HuntCandidate entries for verified fpcs
    double_fpc_found: list             # entries whose both joins succeeded

    def to_json(self):
        return {
            "size_max": self.size_max,
            "bounds": self.bounds.to_json(),
            "candidates_scanned": self.candidates_scanned,
            "fpc_verified": self.fpc_verified,
            "refuted": self.refuted,
            "unknown": self.unknown,
            "verified_candidates": [c.to_json() for c in self.verified_candidates],
            "double_fpc_found": [c.to_json() for c in self.double_fpc_found],
            "note": "an empty double list is consistent with expectation, not a proof",
        }


def hunt_double_fpc(size_max: int, bounds: Bounds = DEFAULT_BOUNDS,
                    prefilter_depth: int = 2, prefilter_fuel: int = 60) -> HuntReport:
    """Enumerate closed terms and look for Y with Y ~ Y delta and delta Y ~ Y.

    Candidates are first screened by a shallow tree-shape check; a definitive
    approximant mismatch refutes fpc status outright (every fpc is a weak
    fpc), and only the survivors pay for a join search.  Deterministic for
    fixed arguments.
    """
    if size_max < 1:
        raise ValueError("size_max must be at least 1")
    delta = named("DELTA")
    scanned = verified = refuted = unknown = 0
    verified_candidates = []
    doubles = []
    for t in closed_terms(size_max):
        scanned += 1
        shape = is_wfpc_bounded(t, prefilter_depth, prefilter_fuel)
        if isinstance(shape, Refuted):
            refuted += 1
            continue
        v = is_fpc_bounded(t, bounds)
        if isinstance(v, Verified):
            verified += 1
            j1 = join_bounded(t, App(t, delta), bounds)
            j2 = join_bounded(App(delta, t), t, bounds)
            cand = HuntCandidate(t, "verified", type(j1).__name__, type(j2).__name__)
            verified_candidates.append(cand)
            if isinstance(j1, Joined) and isinstance(j2, Joined):
                doubles.append(cand)
        elif isinstance(v, Refuted):
            refuted += 1
        else:
            unknown += 1
    return HuntReport(
        size_max=size_max,
        bounds=bounds,
        candidates_scanned=scanned,
        fpc_verified=verified,
        refuted=refuted,
        unknown=unknown,
        verified_candidates=verified_candidates,
        double_fpc_found=doubles,
    )
