"""Bounded verdicts for fixed point combinator status.

A term Y is an fpc when Y x converts to x (Y x) for fresh x, and a weak fpc
when the two sides have the same Bohm tree.  Neither property is decidable,
so the checks here return three-valued verdicts: Verified and Refuted carry
checkable witnesses, Unknown carries the bounds that were exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import boehm, reduction
from .boehm import HNF, Unsolved, head_normal_form, head_spine
from .reduction import Bounds, DEFAULT_BOUNDS, Joined, NotJoinedWithin, RefutedDistinctNormalForms
from .term import App, Free, Lam, Term, abstract, fresh_name, show


@dataclass(frozen=True)
class Verified:
    witness: object          # join verdict or approximant
    detail: str = ""

    kind = "verified"


@dataclass(frozen=True)
class Refuted:
    reason: str              # "distinct_normal_forms" or "approximant_mismatch"
    witness: object
    path: tuple = ()

    kind = "refuted"


@dataclass(frozen=True)
class Unknown:
    detail: str = ""
    bounds: object = None

    kind = "unknown"


FpcVerdict = object


def probe_var(t: Term, base: str = "x") -> str:
    """A reserved name fresh for `t`."""
    return fresh_name(base, t.fvs)


def is_fpc_bounded(Y: Term, bounds: Bounds = DEFAULT_BOUNDS) -> FpcVerdict:
    """Search for a conversion between Y x and x (Y x), x fresh for Y."""
    x = probe_var(Y)
    lhs = App(Y, Free(x))
    rhs = App(Free(x), App(Y, Free(x)))
    v = reduction.join_bounded(lhs, rhs, bounds)
    if isinstance(v, Joined):
        return Verified(v, detail=f"common reduct of Y {x} and {x} (Y {x})")
    if isinstance(v, RefutedDistinctNormalForms):
        return Refuted("distinct_normal_forms", v)
    return Unknown(detail="no join found", bounds=bounds)


def is_wfpc_bounded(Y: Term, depth: int = 6, fuel: int = 500) -> FpcVerdict:
    """Check that the Bohm tree of Y x starts with `depth` nested x-nodes.

    Verified means the approximant is exactly x(x(...(bottom))).  A
    non-bottom node of any other shape is a definitive refutation (the tree
    of a weak fpc applied to fresh x must be the infinite x-spine, and a head
    reduction cycle proves unsolvability).  Bottom reached early from fuel is
    Unknown.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    x = probe_var(Y)
    cur = App(Y, Free(x))
    path: tuple = ()
    for _ in range(depth):
        r = head_normal_form(cur, fuel)
        if isinstance(r, Unsolved):
            if r.cycle:
                return Refuted(
                    "approximant_mismatch",
                    boehm.BOTTOM,
                    path,
                )
            return Unknown(detail=f"no hnf within fuel {fuel} at path {path}")
        if r.binders or r.head != x or len(r.args) != 1:
            got = boehm.Node(r.binders, r.head, tuple(boehm.BOTTOM for _ in r.args))
            return Refuted("approximant_mismatch", got, path)
        cur = r.args[0]
        path = path + (0,)
    return Verified(head_spine(x, depth), detail=f"approximant is {x}^{depth}(bottom)")


class UnfoldError(ValueError):
    pass


def unfold_wfpc(Y: Term, fuel: int = 500) -> Term:
    """One unfolding stage: from Y with Y x = x (Y' x), recover Y'.

    Head-normalizes Y x and re-abstracts the single argument of the head.
    Raises UnfoldError when no hnf is reached or the hnf is not the fresh
    head applied to exactly one argument.
    """
    x = probe_var(Y)
    r = head_normal_form(App(Y, Free(x)), fuel)
    if isinstance(r, Unsolved):
        raise UnfoldError(
            "head reduction " + ("cycles" if r.cycle else f"exceeded fuel {fuel}")
        )
    if r.binders or r.head != x or len(r.args) != 1:
        raise UnfoldError(
            f"head normal form is not {x} applied to one argument: "
            f"binders={list(r.binders)}, head={r.head}, arity={len(r.args)}"
        )
    return Lam(abstract(r.args[0], x), hint="x")


def verdict_to_json(v) -> dict:
    if isinstance(v, Verified):
        w = v.witness
        if isinstance(w, (Joined, RefutedDistinctNormalForms, NotJoinedWithin)):
            witness = reduction.verdict_to_json(w)
        elif isinstance(w, Term):
            witness = show(w)
        else:
            witness = boehm.render(w)
        return {"kind": "verified", "witness": witness, "detail": v.detail}
    if isinstance(v, Refuted):
        w = v.witness
        if isinstance(w, RefutedDistinctNormalForms):
            witness = reduction.verdict_to_json(w)
        elif isinstance(w, Term):
            witness = show(w)
        else:
            witness = boehm.render(w)
        return {
            "kind": "refuted",
            "reason": v.reason,
            "witness": witness,
            "path": list(v.path),
        }
    out = {"kind": "unknown", "detail": v.detail}
    if isinstance(getattr(v, "bounds", None), Bounds):
        out["bounds"] = v.bounds.to_json()
    return out
