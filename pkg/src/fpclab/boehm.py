"""Solvability probes, head normal forms, and Bohm tree approximants.

An approximant under-approximates the Bohm tree: whenever head reduction
fails (out of fuel, or a detected head-reduction cycle) the node becomes
bottom.  Every non-bottom node shown is a genuine tree node, so "present" and
"disagree" verdicts derived from approximants are sound, while "absent" and
"agree" are evidence relative to the depth and fuel used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .term import App, Free, Lam, RESERVED_MARK, Term, instantiate, show, spine


class _Bottom:
    """Unknown or absent subtree; prints as the bottom symbol."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "<bottom>"


BOTTOM = _Bottom()


@dataclass(frozen=True)
class Node:
    """A head-normal-form layer of a Bohm tree.

    Binder names are canonical (chosen by scope position from a reserved
    namespace), so plain structural equality of approximants is alpha-correct.
    The head is either a free name of the original term or one of the binder
    names in scope.
    """

    binders: tuple
    head: str
    children: tuple


BoehmApprox = Union[_Bottom, Node]


def _opened(k: int) -> str:
    # canonical name for the k-th binder opened along a path, reserved so it
    # cannot collide with user-written free variables
    return f"b{k}{RESERVED_MARK}"


class HNF(NamedTuple):
    binders: tuple   # opened binder names, outermost first
    head: str        # free name or an opened binder name
    args: tuple      # argument terms (may mention opened names)
    steps: int


class Unsolved(NamedTuple):
    steps: int
    cycle: bool      # True: head reduction provably loops, so no hnf exists


def head_normal_form(t: Term, fuel: int = 500, scope: int = 0):
    """Head-reduce up to `fuel` contractions and decompose the result.

    Returns HNF(binders, head, args) on success.  An Unsolved with
    cycle=True is definitive (head reduction revisited a term, and head
    reduction is deterministic); cycle=False only means fuel ran out.
    """
    binders = []
    steps = 0
    seen = set()
    while True:
        while isinstance(t, Lam):
            name = _opened(scope)
            scope += 1
            binders.append(name)
            t = instantiate(t.body, Free(name))
        head, args = spine(t)
        if not isinstance(head, Lam):
            # head is Free (opened binders resolved to Free names too)
            return HNF(tuple(binders), head.name, tuple(args), steps)
        if not args:
            raise AssertionError("unpeeled abstraction")
        if steps >= fuel:
            return Unsolved(steps, cycle=False)
        if t in seen:
            return Unsolved(steps, cycle=True)
        seen.add(t)
        reduced = instantiate(head.body, args[0])
        for a in args[1:]:
            reduced = App(reduced, a)
        t = reduced
        steps += 1


def approximant(t: Term, depth: int, fuel: int = 500, _scope: int = 0) -> BoehmApprox:
    """The depth-`depth` Bohm tree approximant of `t`.

    Each child gets an independent copy of `fuel`, so a stubborn sibling
    cannot starve the others and the tree shape is reproducible.
    """
    if depth <= 0:
        return BOTTOM
    r = head_normal_form(t, fuel, _scope)
    if isinstance(r, Unsolved):
        return BOTTOM
    inner = _scope + len(r.binders)
    return Node(
        r.binders,
        r.head,
        tuple(approximant(a, depth - 1, fuel, inner) for a in r.args),
    )


def render(a: BoehmApprox, ascii_only: bool = False) -> str:
    """Textual form of an approximant, e.g. "x (x _|_)"."""
    bottom = "_|_" if ascii_only else "⊥"

    def clean(name: str) -> str:
        return name if ascii_only is False else name.replace(RESERVED_MARK, "^")

    def go(n: BoehmApprox, atom: bool) -> str:
        if n is BOTTOM:
            return bottom
        assert isinstance(n, Node)
        parts = [clean(n.head)] + [go(c, True) for c in n.children]
        s = " ".join(parts)
        if n.binders:
            lam = "\\" if ascii_only else "λ"
            s = f"{lam}{' '.join(clean(b) for b in n.binders)}. {s}"
            return f"({s})" if atom else s
        if atom and n.children:
            return f"({s})"
        return s

    return go(a, False)


def approx_to_json(a: BoehmApprox):
    if a is BOTTOM:
        return {"bottom": True}
    return {
        "binders": list(a.binders),
        "head": a.head,
        "children": [approx_to_json(c) for c in a.children],
    }


def head_spine(head: str, depth: int) -> BoehmApprox:
    """The approximant head(head(...(bottom))), nested `depth` times."""
    a: BoehmApprox = BOTTOM
    for _ in range(depth):
        a = Node((), head, (a,))
    return a


# ---------------------------------------------------------------------------
# Bounded Bohm tree equality and occurrence search

@dataclass(frozen=True)
class AgreePrefix:
    depth: int
    fuel: int

    kind = "agree_prefix"


@dataclass(frozen=True)
class DisagreeAt:
    path: tuple          # child indices from the root
    left: BoehmApprox
    right: BoehmApprox
    definitive: bool     # True iff neither side is bottom at the path

    kind = "disagree_at"


def bt_eq_bounded(a: Term, b: Term, depth: int, fuel: int = 500):
    """Compare Bohm approximants node by node.

    Bottom matches bottom only.  A disagreement where neither side is bottom
    refutes Bohm tree equality outright; any other outcome is evidence.
    """
    ap = approximant(a, depth, fuel)
    bp = approximant(b, depth, fuel)

    def walk(x: BoehmApprox, y: BoehmApprox, path: tuple):
        if x is BOTTOM and y is BOTTOM:
            return None
        if x is BOTTOM or y is BOTTOM:
            return DisagreeAt(path, x, y, definitive=False)
        if x.binders != y.binders or x.head != y.head or len(x.children) != len(y.children):
            return DisagreeAt(path, x, y, definitive=True)
        for i, (cx, cy) in enumerate(zip(x.children, y.children)):
            hit = walk(cx, cy, path + (i,))
            if hit is not None:
                return hit
        return None

    hit = walk(ap, bp, ())
    return AgreePrefix(depth, fuel) if hit is None else hit


@dataclass(frozen=True)
class Present:
    path: tuple

    kind = "present"


@dataclass(frozen=True)
class AbsentUpTo:
    depth: int
    fuel: int

    kind = "absent_up_to"


def occurs_in_approx(z: str, t: Term, depth: int, fuel: int = 500):
    """Search the approximant of `t` for `z` in head position.

    Binders never count (approximant binders live in a reserved namespace).
    Present is stable under larger depth or fuel; AbsentUpTo is not.
    """
    a = approximant(t, depth, fuel)

    def walk(n: BoehmApprox, path: tuple) -> Optional[tuple]:
        if n is BOTTOM:
            return None
        if n.head == z:
            return path
        for i, c in enumerate(n.children):
            hit = walk(c, path + (i,))
            if hit is not None:
                return hit
        return None

    hit = walk(a, ())
    return Present(hit) if hit is not None else AbsentUpTo(depth, fuel)
