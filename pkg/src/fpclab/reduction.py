"""Beta reduction: single steps, strategies, reduct graphs, bounded joins.

Everything here is resource-capped.  The only definitive negative anywhere is
a pair of distinct beta-normal forms; running out of fuel, nodes, or term
size always yields an explicit "not within bounds" value, never a refutation.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .term import App, Free, Lam, Term, Var, instantiate, show, spine

# A redex position is a path of moves from the root:
# 'f' = function side, 'a' = argument side, 'b' = under the binder.
Position = tuple

ROOT: Position = ()


@dataclass(frozen=True)
class Bounds:
    """Resource caps for searches."""

    max_steps: int = 500
    max_nodes: int = 20_000
    max_term_size: int = 5_000

    def __post_init__(self):
        if self.max_steps <= 0 or self.max_nodes <= 0 or self.max_term_size <= 0:
            raise ValueError("bounds must be strictly positive")

    def to_json(self):
        return {
            "max_steps": self.max_steps,
            "max_nodes": self.max_nodes,
            "max_term_size": self.max_term_size,
        }


DEFAULT_BOUNDS = Bounds()


def format_position(p: Position) -> str:
    return ".".join(p) if p else "root"


def is_redex(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fn, Lam)


def redexes(t: Term) -> list:
    """All redex positions in preorder: a node precedes its function part,
    which precedes its argument part.  The first entry is the
    leftmost-outermost redex."""
    out = []

    def go(u: Term, pos: Position):
        if isinstance(u, App):
            if isinstance(u.fn, Lam):
                out.append(pos)
            go(u.fn, pos + ("f",))
            go(u.arg, pos + ("a",))
        elif isinstance(u, Lam):
            go(u.body, pos + ("b",))

    go(t, ROOT)
    return out


def subterm_at(t: Term, pos: Position) -> Term:
    for move in pos:
        if move == "f" and isinstance(t, App):
            t = t.fn
        elif move == "a" and isinstance(t, App):
            t = t.arg
        elif move == "b" and isinstance(t, Lam):
            t = t.body
        else:
            raise ValueError(f"no subterm at {format_position(pos)}")
    return t


def step(t: Term, pos: Position) -> Term:
    """Contract the redex at `pos`; raises ValueError on a non-redex position."""
    def go(u: Term, i: int) -> Term:
        if i == len(pos):
            if not is_redex(u):
                raise ValueError(f"no redex at {format_position(pos)}")
            return instantiate(u.fn.body, u.arg)
        move = pos[i]
        if move == "f" and isinstance(u, App):
            return App(go(u.fn, i + 1), u.arg)
        if move == "a" and isinstance(u, App):
            return App(u.fn, go(u.arg, i + 1))
        if move == "b" and isinstance(u, Lam):
            return Lam(go(u.body, i + 1), u.hint)
        raise ValueError(f"invalid position {format_position(pos)}")

    return go(t, 0)


def head_redex(t: Term) -> Optional[Position]:
    """Position of the head redex, or None if `t` is in head normal form."""
    pos = []
    while isinstance(t, Lam):
        pos.append("b")
        t = t.body
    # walk down the application spine
    spine_len = 0
    while isinstance(t, App):
        pos.append("f")
        t = t.fn
        spine_len += 1
    if isinstance(t, Lam) and spine_len > 0:
        return tuple(pos[:-1])  # the App whose function is this Lam
    return None


def head_step(t: Term) -> Optional[Term]:
    """Contract the head redex if there is one."""
    pos = head_redex(t)
    if pos is None:
        return None
    return step(t, pos)


class NormalForm(NamedTuple):
    term: Term
    steps: int


class Exhausted(NamedTuple):
    last: Term
    steps: int


def leftmost_redex(t: Term) -> Optional[Position]:
    def go(u: Term, pos: Position):
        if isinstance(u, App):
            if isinstance(u.fn, Lam):
                return pos
            hit = go(u.fn, pos + ("f",))
            if hit is not None:
                return hit
            return go(u.arg, pos + ("a",))
        if isinstance(u, Lam):
            return go(u.body, pos + ("b",))
        return None

    return go(t, ROOT)


def normalize(t: Term, bounds: Bounds = DEFAULT_BOUNDS):
    """Leftmost-outermost reduction to beta normal form, within bounds.

    Leftmost-outermost is normalizing, so a NormalForm result is the unique
    beta-nf.  Exhaustion (steps or term size) is a value, not an error.
    """
    steps = 0
    while steps < bounds.max_steps:
        pos = leftmost_redex(t)
        if pos is None:
            return NormalForm(t, steps)
        nxt = step(t, pos)
        if nxt.size > bounds.max_term_size:
            return Exhausted(t, steps)
        t = nxt
        steps += 1
    if leftmost_redex(t) is None:
        return NormalForm(t, steps)
    return Exhausted(t, steps)


def reduction_path(t: Term, bounds: Bounds = DEFAULT_BOUNDS) -> list:
    """The leftmost-outermost step positions taken by `normalize`."""
    path = []
    steps = 0
    while steps < bounds.max_steps:
        pos = leftmost_redex(t)
        if pos is None:
            break
        nxt = step(t, pos)
        if nxt.size > bounds.max_term_size:
            break
        path.append(pos)
        t = nxt
        steps += 1
    return path


# ---------------------------------------------------------------------------
# Reduct graphs

@dataclass
class ReductGraph:
    root: Term
    nodes: list            # insertion (BFS) order
    edges: list            # (from_index, position, to_index)
    closed: bool           # True iff exploration saw the whole reduct set
    clipped_nodes: bool    # node budget hit
    clipped_size: bool     # some contractum exceeded the size cap
    clipped_depth: bool    # some node at the step cap still had redexes
    bounds: Bounds

    def index_of(self, t: Term):
        return self._index.get(t)

    def out_degree(self, i: int) -> int:
        return sum(1 for e in self.edges if e[0] == i)

    def is_simple_path(self) -> bool:
        """Every node has exactly one outgoing edge, except possibly the last."""
        degrees = [0] * len(self.nodes)
        for src, _, _ in self.edges:
            degrees[src] += 1
        if not degrees:
            return False
        return all(d == 1 for d in degrees[:-1]) and degrees[-1] <= 1

    def to_dot(self) -> str:
        def esc(s: str) -> str:
            return s.replace("\\", "\\\\").replace('"', '\\"')

        lines = ["digraph reducts {"]
        for i, t in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{esc(show(t))}"];')
        for src, pos, dst in self.edges:
            lines.append(f'  n{src} -> n{dst} [label="{esc(format_position(pos))}"];')
        lines.append("}")
        return "\n".join(lines)


def reduct_set(t: Term, bounds: Bounds = DEFAULT_BOUNDS) -> ReductGraph:
    """Breadth-first closure of `t` under single beta steps, deduplicated
    modulo alpha, truncated by the given bounds."""
    nodes = [t]
    index = {t: 0}
    edges = []
    clipped_nodes = clipped_size = clipped_depth = False
    frontier = [(t, 0)]
    while frontier:
        nxt_frontier = []
        for u, depth in frontier:
            if depth >= bounds.max_steps:
                if redexes(u):
                    clipped_depth = True
                continue
            for pos in redexes(u):
                v = step(u, pos)
                if v.size > bounds.max_term_size:
                    clipped_size = True
                    continue
                j = index.get(v)
                if j is None:
                    if len(nodes) >= bounds.max_nodes:
                        clipped_nodes = True
                        continue
                    j = len(nodes)
                    nodes.append(v)
                    index[v] = j
                    nxt_frontier.append((v, depth + 1))
                edges.append((index[u], pos, j))
            if clipped_nodes:
                break
        if clipped_nodes:
            break
        frontier = nxt_frontier
    g = ReductGraph(
        root=t,
        nodes=nodes,
        edges=edges,
        closed=not (clipped_nodes or clipped_size or clipped_depth),
        clipped_nodes=clipped_nodes,
        clipped_size=clipped_size,
        clipped_depth=clipped_depth,
        bounds=bounds,
    )
    g._index = index
    return g


# ---------------------------------------------------------------------------
# Bounded joinability (the =beta semi-decision)

@dataclass(frozen=True)
class Joined:
    witness: Term
    left_path: tuple   # positions from the left term to the witness
    right_path: tuple

    kind = "joined"


@dataclass(frozen=True)
class RefutedDistinctNormalForms:
    nf_left: Term
    nf_right: Term

    kind = "refuted_distinct_normal_forms"


@dataclass(frozen=True)
class NotJoinedWithin:
    bounds: Bounds
    explored_left: int
    explored_right: int
    closed_left: bool
    closed_right: bool

    kind = "not_joined_within"


JoinVerdict = object


def _trace(parents: dict, t: Term) -> tuple:
    path = []
    while True:
        parent = parents[t]
        if parent is None:
            break
        prev, pos = parent
        path.append(pos)
        t = prev
    path.reverse()
    return tuple(path)


def _rebuild_at(t: Term, pos, replacement: Term) -> Term:
    if not pos:
        return replacement
    move, rest = pos[0], pos[1:]
    if move == "f":
        return App(_rebuild_at(t.fn, rest, replacement), t.arg)
    if move == "a":
        return App(t.fn, _rebuild_at(t.arg, rest, replacement))
    return Lam(_rebuild_at(t.body, rest, replacement), t.hint)


def _head_endpoint(t: Term, bounds: Bounds):
    """Head-reduce `t` within bounds; returns the endpoint and step positions."""
    path = []
    for _ in range(bounds.max_steps):
        pos = head_redex(t)
        if pos is None:
            break
        nxt = step(t, pos)
        if nxt.size > bounds.max_term_size:
            break
        path.append(pos)
        t = nxt
    return t, tuple(path)


def _peel_join(a: Term, b: Term, bounds: Bounds):
    """Congruence fast path: when `a` and `b` differ inside a common
    single-hole context, a join of the holes lifts to a join of the wholes.

    Tries each context depth from shallowest to deepest with a fraction of
    the node budget.  Only Joined propagates; hole-level refutation or
    exhaustion proves nothing about the enclosing terms.
    """
    levels = []
    x, y, ctx = a, b, ()
    while True:
        if isinstance(x, App) and isinstance(y, App):
            if x.fn == y.fn:
                ctx += ("a",)
                x, y = x.arg, y.arg
            elif x.arg == y.arg:
                ctx += ("f",)
                x, y = x.fn, y.fn
            else:
                break
        elif isinstance(x, Lam) and isinstance(y, Lam):
            ctx += ("b",)
            x, y = x.body, y.body
        else:
            break
        levels.append((ctx, x, y))
    if not levels:
        return None
    sub_bounds = Bounds(
        bounds.max_steps,
        max(500, bounds.max_nodes // 4),
        bounds.max_term_size,
    )
    for ctx, x, y in levels:
        v = join_bounded(x, y, sub_bounds, _peel=False)
        if isinstance(v, Joined):
            return Joined(
                _rebuild_at(a, ctx, v.witness),
                tuple(ctx + p for p in v.left_path),
                tuple(ctx + p for p in v.right_path),
            )
    return None


def join_bounded(a: Term, b: Term, bounds: Bounds = DEFAULT_BOUNDS, _peel: bool = True):
    """Search for a common reduct of `a` and `b`.

    Verdicts: Joined (witness plus the step paths that reach it), or
    RefutedDistinctNormalForms when both sides normalize within bounds to
    different normal forms (sound by confluence), or NotJoinedWithin.

    Bidirectional search over the two reduct sets with alpha-canonical
    deduplication, meeting in the middle.  Each side alternates between two
    expansion disciplines: breadth-first (uniform depth, which finds meets
    that require growing intermediate terms) and smallest-term-first (which
    chases productive, size-reducing chains before unfolding noise).  A
    congruence fast path first tries to join inside a common context.  The
    schedule is fixed, so verdicts and witnesses are reproducible for given
    bounds.  A node's reduction depth respects max_steps, and max_nodes caps
    the total explored on both sides together.
    """
    if a == b:
        return Joined(a, (), ())

    ra = normalize(a, bounds)
    rb = normalize(b, bounds)
    if isinstance(ra, NormalForm) and isinstance(rb, NormalForm):
        if ra.term == rb.term:
            return Joined(
                ra.term,
                tuple(reduction_path(a, bounds)),
                tuple(reduction_path(b, bounds)),
            )
        return RefutedDistinctNormalForms(ra.term, rb.term)

    if _peel:
        lifted = _peel_join(a, b, bounds)
        if lifted is not None:
            return lifted
        # Common contexts often appear only after the application spines have
        # been consumed; retry the congruence peel from the head-reduced
        # endpoints of both sides.
        ea, pa = _head_endpoint(a, bounds)
        eb, pb = _head_endpoint(b, bounds)
        for u, pu, v, pv in ((ea, pa, b, ()), (a, (), eb, pb), (ea, pa, eb, pb)):
            if not pu and not pv:
                continue
            lifted = _peel_join(u, v, bounds)
            if lifted is not None:
                return Joined(
                    lifted.witness,
                    tuple(pu) + lifted.left_path,
                    tuple(pv) + lifted.right_path,
                )

    seq = 0
    sides = []
    for root in (a, b):
        sides.append({
            "seen": {root: None},
            "depth": {root: 0},
            "fifo": deque([root]),
            "heap": [(root.size, seq, root)],
            "done": set(),
            "complete": True,
        })
        seq += 1
    total = 2

    def next_pending(side, tick):
        if tick % 2 == 0:
            while side["fifo"]:
                u = side["fifo"].popleft()
                if u not in side["done"]:
                    return u
            while side["heap"]:
                _, _, u = heapq.heappop(side["heap"])
                if u not in side["done"]:
                    return u
        else:
            while side["heap"]:
                _, _, u = heapq.heappop(side["heap"])
                if u not in side["done"]:
                    return u
            while side["fifo"]:
                u = side["fifo"].popleft()
                if u not in side["done"]:
                    return u
        return None

    def expand(side, other, u):
        nonlocal total, seq
        side["done"].add(u)
        depth = side["depth"][u]
        if depth >= bounds.max_steps:
            side["complete"] = False
            return None
        for pos in redexes(u):
            v = step(u, pos)
            if v.size > bounds.max_term_size:
                side["complete"] = False
                continue
            if v in side["seen"]:
                continue
            if total >= bounds.max_nodes:
                side["complete"] = False
                return None
            side["seen"][v] = (u, pos)
            side["depth"][v] = depth + 1
            total += 1
            side["fifo"].append(v)
            heapq.heappush(side["heap"], (v.size, seq, v))
            seq += 1
            if v in other["seen"]:
                return v
        return None

    tick = 0
    while total < bounds.max_nodes:
        progressed = False
        for i in (0, 1):
            side, other = sides[i], sides[1 - i]
            u = next_pending(side, tick)
            if u is None:
                continue
            progressed = True
            meet = expand(side, other, u)
            if meet is not None:
                return Joined(
                    meet,
                    _trace(sides[0]["seen"], meet),
                    _trace(sides[1]["seen"], meet),
                )
            if total >= bounds.max_nodes:
                break
        tick += 1
        if not progressed:
            break

    left, right = sides

    def is_closed(side):
        return side["complete"] and len(side["done"]) == len(side["seen"])

    return NotJoinedWithin(
        bounds=bounds,
        explored_left=len(left["seen"]),
        explored_right=len(right["seen"]),
        closed_left=is_closed(left),
        closed_right=is_closed(right),
    )


def verdict_to_json(v) -> dict:
    if isinstance(v, Joined):
        return {
            "kind": v.kind,
            "witness": show(v.witness),
            "steps_left": [format_position(p) for p in v.left_path],
            "steps_right": [format_position(p) for p in v.right_path],
        }
    if isinstance(v, RefutedDistinctNormalForms):
        return {
            "kind": v.kind,
            "nf_left": show(v.nf_left),
            "nf_right": show(v.nf_right),
        }
    return {
        "kind": v.kind,
        "bounds": v.bounds.to_json(),
        "explored_left": v.explored_left,
        "explored_right": v.explored_right,
        "closed_left": v.closed_left,
        "closed_right": v.closed_right,
    }
