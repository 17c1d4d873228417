"""Command line front end.

Exit codes follow the verdict trichotomy: 0 for success, verification, or
evidence; 1 for a definitive refutation; 2 for unknown within bounds; 3 for
usage errors.  Every subcommand accepts --json for machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import boehm, fpc, lab, reduction
from .combinators import named, names
from .generators import (
    Generator,
    classify,
    construct_fixed_point,
    ext_eq_bounded,
    NoModulusError,
)
from .reduction import Bounds, DEFAULT_BOUNDS, Joined, NotJoinedWithin, RefutedDistinctNormalForms
from .term import ParseError, Term, alpha_eq, free_vars, parse, show, substitute

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def resolve_names(t: Term) -> Term:
    """Substitute library combinators for free variables written in upper
    case (THETA, DELTA, Y, K, ...); other free variables pass through."""
    for name in sorted(free_vars(t)):
        if not name.isupper() and not (name[:2] == "C_"):
            continue
        try:
            t = substitute(t, name, named(name))
        except KeyError:
            pass
    return t


def parse_term_arg(text: str) -> Term:
    return resolve_names(parse(text))


def parse_generator_arg(text: str) -> Generator:
    """Generator literal: a bracketed, semicolon-separated term list, e.g.
    "[\\y x. x (y x)]" or "[P; R]"; "[]" is the trivial generator."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise UsageError("generator literal must be bracketed, like [P; R]")
    inner = s[1:-1].strip()
    if not inner:
        return Generator(())
    return Generator(tuple(parse_term_arg(part) for part in inner.split(";")))


def bounds_from_args(args) -> Bounds:
    return Bounds(
        max_steps=args.fuel,
        max_nodes=args.max_nodes,
        max_term_size=args.max_size,
    )


def add_common(p: _Parser):
    p.add_argument("--fuel", type=int, default=DEFAULT_BOUNDS.max_steps,
                   help="reduction step budget")
    p.add_argument("--max-nodes", type=int, default=DEFAULT_BOUNDS.max_nodes,
                   help="search node budget")
    p.add_argument("--max-size", type=int, default=DEFAULT_BOUNDS.max_term_size,
                   help="term size cap during search")
    p.add_argument("--json", action="store_true", help="emit JSON")


def build_parser() -> _Parser:
    root = _Parser(prog="fpclab", description="fixed point combinator workbench")
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("term", parents=[], help="print a library combinator")
    p.add_argument("name")
    add_common(p)

    p = sub.add_parser("parse", help="parse and reprint a term")
    p.add_argument("text")
    add_common(p)

    p = sub.add_parser("reduce", help="reduce a term")
    p.add_argument("text")
    p.add_argument("--strategy", choices=["normal", "head"], default="normal")
    p.add_argument("--steps", type=int, default=None, help="step limit (defaults to --fuel)")
    p.add_argument("--trace", action="store_true", help="print each step")
    add_common(p)

    p = sub.add_parser("bt", help="print a Bohm tree approximant")
    p.add_argument("text")
    p.add_argument("--depth", type=int, default=6)
    add_common(p)

    p = sub.add_parser("fpc-check", help="bounded fixed point combinator check")
    p.add_argument("text")
    add_common(p)

    p = sub.add_parser("wfpc-check", help="bounded weak fpc check via tree shape")
    p.add_argument("text")
    p.add_argument("--depth", type=int, default=6)
    add_common(p)

    p = sub.add_parser("join", help="bounded common-reduct search for two terms")
    p.add_argument("left")
    p.add_argument("right")
    add_common(p)

    p = sub.add_parser("gen-classify", help="classify a generator vector")
    p.add_argument("generator")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--depth", type=int, default=6)
    add_common(p)

    p = sub.add_parser("gen-fix", help="construct a fixed point of a generator")
    p.add_argument("generator")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--depth", type=int, default=6)
    add_common(p)

    p = sub.add_parser("gen-ext-eq", help="bounded extensional equality of two generators")
    p.add_argument("left")
    p.add_argument("right")
    add_common(p)

    p = sub.add_parser("replay", help="re-run the bundled derivation replays")
    add_common(p)

    p = sub.add_parser("hunt", help="enumerate small closed terms for two-sided delta fixed points")
    p.add_argument("--size", type=int, required=True)
    add_common(p)

    p = sub.add_parser("graph", help="bounded reduct graph of a term")
    p.add_argument("text")
    p.add_argument("--dot", action="store_true", help="emit DOT (default)")
    add_common(p)

    return root


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def _verdict_exit(kind: str) -> int:
    if kind in ("verified", "evidence", "joined", "agree_prefix", "ok"):
        return EXIT_OK
    if kind in ("refuted", "refuted_up_to", "refuted_distinct_normal_forms", "disagree_at"):
        return EXIT_REFUTED
    return EXIT_UNKNOWN


def cli_dispatch(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return _run(args)
    except (ParseError, UsageError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def _run(args) -> int:
    cmd = args.command

    if cmd == "term":
        t = named(args.name)
        _emit(args, {"name": args.name, "term": show(t)}, show(t))
        return EXIT_OK

    if cmd == "parse":
        t = parse_term_arg(args.text)
        _emit(args, {"term": show(t), "free_vars": sorted(free_vars(t))}, show(t))
        return EXIT_OK

    if cmd == "reduce":
        t = parse_term_arg(args.text)
        bounds = bounds_from_args(args)
        limit = args.steps if args.steps is not None else bounds.max_steps
        if args.strategy == "head":
            trace = [t]
            cur = t
            for _ in range(limit):
                nxt = reduction.head_step(cur)
                if nxt is None:
                    break
                cur = nxt
                trace.append(cur)
            data = {"strategy": "head", "steps": len(trace) - 1,
                    "result": show(cur)}
            if args.trace:
                data["trace"] = [show(u) for u in trace]
                _emit(args, data, "\n".join(show(u) for u in trace))
            else:
                _emit(args, data, show(cur))
            return EXIT_OK
        r = reduction.normalize(t, Bounds(limit, bounds.max_nodes, bounds.max_term_size))
        if isinstance(r, reduction.NormalForm):
            _emit(args, {"strategy": "normal", "normal_form": show(r.term), "steps": r.steps},
                  show(r.term))
            return EXIT_OK
        _emit(args, {"strategy": "normal", "exhausted": True, "last": show(r.last),
                     "steps": r.steps}, f"no normal form within {r.steps} steps: {show(r.last)}")
        return EXIT_UNKNOWN

    if cmd == "bt":
        t = parse_term_arg(args.text)
        a = boehm.approximant(t, args.depth, args.fuel)
        _emit(args, {"term": show(t), "depth": args.depth,
                     "approximant": boehm.approx_to_json(a),
                     "rendered": boehm.render(a)},
              boehm.render(a))
        return EXIT_OK

    if cmd == "fpc-check":
        t = parse_term_arg(args.text)
        v = fpc.is_fpc_bounded(t, bounds_from_args(args))
        data = fpc.verdict_to_json(v)
        _emit(args, data, f"{data['kind']}: {data.get('detail', data.get('reason', ''))}")
        return _verdict_exit(data["kind"])

    if cmd == "wfpc-check":
        t = parse_term_arg(args.text)
        v = fpc.is_wfpc_bounded(t, args.depth, args.fuel)
        data = fpc.verdict_to_json(v)
        _emit(args, data, f"{data['kind']}: {data.get('detail', data.get('reason', ''))}")
        return _verdict_exit(data["kind"])

    if cmd == "join":
        a = parse_term_arg(args.left)
        b = parse_term_arg(args.right)
        v = reduction.join_bounded(a, b, bounds_from_args(args))
        data = reduction.verdict_to_json(v)
        if isinstance(v, Joined):
            _emit(args, data, f"joined: {show(v.witness)}")
        elif isinstance(v, RefutedDistinctNormalForms):
            _emit(args, data, f"refuted: {show(v.nf_left)} vs {show(v.nf_right)}")
        else:
            _emit(args, data, "not joined within bounds")
        return _verdict_exit(data["kind"])

    if cmd == "gen-classify":
        g = parse_generator_arg(args.generator)
        rep = classify(g, k_max=args.kmax, depth=args.depth, fuel=args.fuel,
                       bounds=bounds_from_args(args))
        data = rep.to_json()
        lines = [f"{name}: {st.kind}" + (f" (k={st.k})" if st.k is not None else "")
                 for name, st in rep.classes.items()]
        _emit(args, data, "\n".join(lines))
        kinds = {st.kind for st in rep.classes.values()}
        if "verified" in kinds or "evidence" in kinds:
            return EXIT_OK
        if kinds == {"refuted_up_to"}:
            return EXIT_REFUTED
        return EXIT_UNKNOWN

    if cmd == "gen-fix":
        g = parse_generator_arg(args.generator)
        try:
            cert = construct_fixed_point(g, bounds=bounds_from_args(args),
                                         k_max=args.kmax, depth=args.depth, fuel=args.fuel)
        except NoModulusError as e:
            _emit(args, {"error": str(e)}, f"no modulus: {e}")
            return EXIT_UNKNOWN
        data = cert.to_json()
        ok = "complete" if cert.complete else "incomplete"
        _emit(args, data, f"{ok} ({cert.path} path, k={cert.k}): {show(cert.x)}")
        return EXIT_OK if cert.complete else EXIT_UNKNOWN

    if cmd == "gen-ext-eq":
        g = parse_generator_arg(args.left)
        h = parse_generator_arg(args.right)
        rep = ext_eq_bounded(g, h, bounds=bounds_from_args(args))
        data = rep.to_json()
        if rep.refuted:
            _emit(args, data, "refuted: some sample separates the generators")
            return EXIT_REFUTED
        if rep.all_joined:
            _emit(args, data, "evidence: all samples joined")
            return EXIT_OK
        _emit(args, data, "unknown: some sample did not join within bounds")
        return EXIT_UNKNOWN

    if cmd == "replay":
        rep = lab.replay_all()
        data = rep.to_json()
        lines = [f"[{'ok' if r.ok else 'FAIL'}] {r.script}: {r.label} ({r.detail})"
                 for r in rep.results]
        _emit(args, data, "\n".join(lines))
        return EXIT_OK if rep.ok else EXIT_REFUTED

    if cmd == "hunt":
        rep = lab.hunt_double_fpc(args.size, bounds_from_args(args))
        data = rep.to_json()
        text = (f"scanned {rep.candidates_scanned} closed terms up to size {rep.size_max}: "
                f"{rep.fpc_verified} verified fpcs, {rep.refuted} refuted, "
                f"{rep.unknown} unknown, {len(rep.double_fpc_found)} double fixed points")
        _emit(args, data, text)
        return EXIT_OK

    if cmd == "graph":
        t = parse_term_arg(args.text)
        g = reduction.reduct_set(t, bounds_from_args(args))
        if args.json:
            data = {
                "nodes": [show(u) for u in g.nodes],
                "edges": [[src, reduction.format_position(pos), dst]
                          for src, pos, dst in g.edges],
                "closed": g.closed,
            }
            print(json.dumps(data, indent=2, ensure_ascii=False))
        else:
            print(g.to_dot())
        return EXIT_OK

    raise UsageError(f"unknown command {cmd!r}")


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
