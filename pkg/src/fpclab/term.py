"""Untyped lambda terms over a nameless canonical core.

Bound variables are de Bruijn indices and free variables are plain names, so
structural equality on the canonical form *is* alpha equivalence and no
renaming is ever needed during substitution.  Binder name hints ride along on
abstractions for printing only; they take no part in equality or hashing.

Machine-generated fresh names carry a combining-circumflex marker that the
surface grammar cannot lex, so probe variables can never collide with
anything a user writes.
"""

from __future__ import annotations

import sys

sys.setrecursionlimit(100_000)

# Appended to machine-chosen names.  Not in the identifier alphabet, so the
# parser rejects it and user input can never produce a reserved name.
RESERVED_MARK = "̂"

_EMPTY: frozenset = frozenset()


class Term:
    """Immutable lambda term.  Instances are freely shared between results."""

    __slots__ = ("hash", "size", "fvs", "max_idx")

    hash: int
    size: int
    fvs: frozenset
    max_idx: int  # 1 + largest dangling index; 0 for index-closed terms

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return _structurally_equal(self, other)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return self.hash

    def __str__(self):
        return show(self)

    def __repr__(self):
        return f"<term {show(self)}>"


class Var(Term):
    """Bound variable occurrence, as distance to its binder."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        if index < 0:
            raise ValueError("negative de Bruijn index")
        self.index = index
        self.hash = hash((0x1D, index))
        self.size = 1
        self.fvs = _EMPTY
        self.max_idx = index + 1


class Free(Term):
    """Free variable occurrence, by name."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.hash = hash((0x2E, name))
        self.size = 1
        self.fvs = frozenset((name,))
        self.max_idx = 0


class Lam(Term):
    """Abstraction.  `hint` is the preferred binder name for printing."""

    __slots__ = ("body", "hint")

    def __init__(self, body: Term, hint: str = "x"):
        self.body = body
        self.hint = hint
        self.hash = hash((0x3F, body.hash))
        self.size = 1 + body.size
        self.fvs = body.fvs
        self.max_idx = body.max_idx - 1 if body.max_idx > 0 else 0


class App(Term):
    """Application."""

    __slots__ = ("fn", "arg")

    def __init__(self, fn: Term, arg: Term):
        self.fn = fn
        self.arg = arg
        self.hash = hash((0x4A, fn.hash, arg.hash))
        self.size = 1 + fn.size + arg.size
        if not fn.fvs:
            self.fvs = arg.fvs
        elif not arg.fvs:
            self.fvs = fn.fvs
        else:
            self.fvs = fn.fvs | arg.fvs
        self.max_idx = fn.max_idx if fn.max_idx >= arg.max_idx else arg.max_idx


def _structurally_equal(a: Term, b: Term) -> bool:
    # Hash mismatch short-circuits; shared subterms compare by identity.
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if x.hash != y.hash:
            return False
        tx = type(x)
        if tx is not type(y):
            return False
        if tx is Var:
            if x.index != y.index:
                return False
        elif tx is Free:
            if x.name != y.name:
                return False
        elif tx is Lam:
            stack.append((x.body, y.body))
        else:
            stack.append((x.fn, y.fn))
            stack.append((x.arg, y.arg))
    return True


def alpha_eq(a: Term, b: Term) -> bool:
    """True iff the canonical forms coincide (alpha equivalence)."""
    return _structurally_equal(a, b)


# ---------------------------------------------------------------------------
# Construction helpers

def lam(name: str, body: Term) -> Term:
    """Bind every free occurrence of `name` in `body` under a new abstraction."""
    return Lam(abstract(body, name), hint=name)


def lams(names, body: Term) -> Term:
    for n in reversed(list(names)):
        body = lam(n, body)
    return body


def app(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


def spine(t: Term):
    """Decompose `t` into its application head and argument list."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def abstract(t: Term, name: str) -> Term:
    """Turn free occurrences of `name` into references to a binder just outside `t`."""
    def go(u: Term, d: int) -> Term:
        if name not in u.fvs:
            return u
        if isinstance(u, Free):
            return Var(d)
        if isinstance(u, Lam):
            return Lam(go(u.body, d + 1), u.hint)
        return App(go(u.fn, d), go(u.arg, d))
    return go(t, 0)


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add `by` to every dangling index of `t` at or above `cutoff`."""
    if by == 0 or t.max_idx <= cutoff:
        return t
    memo: dict = {}

    def go(u: Term, c: int) -> Term:
        if u.max_idx <= c:
            return u
        key = (id(u), c)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(u, Var):
            res = Var(u.index + by)  # u.max_idx > c implies u.index >= c
        elif isinstance(u, Lam):
            res = Lam(go(u.body, c + 1), u.hint)
        else:
            res = App(go(u.fn, c), go(u.arg, c))
        memo[key] = res
        return res

    return go(t, cutoff)


def instantiate(body: Term, arg: Term) -> Term:
    """Replace the variable bound by the innermost enclosing binder with `arg`.

    `body` is the body of an abstraction being eliminated.  Free names never
    capture (binders are nameless), and dangling indices of `arg` are shifted
    across the binders they cross, so contraction is sound at any depth.
    """
    memo: dict = {}
    shifted = {0: arg}

    def arg_at(d: int) -> Term:
        s = shifted.get(d)
        if s is None:
            s = shift(arg, d)
            shifted[d] = s
        return s

    def go(u: Term, d: int) -> Term:
        if u.max_idx <= d:
            return u
        key = (id(u), d)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(u, Var):
            # u.max_idx > d, so u.index >= d here
            res = arg_at(d) if u.index == d else Var(u.index - 1)
        elif isinstance(u, Lam):
            res = Lam(go(u.body, d + 1), u.hint)
        else:
            res = App(go(u.fn, d), go(u.arg, d))
        memo[key] = res
        return res

    return go(body, 0)


def substitute(t: Term, name: str, s: Term) -> Term:
    """Capture-avoiding substitution of `s` for the free variable `name`."""
    if s.max_idx != 0:
        raise ValueError("substituted term has dangling indices")
    memo: dict = {}

    def go(u: Term) -> Term:
        if name not in u.fvs:
            return u
        hit = memo.get(id(u))
        if hit is not None:
            return hit
        if isinstance(u, Free):
            res = s
        elif isinstance(u, Lam):
            res = Lam(go(u.body), u.hint)
        else:
            res = App(go(u.fn), go(u.arg))
        memo[id(u)] = res
        return res

    return go(t)


def free_vars(t: Term) -> frozenset:
    """The set of free variable names of `t`."""
    return t.fvs


def is_closed(t: Term) -> bool:
    return not t.fvs


def fresh_name(base: str, avoid=()) -> str:
    """A reserved name built from `base` that is not in `avoid`."""
    avoid = set(avoid)
    cand = base + RESERVED_MARK
    n = 1
    while cand in avoid:
        cand = f"{base}{RESERVED_MARK}{n}"
        n += 1
    return cand


def is_reserved(name: str) -> bool:
    return RESERVED_MARK in name


# ---------------------------------------------------------------------------
# Printing

_DEFAULT_HINTS = ("x", "y", "z", "u", "v", "w", "p", "q", "r", "s", "t")


def _pick_name(hint: str, avoid: set) -> str:
    cand = hint.replace(RESERVED_MARK, "") or "x"
    while cand in avoid:
        cand += "'"
    return cand


def show(t: Term) -> str:
    """Deterministic rendering with minimal parentheses.

    Binder names come from hints (primed until they clash with nothing in
    scope), so `parse(show(t))` is alpha-equal to `t` whenever the free names
    of `t` are grammar-legal.
    """
    def go(u: Term, env: list, pos: str) -> str:
        if isinstance(u, Var):
            return env[-1 - u.index]
        if isinstance(u, Free):
            return u.name
        if isinstance(u, Lam):
            binders = []
            body = u
            inner_env = list(env)
            while isinstance(body, Lam):
                avoid = set(body.body.fvs) | set(inner_env) | set(binders)
                name = _pick_name(body.hint, avoid)
                binders.append(name)
                inner_env.append(name)
                body = body.body
            s = "\\" + " ".join(binders) + ". " + go(body, inner_env, "top")
            return "(" + s + ")" if pos != "top" else s
        s = go(u.fn, env, "fun") + " " + go(u.arg, env, "arg")
        return "(" + s + ")" if pos == "arg" else s

    return go(t, [], "top")


# ---------------------------------------------------------------------------
# Parsing
#
#   term := lam | app          lam := ('\' | 'λ') ident+ '.' term
#   app  := atom+  (left assoc)   atom := ident | '(' term ')'
#   ident := [A-Za-z_][A-Za-z0-9_']*      '#' starts a comment

class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789'")


def _tokenize(text: str):
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c in ("\\", "λ"):
            tokens.append(("lambda", c, line, col))
            i += 1
            col += 1
            continue
        if c == ".":
            tokens.append(("dot", c, line, col))
            i += 1
            col += 1
            continue
        if c == "(":
            tokens.append(("lparen", c, line, col))
            i += 1
            col += 1
            continue
        if c == ")":
            tokens.append(("rparen", c, line, col))
            i += 1
            col += 1
            continue
        if c in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            tokens.append(("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    tokens.append(("eof", "", line, col))
    return tokens


def parse(text: str) -> Term:
    """Parse a term; applications associate left, abstraction bodies extend right."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take(kind):
        nonlocal pos
        tok = tokens[pos]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2], tok[3])
        pos += 1
        return tok

    def parse_term(env: dict, depth: int) -> Term:
        kind, _, line, col = peek()
        if kind == "lambda":
            take("lambda")
            names = []
            while peek()[0] == "ident":
                names.append(take("ident")[1])
            if not names:
                tok = peek()
                raise ParseError("expected binder name", tok[2], tok[3])
            take("dot")
            inner = dict(env)
            for k, nm in enumerate(names):
                inner[nm] = depth + k
            body = parse_term(inner, depth + len(names))
            for k in range(len(names) - 1, -1, -1):
                body = Lam(body, hint=names[k])
            return body
        return parse_app(env, depth)

    def parse_app(env: dict, depth: int) -> Term:
        t = parse_atom(env, depth)
        while peek()[0] in ("ident", "lparen"):
            t = App(t, parse_atom(env, depth))
        return t

    def parse_atom(env: dict, depth: int) -> Term:
        kind, val, line, col = peek()
        if kind == "ident":
            take("ident")
            if val in env:
                return Var(depth - 1 - env[val])
            return Free(val)
        if kind == "lparen":
            take("lparen")
            # lambdas are allowed inside parentheses
            t = parse_term(env, depth)
            take("rparen")
            return t
        raise ParseError(f"expected a term, found {val!r}", line, col)

    first = peek()
    if first[0] == "eof":
        raise ParseError("empty input", first[2], first[3])
    t = parse_term({}, 0)
    tok = peek()
    if tok[0] != "eof":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2], tok[3])
    return t
