"""Generator vectors: composition, classification probes, and fixed points.

A generator is a finite vector of terms G = (G_0, ..., G_n) intended to map
fixed point combinators to fixed point combinators by application.  The four
classification probes measure, for some modulus k, what happens to a fresh
variable z inside the expansion G_0^k(z) G_1 ... G_n: erased up to conversion
(constant), erased up to Bohm tree (weakly constant), or the expansion itself
behaving as a combinator (compact / weakly compact).  Accretive generators
are the ones that are not weakly compact; they consume every unfolding stage
of their input.

All probes return three-valued statuses.  Search exhaustion is never
converted into a negative claim; only distinct normal forms or a non-bottom
approximant mismatch refute anything.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import boehm, fpc, reduction
from .boehm import AbsentUpTo, Present, occurs_in_approx
from .combinators import iterate, named, theta_param
from .fpc import Refuted, Unknown, Verified, is_fpc_bounded, is_wfpc_bounded, unfold_wfpc
from .reduction import (
    Bounds,
    DEFAULT_BOUNDS,
    Joined,
    NotJoinedWithin,
    RefutedDistinctNormalForms,
    join_bounded,
)
from .term import App, Free, Lam, Term, abstract, app, fresh_name, lam, show, substitute


@dataclass(frozen=True)
class Generator:
    """A vector of terms acting on combinators by left-nested application."""

    components: tuple
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        if not isinstance(other, Generator):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    @property
    def is_trivial(self):
        return not self.components

    def free_names(self) -> frozenset:
        out: frozenset = frozenset()
        for c in self.components:
            out |= c.fvs
        return out

    def __repr__(self):
        inner = "; ".join(show(c) for c in self.components)
        return f"[{inner}]"


def generator(*components: Term, provenance: str = "") -> Generator:
    return Generator(tuple(components), provenance)


def trivial() -> Generator:
    return Generator(())


def apply_generator(y: Term, g: Generator) -> Term:
    """Left-nested application y G_0 ... G_n; the trivial vector is identity."""
    return app(y, *g.components)


def compose(g: Generator, h: Generator) -> Generator:
    """Concatenation; associative with the trivial vector as identity."""
    return Generator(g.components + h.components)


def expansion(g: Generator, k: int, z: str) -> Term:
    """The term G_0^k(z) G_1 ... G_n."""
    if g.is_trivial:
        raise ValueError("expansion of the trivial generator is undefined")
    head = iterate(g[0], k, Free(z))
    return app(head, *g.components[1:])


def delta_expansion(g: Generator, k: int, z: str) -> Term:
    """The term delta^k(z) G_0 ... G_n, with delta = \\y x. x (y x)."""
    return apply_generator(iterate(named("DELTA"), k, Free(z)), g)


# ---------------------------------------------------------------------------
# Probe statuses

@dataclass
class ProbeStatus:
    kind: str                    # verified | evidence | refuted_up_to | unknown
    k: int | None = None
    depth: int | None = None
    witness: object = None
    per_k: dict = field(default_factory=dict)   # k -> "pos" | "neg" | "unknown"
    note: str = ""

    @property
    def positive(self):
        return self.kind in ("verified", "evidence")

    def to_json(self):
        out = {"status": self.kind}
        if self.k is not None:
            out["k"] = self.k
        if self.depth is not None:
            out["depth"] = self.depth
        if isinstance(self.witness, Term):
            out["witness"] = show(self.witness)
        if self.per_k:
            out["per_k"] = {str(k): v for k, v in self.per_k.items()}
        if self.note:
            out["note"] = self.note
        return out


def _fresh_probe_names(g: Generator):
    avoid = g.free_names()
    z = fresh_name("z", avoid)
    x = fresh_name("x", avoid | {z})
    return z, x


def probe_constant(g: Generator, k_max: int = 3, bounds: Bounds = DEFAULT_BOUNDS) -> ProbeStatus:
    """Look for a reduct of the expansion that no longer mentions z.

    A hit is a definitive constancy witness at that k (free variables only
    shrink under reduction).  No hit stays Unknown: erasure up to conversion
    is semi-decidable and exhaustion proves nothing.
    """
    z, _ = _fresh_probe_names(g)
    per_k = {}
    for k in range(k_max + 1):
        graph = reduction.reduct_set(expansion(g, k, z), bounds)
        hit = next((t for t in graph.nodes if z not in t.fvs), None)
        if hit is not None:
            per_k[k] = "pos"
            return ProbeStatus("verified", k=k, witness=hit, per_k=per_k,
                               note="found a reduct free of the probe variable")
        per_k[k] = "unknown"
    return ProbeStatus("unknown", per_k=per_k,
                       note=f"no probe-free reduct within bounds for k <= {k_max}")


def probe_weakly_constant(g: Generator, k_max: int = 3, depth: int = 6, fuel: int = 500) -> ProbeStatus:
    """Check whether z vanishes from the Bohm tree of the applied expansion.

    Present is definitive for that k; absence up to the depth is evidence.
    Every k refuted definitively aggregates to refuted_up_to.
    """
    z, x = _fresh_probe_names(g)
    per_k = {}
    for k in range(k_max + 1):
        t = App(expansion(g, k, z), Free(x))
        r = occurs_in_approx(z, t, depth, fuel)
        if isinstance(r, AbsentUpTo):
            per_k[k] = "pos"
            return ProbeStatus("evidence", k=k, depth=depth, per_k=per_k,
                               note=f"probe variable absent up to depth {depth}")
        per_k[k] = "neg"
    return ProbeStatus("refuted_up_to", k=k_max, depth=depth, per_k=per_k,
                       note="probe variable present in the tree for every k")


def probe_compact(g: Generator, k_max: int = 3, bounds: Bounds = DEFAULT_BOUNDS) -> ProbeStatus:
    """Check whether some expansion is itself a bounded-verified fpc.

    Distinct-normal-form refutations are forwarded per k; when every k is
    refuted that way the aggregate is refuted_up_to, otherwise Unknown.
    """
    z, _ = _fresh_probe_names(g)
    per_k = {}
    for k in range(k_max + 1):
        v = is_fpc_bounded(expansion(g, k, z), bounds)
        if isinstance(v, Verified):
            per_k[k] = "pos"
            return ProbeStatus("verified", k=k, witness=expansion(g, k, z), per_k=per_k,
                               note="expansion joins its own unfolding")
        per_k[k] = "neg" if isinstance(v, Refuted) else "unknown"
    if per_k and all(v == "neg" for v in per_k.values()):
        return ProbeStatus("refuted_up_to", k=k_max, per_k=per_k,
                           note="every expansion has a distinct-normal-form refutation")
    return ProbeStatus("unknown", per_k=per_k,
                       note=f"no expansion verified as fpc for k <= {k_max}")


def probe_weakly_compact(g: Generator, k_max: int = 3, depth: int = 6, fuel: int = 500) -> ProbeStatus:
    """Check whether some expansion is a bounded-verified weak fpc."""
    z, _ = _fresh_probe_names(g)
    per_k = {}
    for k in range(k_max + 1):
        v = is_wfpc_bounded(expansion(g, k, z), depth, fuel)
        if isinstance(v, Verified):
            per_k[k] = "pos"
            return ProbeStatus("verified", k=k, depth=depth, witness=expansion(g, k, z),
                               per_k=per_k,
                               note=f"expansion has the spine tree up to depth {depth}")
        per_k[k] = "neg" if isinstance(v, Refuted) else "unknown"
    if per_k and all(v == "neg" for v in per_k.values()):
        return ProbeStatus("refuted_up_to", k=k_max, depth=depth, per_k=per_k,
                           note="every expansion has an approximant mismatch")
    return ProbeStatus("unknown", per_k=per_k, depth=depth,
                       note=f"no expansion verified as weak fpc for k <= {k_max}")


def probe_accretive(g: Generator, k_max: int = 3, depth: int = 6, fuel: int = 500,
                    weak_compact: ProbeStatus | None = None,
                    constant: ProbeStatus | None = None,
                    compact: ProbeStatus | None = None) -> ProbeStatus:
    """Check that z survives in the tree of delta^k(z) G x for every k <= k_max.

    Presence at every tested k is evidence of accretivity (the property
    quantifies over all k, so it is never verified outright).  Established
    weak compactness refutes accretivity: the two are complementary by
    definition.
    """
    for other in (constant, compact, weak_compact):
        if other is not None and other.kind == "verified":
            return ProbeStatus("refuted_up_to", k=other.k,
                               note="generator is weakly compact, hence not accretive")
    z, x = _fresh_probe_names(g)
    per_k = {}
    for k in range(k_max + 1):
        t = App(delta_expansion(g, k, z), Free(x))
        r = occurs_in_approx(z, t, depth, fuel)
        per_k[k] = "pos" if isinstance(r, Present) else "unknown"
    if all(v == "pos" for v in per_k.values()):
        return ProbeStatus("evidence", k=k_max, depth=depth, per_k=per_k,
                           note=f"probe variable present for every k <= {k_max}")
    return ProbeStatus("unknown", per_k=per_k, depth=depth,
                       note="probe variable unseen at some k; larger depth may decide")


# ---------------------------------------------------------------------------
# Aggregate classification

CLASS_NAMES = ("constant", "weakly_constant", "compact", "weakly_compact", "accretive")


@dataclass
class ClassificationReport:
    generator: Generator
    k_max: int
    depth: int
    fuel: int
    bounds: Bounds
    classes: dict

    def status(self, name: str) -> ProbeStatus:
        return self.classes[name]

    def to_json(self):
        return {
            "generator": [show(c) for c in self.generator.components],
            "k_max": self.k_max,
            "depth": self.depth,
            "fuel": self.fuel,
            "bounds": self.bounds.to_json(),
            "classes": {name: st.to_json() for name, st in self.classes.items()},
            "note": "bounded verdicts: absence and agreement are evidence, not proof",
        }


class CoherenceError(AssertionError):
    """A probe pair produced logically incompatible definitive statuses."""


def _check_coherence(classes: dict):
    wcon = classes["weakly_constant"]
    wcom = classes["weakly_compact"]
    # weak constancy and weak compactness coincide; evidence at modulus k on
    # one side may not meet a definitive refutation covering the same k
    for a, b in ((wcon, wcom), (wcom, wcon)):
        if a.positive and a.k is not None and b.kind == "refuted_up_to":
            if b.per_k.get(a.k) == "neg":
                raise CoherenceError(
                    f"weak constancy and weak compactness disagree at k={a.k}"
                )
    acc = classes["accretive"]
    if acc.positive and wcom.kind == "verified" and wcom.k is not None:
        if acc.per_k.get(wcom.k) == "pos":
            raise CoherenceError(
                f"accretive evidence and weak compactness both claimed at k={wcom.k}"
            )


def classify(g: Generator, k_max: int = 3, depth: int = 6, fuel: int = 500,
             bounds: Bounds = DEFAULT_BOUNDS) -> ClassificationReport:
    """Run all five probes and cross-check the aggregate for coherence."""
    if g.is_trivial:
        raise ValueError("the trivial generator is not classified")
    constant = probe_constant(g, k_max, bounds)
    weakly_constant = probe_weakly_constant(g, k_max, depth, fuel)
    compact = probe_compact(g, k_max, bounds)
    weakly_compact = probe_weakly_compact(g, k_max, depth, fuel)
    accretive = probe_accretive(g, k_max, depth, fuel,
                                weak_compact=weakly_compact,
                                constant=constant,
                                compact=compact)
    classes = {
        "constant": constant,
        "weakly_constant": weakly_constant,
        "compact": compact,
        "weakly_compact": weakly_compact,
        "accretive": accretive,
    }
    _check_coherence(classes)
    return ClassificationReport(g, k_max, depth, fuel, bounds, classes)


# ---------------------------------------------------------------------------
# Fixed points of (weakly) compact generators

class NoModulusError(ValueError):
    """Neither compactness probe produced a modulus to build from."""


class ConstructionError(ValueError):
    pass


@dataclass
class FixedPointCertificate:
    """The data of a fixed point construction for a (weakly) compact vector.

    With modulus k and F_0[z] = G_0^k(z) G_1 ... G_n, the unfolding stages
    satisfy F_0[z] x = x^k(F_k[z] x).  Then Y = THETA (\\y. F_k[y G_0])
    reduces to F_k[Y G_0], and X = F_0[Y G_0] satisfies X G = X.  The join
    evidence replays that computation within the stated bounds; an incomplete
    certificate is reported as such, never silently accepted.
    """

    generator: Generator
    path: str                # "compact" or "weak"
    k: int
    hole: str                # fresh variable standing in the holes of F_0, F_k
    f0: Term
    fk: Term
    y: Term
    x: Term
    evidence: object         # join verdict for (X G, X)
    complete: bool
    note: str = ""

    def to_json(self):
        return {
            "generator": [show(c) for c in self.generator.components],
            "path": self.path,
            "k": self.k,
            "f0": show(self.f0),
            "fk": show(self.fk),
            "fixed_point": show(self.x),
            "underlying_fpc": show(self.y),
            "evidence": reduction.verdict_to_json(self.evidence),
            "complete": self.complete,
            "note": self.note,
        }


def construct_fixed_point(g: Generator, bounds: Bounds = DEFAULT_BOUNDS,
                          k_max: int = 3, depth: int = 6, fuel: int = 500,
                          probe_bounds: Bounds | None = None) -> FixedPointCertificate:
    """Build a term X with X G_0 ... G_n convertible to X.

    The compact path reuses F_0 for every stage; the weak path extracts
    F_1 ... F_k by head-normalizing and re-abstracting with the hole
    variable inert.  The certificate's join evidence is checked here.
    """
    if g.is_trivial:
        raise ValueError("the trivial generator fixes everything already")
    pb = probe_bounds or bounds
    z, _ = _fresh_probe_names(g)

    c = probe_compact(g, k_max, pb)
    if c.kind == "verified":
        path, k = "compact", c.k
        f0 = expansion(g, k, z)
        fk = f0
    else:
        w = probe_weakly_compact(g, k_max, depth, fuel)
        if w.kind != "verified":
            raise NoModulusError("no compactness modulus found within the probe bounds")
        path, k = "weak", w.k
        f0 = expansion(g, k, z)
        fk = f0
        for _ in range(k):
            fk = unfold_wfpc(fk, fuel)

    g0 = g[0]
    yname = fresh_name("y", fk.fvs | g0.fvs | {z})
    y = App(
        named("THETA"),
        Lam(abstract(substitute(fk, z, App(Free(yname), g0)), yname), hint="y"),
    )
    x = substitute(f0, z, App(y, g0))
    ev = join_bounded(apply_generator(x, g), x, bounds)
    complete = isinstance(ev, Joined)
    return FixedPointCertificate(
        generator=g, path=path, k=k, hole=z, f0=f0, fk=fk, y=y, x=x,
        evidence=ev, complete=complete,
        note="" if complete else "join evidence not found within bounds",
    )


# ---------------------------------------------------------------------------
# Sample batteries and evidence reports

_SAMPLES_CACHE: dict = {}


def default_samples(include_constructed: bool = True):
    """The standard fpc battery: Turing, Curry, two parameterized Turing
    instances, and one constructed fixed point."""
    key = bool(include_constructed)
    if key not in _SAMPLES_CACHE:
        samples = [
            ("THETA", named("THETA")),
            ("Y", named("Y")),
            ("THETA_I", theta_param(named("I"))),
            ("THETA_K", theta_param(named("K"))),
        ]
        if include_constructed:
            cert = construct_fixed_point(generator(lam("y", theta_param(Free("y")))))
            if cert.complete:
                samples.append(("CONSTRUCTED", cert.x))
        _SAMPLES_CACHE[key] = samples
    return _SAMPLES_CACHE[key]


@dataclass
class SampleCheck:
    sample: str
    verdict: object

    def to_json(self):
        if isinstance(self.verdict, (Joined, RefutedDistinctNormalForms, NotJoinedWithin)):
            v = reduction.verdict_to_json(self.verdict)
        else:
            v = fpc.verdict_to_json(self.verdict)
        return {"sample": self.sample, "verdict": v}


@dataclass
class FgvEvidenceReport:
    generator: Generator
    fpc_checks: list
    wfpc_checks: list
    wfgv_evidence: bool      # some sample output verified as a weak fpc
    fgv_evidence: bool       # every sample output verified as an fpc

    def to_json(self):
        return {
            "generator": [show(c) for c in self.generator.components],
            "fpc_checks": [c.to_json() for c in self.fpc_checks],
            "wfpc_checks": [c.to_json() for c in self.wfpc_checks],
            "wfgv_evidence": self.wfgv_evidence,
            "fgv_evidence": self.fgv_evidence,
            "note": "one weak-verified sample suffices for wfgv evidence; "
                    "the fgv reading is universally quantified and never definitive",
        }


def is_fgv_evidence(g: Generator, samples=None, bounds: Bounds = DEFAULT_BOUNDS,
                    depth: int = 6, fuel: int = 500) -> FgvEvidenceReport:
    """Apply sample fpcs to the generator and check the outputs."""
    if samples is None:
        samples = default_samples()
    fpc_checks, wfpc_checks = [], []
    for name, y in samples:
        out = apply_generator(y, g)
        fpc_checks.append(SampleCheck(name, is_fpc_bounded(out, bounds)))
        wfpc_checks.append(SampleCheck(name, is_wfpc_bounded(out, depth, fuel)))
    return FgvEvidenceReport(
        generator=g,
        fpc_checks=fpc_checks,
        wfpc_checks=wfpc_checks,
        wfgv_evidence=any(isinstance(c.verdict, Verified) for c in wfpc_checks),
        fgv_evidence=all(isinstance(c.verdict, Verified) for c in fpc_checks),
    )


@dataclass
class ExtEqReport:
    left: Generator
    right: Generator
    checks: list
    all_joined: bool
    refuted: bool            # some sample separated the two definitively

    def to_json(self):
        return {
            "left": [show(c) for c in self.left.components],
            "right": [show(c) for c in self.right.components],
            "checks": [c.to_json() for c in self.checks],
            "all_joined": self.all_joined,
            "refuted": self.refuted,
            "note": "extensional equality quantifies over every fpc; "
                    "sample agreement is one-sided evidence",
        }


def ext_eq_bounded(g: Generator, h: Generator, samples=None,
                   bounds: Bounds = DEFAULT_BOUNDS) -> ExtEqReport:
    """Compare Y G with Y H over the sample battery."""
    if samples is None:
        samples = default_samples()
    checks = []
    refuted = False
    all_joined = True
    for name, y in samples:
        v = join_bounded(apply_generator(y, g), apply_generator(y, h), bounds)
        checks.append(SampleCheck(name, v))
        if isinstance(v, RefutedDistinctNormalForms):
            refuted = True
        if not isinstance(v, Joined):
            all_joined = False
    return ExtEqReport(g, h, checks, all_joined, refuted)


# ---------------------------------------------------------------------------
# Absorbing vectors

def fixed_point_generator(cert: FixedPointCertificate) -> Generator:
    """A two-component vector F whose outputs are fixed points of cert's G.

    F = (A, B) with A = \\y b. b (y delta) and
    B = \\y. F_0[y (\\u. F_k[u G_0]) G_0].  Composing G after F leaves the
    sample outputs unchanged: Y F G joins Y F.
    """
    if not cert.complete:
        raise ConstructionError("certificate is incomplete; refusing to build")
    z = cert.hole
    g0 = cert.generator[0]

    a = lam("y", lam("b", App(Free("b"), App(Free("y"), named("DELTA")))))

    u = fresh_name("u", cert.fk.fvs | g0.fvs)
    inner = Lam(abstract(substitute(cert.fk, z, App(Free(u), g0)), u), hint="u")
    yv = fresh_name("y", cert.f0.fvs | inner.fvs | g0.fvs)
    b = Lam(
        abstract(substitute(cert.f0, z, app(Free(yv), inner, g0)), yv),
        hint="y",
    )
    return Generator((a, b), provenance=f"fixed-point generator for {cert.generator!r}")


def verify_absorption(front: Generator, back: Generator, samples=None,
                      bounds: Bounds = DEFAULT_BOUNDS, absorbed: str = "front") -> ExtEqReport:
    """Join evidence that composing the two vectors reproduces one of them.

    absorbed="front": checks Y front back against Y back (the front vector is
    absorbed).  absorbed="back": checks Y front back against Y front.
    """
    if samples is None:
        samples = default_samples()
    combined = compose(front, back)
    reference = back if absorbed == "front" else front
    checks = []
    refuted = False
    all_joined = True
    for name, y in samples:
        v = join_bounded(apply_generator(y, combined), apply_generator(y, reference), bounds)
        checks.append(SampleCheck(name, v))
        if isinstance(v, RefutedDistinctNormalForms):
            refuted = True
        if not isinstance(v, Joined):
            all_joined = False
    return ExtEqReport(combined, reference, checks, all_joined, refuted)


def tail_absorber(f: Generator, fuel: int = 500) -> Generator:
    """A compact vector G that absorbs a leading F: Y F G joins Y G.

    Needs at least two components in F and a solvable head component whose
    head variable is not its first binder.  The construction forwards the
    incoming combinator through a bare pass-through argument of the head when
    one exists; otherwise a closed placeholder takes its place (the chain
    still joins, and the result is compact either way).
    """
    n = len(f) - 1
    if n < 1:
        raise ValueError("need a vector of at least two components")
    f0 = f[0]
    r = boehm.head_normal_form(f0, fuel)
    if isinstance(r, boehm.Unsolved):
        raise ConstructionError("head component is not solvable within fuel")
    binders = list(r.binders)
    if not binders:
        raise ConstructionError("head component binds nothing; cannot route the vector")
    ell = len(binders) - 1
    if r.head == binders[0]:
        raise ConstructionError("head variable is the first binder; outputs would be unsolvable")
    if r.head not in binders:
        raise ConstructionError("head variable is free; the construction needs a bound head")
    m = binders.index(r.head)
    if m > n + 1:
        raise ConstructionError("head binder lands outside the vector")
    if ell > n:
        raise ConstructionError("head component consumes more arguments than the vector provides")

    avoid = f.free_names()
    p_names = [fresh_name(f"p{j}", avoid) for j in range(len(r.args))]
    g_names = [fresh_name(f"g{i}", avoid) for i in range(ell + 1, n + 2)]

    bare_j = next(
        (j for j, arg in enumerate(r.args)
         if isinstance(arg, Free) and arg.name == binders[0]),
        None,
    )
    if bare_j is not None:
        passthrough: Term = Free(p_names[bare_j])
        note = "pass-through argument found"
    else:
        passthrough = named("I")
        note = "no bare pass-through argument; closed placeholder used"

    subscript = App(Free(g_names[-1]), app(f0, passthrough, *f.components[1:]))
    gm: Term = theta_param(subscript)
    for nm in reversed(p_names + g_names):
        gm = Lam(abstract(gm, nm), hint="p")

    # tail component: T y = T (y F), realized through THETA
    gname = fresh_name("g", avoid)
    yname = fresh_name("y", avoid | {gname})
    tail = App(
        named("THETA"),
        Lam(
            abstract(
                Lam(
                    abstract(App(Free(gname), apply_generator(Free(yname), f)), yname),
                    hint="y",
                ),
                gname,
            ),
            hint="g",
        ),
    )

    comps = [f0]
    for i in range(1, n + 2):
        if i == m:
            comps.append(gm)
        elif i == n + 1:
            comps.append(tail)
        else:
            comps.append(lam("p", Free("p")))
    return Generator(tuple(comps), provenance=f"tail absorber ({note})")
