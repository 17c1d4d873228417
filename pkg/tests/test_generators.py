import random

import pytest

from fpclab.combinators import named, pair, theta_param
from fpclab.fpc import Refuted, Verified, is_fpc_bounded
from fpclab.generators import (
    ClassificationReport,
    ConstructionError,
    Generator,
    NoModulusError,
    apply_generator,
    classify,
    compose,
    construct_fixed_point,
    delta_expansion,
    expansion,
    ext_eq_bounded,
    fixed_point_generator,
    generator,
    is_fgv_evidence,
    probe_accretive,
    probe_compact,
    probe_constant,
    probe_weakly_compact,
    probe_weakly_constant,
    tail_absorber,
    trivial,
    verify_absorption,
)
from fpclab.reduction import Bounds, Joined, NotJoinedWithin, join_bounded, reduct_set
from fpclab.term import App, Free, alpha_eq, app, free_vars, fresh_name, lam, parse, substitute

from helpers import random_term

PROBE = Bounds(max_steps=150, max_nodes=2_000, max_term_size=1_500)
JOIN = Bounds(max_steps=300, max_nodes=60_000, max_term_size=6_000)


def ktheta():
    return generator(App(named("K"), named("THETA")))


def ltheta():
    return generator(lam("y", theta_param(Free("y"))))


def gdelta():
    return generator(named("DELTA"))


def gpq():
    return generator(named("P"), named("Q"))


def gpr():
    return generator(named("P"), named("R"))


SAMPLES = [("THETA", named("THETA")), ("Y", named("Y"))]


class TestVectorBasics:
    def test_apply_trivial_is_identity(self):
        y = named("THETA")
        assert apply_generator(y, trivial()) == y

    def test_apply_is_left_nested(self):
        g = gpq()
        assert apply_generator(Free("y"), g) == app(Free("y"), named("P"), named("Q"))

    def test_curry_image_of_delta_joins_turing(self):
        out = apply_generator(named("Y"), gdelta())
        assert isinstance(join_bounded(out, named("THETA"), JOIN), Joined)

    def test_self_parameterizing_image_is_verified(self):
        out = apply_generator(named("THETA"), ltheta())
        assert isinstance(is_fpc_bounded(out, JOIN), Verified)

    def test_compose_identity_laws(self):
        g = gpq()
        assert compose(trivial(), g) == g
        assert compose(g, trivial()) == g

    def test_compose_concatenates(self):
        assert compose(gdelta(), ltheta()).components == (
            gdelta()[0],
            ltheta()[0],
        )

    def test_monoid_laws_on_random_triples(self):
        rng = random.Random(2718)
        for _ in range(50):
            gs = [
                Generator(tuple(random_term(rng, rng.randint(1, 8))
                                for _ in range(rng.randint(0, 3))))
                for _ in range(3)
            ]
            a, b, c = gs
            assert compose(compose(a, b), c) == compose(a, compose(b, c))
            assert compose(a, trivial()) == a
            assert compose(trivial(), a) == a
            y = random_term(rng, 5)
            assert alpha_eq(
                apply_generator(y, compose(a, b)),
                apply_generator(apply_generator(y, a), b),
            )


class TestExpansion:
    def test_constant_head_erases_the_probe(self):
        t = expansion(ktheta(), 1, "z")
        g = reduct_set(t, PROBE)
        assert any(alpha_eq(n, named("THETA")) for n in g.nodes)

    def test_single_component_is_iteration(self):
        from fpclab.combinators import iterate

        t = expansion(gdelta(), 2, "z")
        assert t == iterate(named("DELTA"), 2, Free("z"))

    def test_self_parameterizing_expansion_joins_instance(self):
        t = expansion(ltheta(), 1, "z")
        v = join_bounded(t, theta_param(Free("z")), JOIN)
        assert isinstance(v, Joined)

    def test_trivial_expansion_rejected(self):
        with pytest.raises(ValueError):
            expansion(trivial(), 1, "z")

    def test_delta_expansion_at_zero_is_application(self):
        g = gpq()
        assert delta_expansion(g, 0, "z") == apply_generator(Free("z"), g)

    def test_delta_expansion_single_component(self):
        t = App(delta_expansion(gdelta(), 2, "z"), Free("x"))
        want = parse("x (x (z DELTA x))")
        want = substitute(want, "DELTA", named("DELTA"))
        assert isinstance(join_bounded(t, want, JOIN), Joined)

    def test_delta_expansion_pair(self):
        t = App(delta_expansion(gpq(), 1, "z"), Free("x"))
        want = App(Free("x"), app(Free("z"), named("P"), named("Q"), Free("x")))
        assert isinstance(join_bounded(t, want, JOIN), Joined)


class TestProbes:
    def test_constant_generator_verified_with_witness(self):
        st = probe_constant(ktheta(), 3, PROBE)
        assert st.kind == "verified" and st.k == 1
        assert "z" not in free_vars(st.witness)

    def test_delta_constant_probe_stays_unknown(self):
        st = probe_constant(gdelta(), 3, PROBE)
        assert st.kind == "unknown"

    def test_self_parameterizing_constant_probe_unknown(self):
        st = probe_constant(ltheta(), 3, PROBE)
        assert st.kind == "unknown"

    def test_weakly_constant_retreating_pair(self):
        st = probe_weakly_constant(gpr(), 3, 6, 500)
        assert st.kind == "evidence" and st.k == 1 and st.depth == 6

    def test_weakly_constant_delta_refuted(self):
        st = probe_weakly_constant(gdelta(), 3, 6, 500)
        assert st.kind == "refuted_up_to" and st.k == 3
        assert all(v == "neg" for v in st.per_k.values())

    def test_weakly_constant_erasing_head(self):
        st = probe_weakly_constant(ktheta(), 3, 6, 500)
        assert st.kind == "evidence" and st.k == 1

    def test_compact_self_parameterizing(self):
        st = probe_compact(ltheta(), 3, PROBE)
        assert st.kind == "verified" and st.k == 1

    def test_compact_erasing_head(self):
        st = probe_compact(ktheta(), 3, PROBE)
        assert st.kind == "verified" and st.k == 1

    def test_compact_retreating_pair_unknown(self):
        st = probe_compact(gpr(), 3, PROBE)
        assert st.kind == "unknown"

    def test_weakly_compact_retreating_pair(self):
        st = probe_weakly_compact(gpr(), 3, 6, 500)
        assert st.kind == "verified" and st.k == 1

    def test_weakly_compact_delta_refuted(self):
        st = probe_weakly_compact(gdelta(), 3, 6, 500)
        assert st.kind == "refuted_up_to"

    def test_accretive_delta(self):
        st = probe_accretive(gdelta(), 3, 6, 500)
        assert st.kind == "evidence"
        assert all(v == "pos" for v in st.per_k.values())

    def test_accretive_pq(self):
        st = probe_accretive(gpq(), 3, 6, 500)
        assert st.kind == "evidence"

    def test_accretive_refuted_for_constant(self):
        constant = probe_constant(ktheta(), 3, PROBE)
        st = probe_accretive(ktheta(), 3, 6, 500, constant=constant)
        assert st.kind == "refuted_up_to"


class TestClassify:
    def test_battery_matches_expected_classes(self):
        expect = {
            "(K THETA)": (ktheta(), {"constant": "verified", "accretive": "refuted_up_to"}),
            "(DELTA)": (gdelta(), {"weakly_constant": "refuted_up_to", "accretive": "evidence"}),
            "(self-param)": (ltheta(), {"compact": "verified", "accretive": "refuted_up_to"}),
            "(P,Q)": (gpq(), {"accretive": "evidence", "compact": "unknown"}),
            "(P,R)": (gpr(), {"weakly_constant": "evidence", "compact": "unknown",
                              "weakly_compact": "verified"}),
        }
        for label, (g, wanted) in expect.items():
            rep = classify(g, k_max=3, depth=6, fuel=500, bounds=PROBE)
            for cls, kind in wanted.items():
                assert rep.status(cls).kind == kind, (label, cls)

    def test_no_contradictory_definitive_statuses(self):
        for g in (ktheta(), gdelta(), ltheta(), gpq(), gpr()):
            rep = classify(g, k_max=3, depth=6, fuel=500, bounds=PROBE)
            wcon, wcom = rep.status("weakly_constant"), rep.status("weakly_compact")
            for a, b in ((wcon, wcom), (wcom, wcon)):
                if a.kind in ("verified", "evidence") and a.k is not None:
                    assert b.per_k.get(a.k) != "neg"

    def test_trivial_not_classified(self):
        with pytest.raises(ValueError):
            classify(trivial())

    def test_report_json_round_trip(self):
        import json

        rep = classify(ktheta(), k_max=1, depth=4, fuel=200, bounds=PROBE)
        blob = json.dumps(rep.to_json())
        back = json.loads(blob)
        assert back["classes"]["constant"]["status"] == "verified"


class TestConstantBehavior:
    def test_constant_generator_sends_every_sample_to_its_value(self):
        g = ktheta()
        st = probe_constant(g, 3, PROBE)
        assert st.kind == "verified"
        for name, y in SAMPLES:
            out = apply_generator(y, g)
            v = join_bounded(out, st.witness, JOIN)
            assert isinstance(v, Joined), name


class TestFgvEvidence:
    def test_delta_is_fpc_preserving_on_samples(self):
        rep = is_fgv_evidence(gdelta(), SAMPLES, JOIN)
        assert rep.fgv_evidence
        assert rep.wfgv_evidence

    def test_bracket_generator_preserves_turing(self):
        g = generator(named("G_BRACKET"))
        rep = is_fgv_evidence(g, [("THETA", named("THETA"))], JOIN)
        assert rep.fgv_evidence

    def test_unsolvable_producing_vector_refuted(self):
        g = generator(App(named("K"), named("OMEGA")))
        rep = is_fgv_evidence(g, [("THETA", named("THETA"))], JOIN)
        assert not rep.wfgv_evidence
        assert isinstance(rep.wfpc_checks[0].verdict, Refuted)


class TestExtEq:
    def test_swap_pair_vectors_agree_on_samples(self):
        g = generator(named("G_CK"), named("K"))
        h = generator(named("G_CK"), App(named("C"), named("K")))
        rep = ext_eq_bounded(g, h, SAMPLES, JOIN)
        assert rep.all_joined and not rep.refuted

    def test_reflexivity(self):
        g = gdelta()
        rep = ext_eq_bounded(g, g, SAMPLES, JOIN)
        assert rep.all_joined

    def test_distinct_generators_stay_apart(self):
        rep = ext_eq_bounded(gdelta(), ltheta(), [("THETA", named("THETA"))],
                             Bounds(120, 6_000, 2_500))
        assert not rep.all_joined
        assert not rep.refuted  # separation is evidence, not a definitive verdict


class TestFixedPoints:
    def test_self_parameterizing_fixed_point(self):
        cert = construct_fixed_point(ltheta(), bounds=JOIN, probe_bounds=PROBE)
        assert cert.path == "compact" and cert.k == 1 and cert.complete
        v = join_bounded(apply_generator(cert.x, ltheta()), cert.x, JOIN)
        assert isinstance(v, Joined)

    def test_constant_fixed_point_is_the_constant(self):
        cert = construct_fixed_point(ktheta(), bounds=JOIN, probe_bounds=PROBE)
        assert cert.complete
        assert isinstance(join_bounded(cert.x, named("THETA"), JOIN), Joined)

    def test_weak_path_for_retreating_pair(self):
        cert = construct_fixed_point(
            gpr(), bounds=Bounds(300, 100_000, 6_000), probe_bounds=PROBE)
        assert cert.path == "weak" and cert.k == 1
        assert cert.complete

    def test_accretive_vector_has_no_modulus(self):
        with pytest.raises(NoModulusError):
            construct_fixed_point(gdelta(), bounds=JOIN, probe_bounds=PROBE)

    def test_trivial_rejected(self):
        with pytest.raises(ValueError):
            construct_fixed_point(trivial())


class TestAbsorbers:
    def test_fixed_point_generator_absorbs_on_samples(self):
        for g in (ktheta(), ltheta()):
            cert = construct_fixed_point(g, bounds=JOIN, probe_bounds=PROBE)
            f = fixed_point_generator(cert)
            rep = verify_absorption(f, g, [("THETA", named("THETA"))], JOIN,
                                    absorbed="back")
            assert rep.all_joined, g

    def test_fixed_point_generator_is_not_constant(self):
        cert = construct_fixed_point(ltheta(), bounds=JOIN, probe_bounds=PROBE)
        f = fixed_point_generator(cert)
        v = join_bounded(
            apply_generator(named("THETA"), f),
            apply_generator(named("Y"), f),
            Bounds(100, 6_000, 2_500),
        )
        assert isinstance(v, NotJoinedWithin)

    def test_tail_absorber_for_doubled_delta(self):
        f = generator(named("DELTA"), named("DELTA"))
        g = tail_absorber(f)
        assert len(g) == 3
        rep = verify_absorption(f, g, [("THETA", named("THETA"))], JOIN, absorbed="front")
        assert rep.all_joined
        st = probe_compact(g, 3, PROBE)
        assert st.kind == "verified"

    def test_tail_absorber_single_component_rejected(self):
        with pytest.raises(ValueError):
            tail_absorber(gdelta())

    def test_tail_absorber_with_pass_through(self):
        # P exposes its first binder bare, so the combinator is routed through
        from fpclab.reduction import head_step
        from fpclab.term import Lam, spine

        f = gpr()
        g = tail_absorber(f)
        assert "pass-through argument found" in g.provenance
        st = probe_compact(g, 3, PROBE)
        assert st.kind == "verified"

        # absorption, checked compositionally: both sides head-reduce to the
        # same parameterized shell around a subscript, and the two subscripts
        # join; by congruence the whole chain joins
        def subscript_on_head_path(t):
            for _ in range(60):
                h, args = spine(t)
                if isinstance(h, Lam) and len(args) == 2 and args[0] == h:
                    return args[1]
                nxt = head_step(t)
                if nxt is None:
                    return None
                t = nxt
            return None

        theta = named("THETA")
        s_direct = subscript_on_head_path(apply_generator(theta, g))
        s_composed = subscript_on_head_path(
            apply_generator(apply_generator(theta, f), g))
        assert s_direct is not None and s_composed is not None
        tail = g[-1]
        assert s_direct.fn == tail and s_composed.fn == tail
        v = join_bounded(s_direct, s_composed, Bounds(300, 60_000, 6_000))
        assert isinstance(v, Joined)

    def test_unsolvable_head_rejected(self):
        with pytest.raises(ConstructionError):
            tail_absorber(generator(named("OMEGA"), named("I")))

    def test_first_binder_head_rejected(self):
        # \x y. x y has its own first binder in head position
        f = generator(parse(r"\x y. x y"), named("I"))
        with pytest.raises(ConstructionError):
            tail_absorber(f)


class TestNonInjectivity:
    def test_separated_witnesses_with_joined_images(self):
        ki, i, d = App(named("K"), named("I")), named("I"), named("DELTA")
        xh = fresh_name("x")
        m_short = app(Free(xh), ki, i)
        m_long = app(Free(xh), ki, i, i)
        w_short, w_long = theta_param(m_short), theta_param(m_long)

        # the parameterized witnesses themselves stay apart
        v = join_bounded(w_short, w_long, Bounds(150, 10_000, 2_500))
        assert isinstance(v, NotJoinedWithin)

        # their closed instances have the same image under (delta)
        c_short = theta_param(substitute(m_short, xh, d))
        c_long = theta_param(substitute(m_long, xh, d))
        v = join_bounded(
            apply_generator(c_short, gdelta()),
            apply_generator(c_long, gdelta()),
            JOIN,
        )
        assert isinstance(v, Joined)

    def test_no_tested_composition_acts_as_identity(self):
        # compositions of non-trivial vectors never fix every sample
        vectors = [gdelta(), ltheta(), ktheta()]
        for a in vectors:
            for b in vectors:
                comp = compose(a, b)
                rep = ext_eq_bounded(comp, trivial(), SAMPLES,
                                     Bounds(120, 5_000, 2_500))
                assert not rep.all_joined, (a, b)
