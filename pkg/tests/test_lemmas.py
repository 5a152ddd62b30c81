from fractions import Fraction

import pytest

from homlab.errors import PreconditionViolated
from homlab.fileio import lemma_instance_from_dict, lemma_instance_to_dict
from homlab.lemmas import (
    LEMMA_IDS,
    LemmaInstance,
    check_local_lemma,
    random_lemma_instance,
    validate_instance,
)


class TestSpecExamples:
    def test_local_123_singleton_equality(self):
        inst = LemmaInstance(
            "local-123",
            {
                "beta": 1,
                "gamma": 2,
                "delta": 2,
                "f12": [[Fraction(1)]],
                "f23": [[Fraction(1)]],
                "w1": [Fraction(1)],
                "w2": [Fraction(1)],
                "w3": [Fraction(1)],
            },
        )
        assert check_local_lemma(inst).verdict == "equality"

    def test_local_123_two_color_inequality(self):
        ne = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
        inst = LemmaInstance(
            "local-123",
            {
                "beta": 1,
                "gamma": 2,
                "delta": 2,
                "f12": ne,
                "f23": ne,
                "w1": [Fraction(1)] * 2,
                "w2": [Fraction(1)] * 2,
                "w3": [Fraction(1)] * 2,
            },
        )
        rep = check_local_lemma(inst)
        # LHS 2 against RHS 2^{1/2} * 2
        assert rep.verdict == "holds"

    def test_color_holder_equality_point(self):
        inst = LemmaInstance(
            "color-holder",
            {"q": 3, "looped": [], "A": [0, 1, 2], "B": [0, 1, 2], "k": 1, "r": 0, "s": 1, "t": 2},
        )
        assert check_local_lemma(inst).verdict == "equality"

    def test_color_ac_b_equals_one_is_equality(self):
        inst = LemmaInstance(
            "color-ac",
            {"q": 3, "looped": [], "A": [0, 1, 2], "B": [0, 1], "C": [1, 2], "a": 3, "b": 1, "c": 2},
        )
        assert check_local_lemma(inst).verdict == "equality"


class TestPreconditions:
    def test_gamma_too_small(self):
        inst = random_lemma_instance("local-123", 0)
        inst.params["gamma"] = 1
        with pytest.raises(PreconditionViolated, match="gamma"):
            check_local_lemma(inst)

    def test_color_bcd_d_not_subset(self):
        inst = LemmaInstance(
            "color-bcd",
            {"q": 3, "looped": [], "B": [0], "C": [0], "D": [1], "b": 2, "c": 1, "k": 1, "t": Fraction(1)},
        )
        with pytest.raises(PreconditionViolated, match="subset"):
            check_local_lemma(inst)

    def test_color_bcd_looped_d(self):
        inst = LemmaInstance(
            "color-bcd",
            {"q": 3, "looped": [1], "B": [0], "C": [0, 1], "D": [1], "b": 2, "c": 1, "k": 1, "t": Fraction(1)},
        )
        with pytest.raises(PreconditionViolated, match="looped"):
            check_local_lemma(inst)

    def test_color_abc_exponent_guard(self):
        inst = LemmaInstance(
            "color-abc",
            {"q": 2, "looped": [], "A": [0, 1], "B": [0], "C": [1], "a": 2, "b": 1, "c": 1},
        )
        with pytest.raises(PreconditionViolated, match="b \\+ c"):
            check_local_lemma(inst)

    def test_h_log_convex_needs_psd(self):
        from homlab.models import Model

        inst = random_lemma_instance("h-log-convex", 1)
        inst.params["model"] = Model.from_rows([[0, 1], [1, 0]])  # one negative eigenvalue
        with pytest.raises(PreconditionViolated, match="semidefinite"):
            check_local_lemma(inst)

    def test_mixed_norm_q_below_one(self):
        inst = random_lemma_instance("mixed-norm", 5)
        inst.params["q"] = Fraction(1, 2)
        with pytest.raises(PreconditionViolated, match="q >= 1"):
            check_local_lemma(inst)

    def test_sym_corollary_tau_must_decrease(self):
        inst = random_lemma_instance("sym-corollary", 2)
        inst.params["tau"] = [Fraction(0), Fraction(1)] + list(inst.params["tau"][2:])
        inst.params["k"] = len(inst.params["tau"]) - 1
        with pytest.raises(PreconditionViolated, match="non-increasing"):
            check_local_lemma(inst)


class TestBattery:
    @pytest.mark.parametrize("lemma_id", LEMMA_IDS)
    def test_forty_seeds_per_lemma(self, lemma_id):
        for seed in range(40):
            inst = random_lemma_instance(lemma_id, seed)
            rep = check_local_lemma(inst)
            assert rep.verdict in ("holds", "equality"), (lemma_id, seed, rep)
            assert rep.exact

    def test_generator_is_deterministic(self):
        for lemma_id in LEMMA_IDS:
            a = random_lemma_instance(lemma_id, 3)
            b = random_lemma_instance(lemma_id, 3)
            assert a.params == b.params, lemma_id


class TestSerialization:
    @pytest.mark.parametrize("lemma_id", LEMMA_IDS)
    def test_round_trip_preserves_verdict(self, lemma_id):
        inst = random_lemma_instance(lemma_id, 11)
        encoded = lemma_instance_to_dict(inst)
        import json

        decoded = lemma_instance_from_dict(json.loads(json.dumps(encoded)))
        validate_instance(decoded)
        assert check_local_lemma(decoded).verdict == check_local_lemma(inst).verdict


class TestFloatTranscriptionOracle:
    """Recompute both sides of two lemmas directly from their statements in
    high-precision floats (an independent transcription) and require the
    same verdict the exact evaluator produced."""

    def test_color_abc_sides(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 50
        from homlab.counting import cc, ominus

        for seed in range(40):
            inst = random_lemma_instance("color-abc", seed)
            p = inst.params
            a_set, b_set, c_set = set(p["A"]), set(p["B"]), set(p["C"])
            looped = set(p["looped"])
            a, b, c = p["a"], p["b"], p["c"]
            lhs = mpmath.mpf(0)
            for x in sorted(a_set):
                v = cc(ominus(b_set, {x}, looped), ominus(c_set, {x}, looped), c - 1, b - 1, looped)
                lhs += mpmath.power(v, mpmath.mpf(a) / (b + c - 2))
            rhs = (
                mpmath.power(cc(a_set, b_set, b, a, looped), mpmath.mpf(c - 1) / (b * (b + c - 2)))
                * mpmath.power(cc(a_set, c_set, c, a, looped), mpmath.mpf(b - 1) / (c * (b + c - 2)))
                * mpmath.power(
                    cc(b_set, c_set, c, b, looped),
                    mpmath.mpf(a * (b - 1) * (c - 1)) / ((b + c - 2) * b * c),
                )
            )
            tol = mpmath.mpf(10) ** -30 * max(1, abs(lhs), abs(rhs))
            float_verdict = (
                "equality" if abs(rhs - lhs) < tol else ("holds" if rhs > lhs else "violated")
            )
            assert check_local_lemma(inst).verdict == float_verdict, seed

    def test_local_123_sides(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 50
        import itertools

        for seed in range(40):
            inst = random_lemma_instance("local-123", seed)
            p = inst.params
            beta, gamma, delta = p["beta"], p["gamma"], p["delta"]
            to_f = lambda x: mpmath.mpf(x.numerator) / x.denominator
            f12 = [[to_f(x) for x in row] for row in p["f12"]]
            f23 = [[to_f(x) for x in row] for row in p["f23"]]
            w1 = [to_f(x) for x in p["w1"]]
            w2 = [to_f(x) for x in p["w2"]]
            w3 = [to_f(x) for x in p["w3"]]
            n1, n2, n3 = len(w1), len(w2), len(w3)
            lhs = mpmath.mpf(0)
            for x in range(n1):
                inner = mpmath.mpf(0)
                for ys in itertools.product(range(n2), repeat=beta):
                    for zs in itertools.product(range(n3), repeat=gamma - 1):
                        t = mpmath.mpf(1)
                        for y in ys:
                            t *= w2[y]
                            for z in zs:
                                t *= mpmath.power(f12[x][y], mpmath.mpf(1) / (gamma - 1)) * f23[y][z]
                        for z in zs:
                            t *= w3[z]
                        inner += t
                lhs += w1[x] * mpmath.power(inner, mpmath.mpf(delta * (gamma - 1)) / (beta * (gamma - 1)))
            s12 = mpmath.mpf(0)
            for xs in itertools.product(range(n1), repeat=gamma):
                for ys in itertools.product(range(n2), repeat=delta):
                    t = mpmath.mpf(1)
                    for x in xs:
                        t *= w1[x]
                    for y in ys:
                        t *= w2[y]
                    for x in xs:
                        for y in ys:
                            t *= f12[x][y]
                    s12 += t
            s23 = mpmath.mpf(0)
            for ys in itertools.product(range(n2), repeat=beta):
                for zs in itertools.product(range(n3), repeat=gamma):
                    t = mpmath.mpf(1)
                    for y in ys:
                        t *= w2[y]
                    for z in zs:
                        t *= w3[z]
                    for y in ys:
                        for z in zs:
                            t *= f23[y][z]
                    s23 += t
            rhs = mpmath.power(s12, mpmath.mpf(1) / gamma) * mpmath.power(
                s23, mpmath.mpf(delta * (gamma - 1)) / (beta * gamma)
            )
            tol = mpmath.mpf(10) ** -30 * max(1, abs(lhs), abs(rhs))
            float_verdict = (
                "equality" if abs(rhs - lhs) < tol else ("holds" if rhs > lhs else "violated")
            )
            assert check_local_lemma(inst).verdict == float_verdict, seed


class TestHLogConvexChain:
    def test_chain_for_t_two_and_three(self):
        import random as rnd

        from homlab.models import random_model

        rng = rnd.Random(51)
        for seed in range(20):
            q = 1 + seed % 3
            m = random_model(q, seed, "psd")
            lam = tuple(Fraction(rng.randrange(1, 4), rng.randrange(1, 3)) for _ in range(q))
            nu = tuple(Fraction(rng.randrange(0, 4), rng.randrange(1, 3)) for _ in range(q))
            for t in (2, 3):
                inst = LemmaInstance("h-log-convex", {"model": m, "t": t, "lam": lam, "nu": nu})
                rep = check_local_lemma(inst)
                assert rep.verdict in ("holds", "equality"), (seed, t)
