"""Affine maps into the interval, natural families, reconstruction."""

import random
from fractions import Fraction

import pytest

from girylab.errors import ActionSquareError, InvariantError
from girylab.spaces import FinSpace, IFunction, atom_indicator
from girylab.duality import (Functional, evaluation_at, max_functional,
                             to_functional)
from girylab.measures import Measure
from girylab.codensity import (AffineMap, CodensityElement, SequenceAffineMap,
                               VanishingSequence, action_of, check_naturality,
                               check_vanishing_component,
                               functional_from_action, lift, sample_affine,
                               sample_sequence_affine)

F = Fraction


def two_discrete():
    return FinSpace.discrete(["a", "b"])


class TestAffineMap:
    def test_blend_on_square(self):
        blend = AffineMap.blend(F(1, 2))
        assert blend((F(1), F(0))) == F(1, 2)

    def test_constant(self):
        c = AffineMap.constant(3, F(2, 7))
        assert c((F(1), F(0), F(1))) == F(2, 7)

    def test_projection(self):
        p = AffineMap.projection(3, 1)
        assert p.a0 == F(0) and p.coeffs == (F(0), F(1), F(0))

    def test_sequence_map_with_negative_coefficient(self):
        h = SequenceAffineMap(F(1, 2), (F(1, 4), F(-1, 4)))
        assert h(VanishingSequence((F(1), F(1)))) == F(1, 2)

    def test_into_interval_enforced(self):
        with pytest.raises(InvariantError):
            AffineMap(2, F(0), (F(1), F(1)))
        with pytest.raises(InvariantError):
            AffineMap(1, F(1, 2), (F(-3, 4),))

    def test_out_of_range_input_rejected(self):
        p = AffineMap.projection(1, 0)
        with pytest.raises(InvariantError):
            p((F(3, 2),))

    def test_arity_mismatch(self):
        with pytest.raises(InvariantError):
            AffineMap.blend(F(1, 2))((F(1),))


class TestSampleAffine:
    def test_thousand_samples_satisfy_invariant(self):
        rng = random.Random(42)
        for _ in range(1000):
            arity = rng.randint(1, 4)
            h = sample_affine(rng, arity)
            lo = h.a0 + sum(min(c, F(0)) for c in h.coeffs)
            hi = h.a0 + sum(max(c, F(0)) for c in h.coeffs)
            assert F(0) <= lo and hi <= F(1)

    def test_forced_kinds(self):
        rng = random.Random(7)
        p = sample_affine(rng, 3, "projection")
        assert p.a0 == 0 and sorted(p.coeffs) == [F(0), F(0), F(1)]
        c = sample_affine(rng, 2, "constant")
        assert all(x == 0 for x in c.coeffs)
        b = sample_affine(rng, 2, "blend")
        assert b.a0 == 0 and sum(b.coeffs) == 1

    def test_sequence_sampler(self):
        rng = random.Random(3)
        for _ in range(200):
            h = sample_sequence_affine(rng, rng.randint(1, 4))
            lo = h.a0 + sum(min(c, F(0)) for c in h.coeffs)
            hi = h.a0 + sum(max(c, F(0)) for c in h.coeffs)
            assert F(0) <= lo and hi <= F(1)


class TestVanishingSequence:
    def test_trailing_zeros_stripped(self):
        assert VanishingSequence((F(1, 2), F(0), F(0))).entries == (F(1, 2),)

    def test_entries_in_unit_interval(self):
        with pytest.raises(InvariantError):
            VanishingSequence((F(2),))


class TestLift:
    def test_evaluation_family_is_pointwise(self):
        s = two_discrete()
        alpha = lift(evaluation_at(s, "b"))
        f1 = IFunction(s, (F(1, 3), F(2, 3)))
        f2 = IFunction(s, (F(1), F(0)))
        assert alpha.at_power((f1, f2)) == (F(2, 3), F(0))

    def test_extensional_coordinatewise(self):
        s = two_discrete()
        alpha = lift(Functional.extensional(s, (F(1, 2), F(1, 2))))
        chi_a, chi_b = atom_indicator(s, 0), atom_indicator(s, 1)
        assert alpha.at_power((chi_a, chi_b)) == (F(1, 2), F(1, 2))

    def test_lifting_non_affine_allowed(self):
        alpha = lift(max_functional(two_discrete()))
        assert isinstance(alpha, CodensityElement)


class TestCheckNaturality:
    def test_projection_definitional(self):
        s = two_discrete()
        alpha = lift(max_functional(s))  # even non-affine passes projections
        f1 = IFunction(s, (F(1, 3), F(1, 2)))
        f2 = IFunction(s, (F(1), F(0)))
        verdict = check_naturality(alpha, AffineMap.projection(2, 0), (f1, f2))
        assert verdict.passed

    def test_extensional_passes_random_squares(self):
        rng = random.Random(5)
        s = FinSpace.discrete(["a", "b", "c"])
        pi = Measure(s, (F(1, 6), F(1, 3), F(1, 2)))
        alpha = lift(to_functional(pi))
        for _ in range(300):
            arity = rng.randint(1, 4)
            h = sample_affine(rng, arity)
            fs = tuple(IFunction(s, tuple(
                F(rng.randint(0, 12), 12) for _ in s.atoms))
                for _ in range(arity))
            assert check_naturality(alpha, h, fs).passed

    def test_max_fails_blend_with_residual_half(self):
        s = two_discrete()
        alpha = lift(max_functional(s))
        chi_a, chi_b = atom_indicator(s, 0), atom_indicator(s, 1)
        verdict = check_naturality(alpha, AffineMap.blend(F(1, 2)),
                                   (chi_a, chi_b))
        assert not verdict.passed
        # one path blends the two unit values to 1, the other evaluates
        # the max of the blended indicators, which is 1/2
        assert verdict.witness["via_family"] == "1/1"
        assert verdict.witness["via_component"] == "1/2"
        assert verdict.witness["residual"] == "-1/2"

    def test_sequence_square(self):
        s = two_discrete()
        alpha = lift(Functional.extensional(s, (F(1, 4), F(3, 4))))
        h = SequenceAffineMap(F(1, 8), (F(1, 2), F(1, 4)))
        fs = (IFunction(s, (F(1, 2), F(1))), IFunction(s, (F(0), F(1, 3))))
        assert check_naturality(alpha, h, fs).passed


class TestVanishingComponent:
    def test_indicator_then_zeros(self):
        s = two_discrete()
        phi = Functional.extensional(s, (F(1, 2), F(1, 2)))
        chi = atom_indicator(s, 0)
        zero = IFunction.constant(s, F(0))
        verdict = check_vanishing_component(lift(phi), [chi, zero, zero], 1)
        assert verdict.passed
        assert verdict.witness["entries"] == ["1/2"]

    def test_empty_list_gives_zero_sequence(self):
        s = two_discrete()
        phi = Functional.extensional(s, (F(1), F(0)))
        verdict = check_vanishing_component(lift(phi), [], 0)
        assert verdict.passed
        assert verdict.witness["entries"] == []

    def test_lying_tail_certificate_rejected(self):
        s = two_discrete()
        phi = Functional.extensional(s, (F(1), F(0)))
        chi = atom_indicator(s, 0)
        with pytest.raises(InvariantError):
            check_vanishing_component(lift(phi), [chi], 0)


class TestReconstruction:
    def test_roundtrip_recovers_coefficients(self):
        rng = random.Random(11)
        s = FinSpace.discrete(["a", "b", "c"])
        phi = Functional.extensional(s, (F(1, 6), F(1, 3), F(1, 2)))
        recovered = functional_from_action(action_of(lift(phi)), s, rng)
        coeffs = tuple(recovered(atom_indicator(s, i)) for i in range(3))
        assert coeffs == phi.coeffs
        f = IFunction(s, (F(1, 5), F(2, 5), F(1)))
        assert recovered(f) == phi(f)

    def test_evaluation_action_recovers_evaluation(self):
        rng = random.Random(13)
        s = two_discrete()
        alpha = lift(evaluation_at(s, "b"))
        recovered = functional_from_action(action_of(alpha), s, rng)
        assert tuple(recovered(atom_indicator(s, i)) for i in range(2)) == \
            (F(0), F(1))

    def test_entrywise_max_fails_blend_square(self):
        rng = random.Random(17)
        s = two_discrete()

        def entrywise_max(fs):
            return VanishingSequence(tuple(max(f.values) for f in fs))

        with pytest.raises(ActionSquareError) as err:
            functional_from_action(entrywise_max, s, rng, trials=64)
        assert "blend" in err.value.generator
        assert "act_then_blend" in err.value.witness


class TestAffineComposition:
    def test_coefficients_compose(self):
        h = AffineMap(2, F(1, 8), (F(1, 4), F(1, 2)))
        g1 = AffineMap(1, F(1, 3), (F(1, 3),))
        g2 = AffineMap(1, F(0), (F(1),))
        composite = h.compose((g1, g2))
        assert composite.a0 == F(1, 8) + F(1, 4) * F(1, 3)
        assert composite.coeffs == (F(1, 4) * F(1, 3) + F(1, 2),)
        for x in (F(0), F(1, 2), F(1)):
            assert composite((x,)) == h((g1((x,)), g2((x,))))
